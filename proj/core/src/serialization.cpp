#include "spherecalc/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "spherecalc/harmonics.hpp"

namespace spherecalc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open file");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) fail(path, "not valid JSON");
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");
    out << text;
    if (!out) fail(path, "write failed");
}

void require_version(const json& j, const std::string& path) {
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        fail(path, "unsupported or missing schema_version");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::checked: return "checked";
        case CheckStatus::hypothesis_violated: return "hypothesis_violated";
        case CheckStatus::skipped: return "skipped";
        case CheckStatus::informational: return "informational";
    }
    return "unknown";
}

json record_to_json(const VerificationRecord& rec) {
    json j;
    j["check"] = rec.check;
    j["statement"] = rec.statement;
    j["body_id"] = rec.body_id;
    j["kind"] = rec.kind == CheckKind::inequality ? "inequality" : "identity";
    j["status"] = status_name(rec.status);
    j["lhs"] = rec.lhs;
    j["rhs"] = rec.rhs;
    j["slack"] = rec.slack;
    j["tolerance"] = rec.tolerance;
    j["pass"] = rec.pass;
    if (!rec.note.empty()) j["note"] = rec.note;
    json details = json::object();
    for (const auto& [name, value] : rec.details) details[name] = value;
    j["details"] = details;
    return j;
}

}  // namespace

void save_body(const ConvexBody& body, const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "convex_body";
    j["dimension"] = body.dim();
    j["degree"] = body.coefficients().degree;
    j["coefficients"] = body.coefficients().values;
    write_file(path, j.dump(2) + "\n");
}

ConvexBody load_body(const std::string& path, const GridPtr& grid) {
    const json j = parse_file(path);
    require_version(j, path);
    if (!j.contains("kind") || j["kind"] != "convex_body") fail(path, "not a body file");
    if (!j.contains("dimension") || !j.contains("degree") || !j.contains("coefficients")) {
        fail(path, "missing body fields");
    }
    const int dim = j["dimension"].get<int>();
    const int degree = j["degree"].get<int>();
    if (dim != grid->dim()) fail(path, "dimension does not match the grid");
    if (degree != grid->max_degree()) fail(path, "degree does not match the grid");
    HarmonicCoeffs coeffs = zero_coeffs(dim, degree);
    const auto& raw = j["coefficients"];
    if (!raw.is_array() || raw.size() != coeffs.values.size()) {
        fail(path, "coefficient count does not match dimension and degree");
    }
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
        if (!raw[k].is_number()) fail(path, "coefficients must be numbers");
        coeffs.values[k] = raw[k].get<double>();
    }
    try {
        return ConvexBody::from_coefficients(grid, coeffs);
    } catch (const nonconvex_error& e) {
        fail(path, std::string("stored body is not strictly convex: ") + e.what());
    }
}

ConvexBody load_body(const std::string& path) {
    const json j = parse_file(path);
    require_version(j, path);
    if (!j.contains("dimension") || !j.contains("degree")) fail(path, "missing body fields");
    const GridPtr grid = SphereGrid::with_default_resolution(j["dimension"].get<int>(),
                                                             j["degree"].get<int>());
    return load_body(path, grid);
}

std::string records_csv(std::span<const VerificationRecord> records) {
    std::ostringstream out;
    out << "body_id,check,lhs,rhs,slack,tol,pass\n";
    for (const VerificationRecord& rec : records) {
        out << rec.body_id << ',' << rec.check << ',' << format_double(rec.lhs) << ','
            << format_double(rec.rhs) << ',' << format_double(rec.slack) << ','
            << format_double(rec.tolerance) << ',' << (rec.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

void write_records_csv(std::span<const VerificationRecord> records, const std::string& path) {
    write_file(path, records_csv(records));
}

void write_verify_report(std::span<const VerificationRecord> records,
                         const CheckTolerances& tol, int dim, int degree,
                         const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "verify_report";
    j["dimension"] = dim;
    j["degree"] = degree;
    j["tolerances"] = {{"identity", tol.identity},
                       {"inequality", tol.inequality},
                       {"hypothesis", tol.hypothesis}};
    int checked = 0, passed = 0, failed = 0, hypothesis = 0, skipped = 0, info = 0;
    json rows = json::array();
    for (const VerificationRecord& rec : records) {
        rows.push_back(record_to_json(rec));
        switch (rec.status) {
            case CheckStatus::checked:
                ++checked;
                ++(rec.pass ? passed : failed);
                break;
            case CheckStatus::hypothesis_violated: ++hypothesis; break;
            case CheckStatus::skipped: ++skipped; break;
            case CheckStatus::informational: ++info; break;
        }
    }
    j["counts"] = {{"checked", checked},         {"passed", passed},
                   {"failed", failed},           {"hypothesis_violated", hypothesis},
                   {"skipped", skipped},         {"informational", info}};
    j["records"] = rows;
    write_file(path, j.dump(2) + "\n");
}

void write_manifest(std::span<const CorpusEntry> corpus, const CorpusSpec& spec,
                    const SphereGrid& grid, const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "corpus_manifest";
    j["dimension"] = grid.dim();
    j["degree"] = grid.max_degree();
    j["count"] = corpus.size();
    j["seed"] = spec.seed;
    json entries = json::array();
    for (const CorpusEntry& entry : corpus) {
        json e;
        e["id"] = entry.id;
        e["family"] = entry.family;
        e["file"] = entry.id + ".json";
        e["amplitude_clamped"] = entry.amplitude_clamped;
        e["amplitude_scale"] = entry.amplitude_scale;
        json params = json::object();
        for (const auto& [name, value] : entry.params) params[name] = value;
        e["params"] = params;
        const BodySummary s = summarize(entry.body);
        e["summary"] = {{"volume", s.volume},
                        {"min_density", s.min_density},
                        {"max_density", s.max_density},
                        {"density_ratio_minus_one", s.density_ratio_minus_one},
                        {"convexity_margin", s.convexity_margin}};
        entries.push_back(e);
    }
    j["entries"] = entries;
    write_file(path, j.dump(2) + "\n");
}

Manifest load_manifest(const std::string& path) {
    const json j = parse_file(path);
    require_version(j, path);
    if (!j.contains("kind") || j["kind"] != "corpus_manifest") fail(path, "not a manifest");
    Manifest m;
    m.dim = j.value("dimension", 0);
    m.degree = j.value("degree", 0);
    m.count = j.value("count", 0);
    m.seed = j.value("seed", std::uint64_t{0});
    if (!j.contains("entries") || !j["entries"].is_array()) fail(path, "missing entries");
    for (const json& e : j["entries"]) {
        ManifestEntry entry;
        entry.id = e.value("id", "");
        entry.family = e.value("family", "");
        entry.file = e.value("file", "");
        entry.amplitude_clamped = e.value("amplitude_clamped", false);
        if (entry.id.empty() || entry.file.empty()) fail(path, "malformed manifest entry");
        m.entries.push_back(std::move(entry));
    }
    return m;
}

void write_solver_result(const SolverResult& result, const SolverConfig& config,
                         const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "solver_result";
    j["config"] = {{"p", config.p},
                   {"dt0", config.dt0},
                   {"shrink", config.shrink},
                   {"recover", config.recover},
                   {"tolerance", config.tolerance},
                   {"max_iterations", config.max_iterations},
                   {"convexity_guard", config.convexity_guard},
                   {"precondition", config.precondition},
                   {"decrease_rate", config.decrease_rate}};
    j["converged"] = result.converged;
    j["iterations"] = result.iterations;
    j["failure_reason"] = result.failure_reason;
    j["final_residual"] = result.final_residual;
    j["final_margin"] = result.final_margin;
    j["residual_history"] = result.residual_history;
    if (result.body.has_value()) {
        j["body"] = {{"dimension", result.body->dim()},
                     {"degree", result.body->coefficients().degree},
                     {"coefficients", result.body->coefficients().values}};
    }
    write_file(path, j.dump(2) + "\n");
}

void write_probe_report(const UniquenessProbe& probe, const SolverConfig& config,
                        const std::string& path) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "uniqueness_probe";
    j["p"] = config.p;
    j["tolerance"] = config.tolerance;
    j["all_converged"] = probe.all_converged;
    j["consistent"] = probe.consistent;
    j["max_pairwise_hausdorff"] = probe.max_pairwise_hausdorff;
    j["target_deviation"] = probe.target_deviation;
    json runs = json::array();
    for (std::size_t i = 0; i < probe.runs.size(); ++i) {
        const SolverResult& run = probe.runs[i];
        runs.push_back({{"start", probe.start_ids[i]},
                        {"converged", run.converged},
                        {"iterations", run.iterations},
                        {"final_residual", run.final_residual},
                        {"failure_reason", run.failure_reason}});
    }
    j["runs"] = runs;
    write_file(path, j.dump(2) + "\n");
}

std::string sweep_csv(std::span<const SweepCell> cells) {
    std::ostringstream out;
    out << "p,start_id,converged,iterations,final_residual,hausdorff_to_ball\n";
    for (const SweepCell& cell : cells) {
        out << format_double(cell.p) << ',' << cell.start_id << ','
            << (cell.converged ? 1 : 0) << ',' << cell.iterations << ','
            << format_double(cell.final_residual) << ','
            << format_double(cell.hausdorff_to_ball) << '\n';
    }
    return out.str();
}

void write_sweep_csv(std::span<const SweepCell> cells, const std::string& path) {
    write_file(path, sweep_csv(cells));
}

ExperimentConfig load_config(const std::string& path) {
    const json j = parse_file(path);
    require_version(j, path);
    ExperimentConfig cfg;
    cfg.dim = j.value("dim", 2);
    if (cfg.dim != 1 && cfg.dim != 2) fail(path, "dim must be 1 or 2");
    cfg.degree = j.value("degree", 16);
    if (cfg.degree < 2) fail(path, "degree must be at least 2");
    if (j.contains("corpus")) {
        const json& c = j["corpus"];
        cfg.corpus.count = c.value("count", cfg.corpus.count);
        cfg.corpus.seed = c.value("seed", cfg.corpus.seed);
    }
    if (j.contains("solver")) {
        const json& s = j["solver"];
        cfg.solver.p = s.value("p", cfg.solver.p);
        cfg.solver.dt0 = s.value("dt0", cfg.solver.dt0);
        cfg.solver.shrink = s.value("shrink", cfg.solver.shrink);
        cfg.solver.recover = s.value("recover", cfg.solver.recover);
        cfg.solver.tolerance = s.value("tolerance", cfg.solver.tolerance);
        cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
        cfg.solver.convexity_guard = s.value("convexity_guard", cfg.solver.convexity_guard);
        cfg.solver.precondition = s.value("precondition", cfg.solver.precondition);
    }
    if (j.contains("target")) {
        const json& t = j["target"];
        cfg.target.kind = t.value("kind", cfg.target.kind);
        if (cfg.target.kind != "constant" && cfg.target.kind != "body_density") {
            fail(path, "target.kind must be constant or body_density");
        }
        cfg.target.value = t.value("value", cfg.target.value);
        cfg.target.file = t.value("file", cfg.target.file);
        if (cfg.target.kind == "body_density" && cfg.target.file.empty()) {
            fail(path, "target.kind body_density requires target.file");
        }
    }
    if (j.contains("sweep") && j["sweep"].contains("exponents")) {
        for (const json& v : j["sweep"]["exponents"]) {
            if (!v.is_number()) fail(path, "sweep.exponents must be numbers");
            cfg.sweep_exponents.push_back(v.get<double>());
        }
    }
    return cfg;
}

}  // namespace spherecalc
