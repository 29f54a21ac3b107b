// Command-line driver: corpus generation, inequality/identity verification,
// curvature-equation solving, uniqueness probes, exponent sweeps, and a
// resolution convergence study.
//
// Exit codes: 0 success (for verify: every counted record passed; for solve:
// converged; for probe-uniqueness: limits consistent), 1 a computation did
// not meet its goal, 2 missing or corrupt input files (the message names the
// file).  Outputs are deterministic for fixed inputs and seed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherecalc/corpus.hpp"
#include "spherecalc/harmonics.hpp"
#include "spherecalc/serialization.hpp"
#include "spherecalc/solver.hpp"
#include "spherecalc/verify.hpp"

namespace {

using namespace spherecalc;
namespace fs = std::filesystem;

constexpr int kExitSuccess = 0;
constexpr int kExitGoalNotMet = 1;
constexpr int kExitBadInput = 2;

bool log_enabled() {
    const char* env = std::getenv("SPHERECALC_LOG");
    return env != nullptr && *env != '\0';
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::fprintf(stderr, "[spherecalc] %s\n", msg.c_str());
}

struct CommonOptions {
    std::string config_path;
    std::optional<int> dim;
    std::optional<int> degree;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON experiment config");
    cmd->add_option("--dim", opts.dim, "sphere dimension, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    cmd->add_option("--degree", opts.degree, "harmonic band limit");
    cmd->add_option("--seed", opts.seed, "random seed override");
}

ExperimentConfig resolve_config(const CommonOptions& opts) {
    ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path);
    if (opts.dim) cfg.dim = *opts.dim;
    if (opts.degree) cfg.degree = *opts.degree;
    if (opts.seed) cfg.corpus.seed = *opts.seed;
    return cfg;
}

GridPtr make_grid(const ExperimentConfig& cfg) {
    return SphereGrid::with_default_resolution(cfg.dim, cfg.degree);
}

std::vector<double> sweep_exponents(const ExperimentConfig& cfg) {
    if (!cfg.sweep_exponents.empty()) return cfg.sweep_exponents;
    if (cfg.dim == 1) return {-1.5, -0.5, 0.0, 0.5};
    return {-2.5, -1.5, -0.5, 0.0, 0.5};
}

ScalarField resolve_target(const ExperimentConfig& cfg, const GridPtr& grid) {
    if (cfg.target.kind == "constant") {
        if (!(cfg.target.value > 0.0)) {
            throw std::runtime_error("config: target.value must be positive");
        }
        return make_scalar_field(grid,
                                 std::vector<double>(grid->node_count(), cfg.target.value));
    }
    const ConvexBody source = load_body(cfg.target.file, grid);
    const ScalarField h = source.support();
    const auto& det = source.curvature_determinant();
    const double p = cfg.solver.p;
    // Target with known solution: f = h^(1-p) / K of the stored body.
    std::vector<double> f(grid->node_count());
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = std::pow(h.values[i], 1.0 - p) * det[i];
    }
    return make_scalar_field(grid, std::move(f));
}

std::vector<NamedStart> default_starts(const GridPtr& grid) {
    std::vector<NamedStart> starts;
    starts.push_back({"ball_0.8", make_ball(grid, 0.8)});
    starts.push_back({"translated_ball", make_translated_ball(grid, Vec3{0.15, 0.0, 0.0})});
    const Perturbation bump{2, grid->dim() == 1 ? 1 : 0, 0.05};
    starts.push_back({"perturbed_ball", make_perturbed_ball(grid, {&bump, 1})});
    return starts;
}

int run_gen_corpus(const CommonOptions& opts, const std::string& out_dir, int count_flag) {
    ExperimentConfig cfg = resolve_config(opts);
    if (count_flag > 0) cfg.corpus.count = count_flag;
    const GridPtr grid = make_grid(cfg);
    const auto corpus = generate_corpus(grid, cfg.corpus);

    fs::create_directories(out_dir);
    for (const CorpusEntry& entry : corpus) {
        save_body(entry.body, (fs::path(out_dir) / (entry.id + ".json")).string());
    }
    write_manifest(corpus, cfg.corpus, *grid, (fs::path(out_dir) / "manifest.json").string());
    std::printf("wrote %zu bodies and manifest.json to %s\n", corpus.size(), out_dir.c_str());
    return kExitSuccess;
}

int run_verify(const CommonOptions& opts, const std::string& corpus_dir,
               const std::string& out_dir) {
    const ExperimentConfig cfg = resolve_config(opts);
    const std::string manifest_path = (fs::path(corpus_dir) / "manifest.json").string();
    const Manifest manifest = load_manifest(manifest_path);
    const GridPtr grid = SphereGrid::with_default_resolution(manifest.dim, manifest.degree);

    const CheckTolerances tol;
    std::vector<VerificationRecord> all;
    for (const ManifestEntry& entry : manifest.entries) {
        const std::string body_path = (fs::path(corpus_dir) / entry.file).string();
        const ConvexBody body = load_body(body_path, grid);
        log_line("verifying " + entry.id);
        std::vector<VerificationRecord> records = run_standard_checks(body, tol);
        for (VerificationRecord& rec : records) rec.body_id = entry.id;
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
    }

    const std::string dest = out_dir.empty() ? corpus_dir : out_dir;
    fs::create_directories(dest);
    write_records_csv(all, (fs::path(dest) / "records.csv").string());
    write_verify_report(all, tol, manifest.dim, manifest.degree,
                        (fs::path(dest) / "report.json").string());

    int checked = 0, passed = 0, failed = 0, hypo = 0, skipped = 0, info = 0;
    for (const VerificationRecord& rec : all) {
        switch (rec.status) {
            case CheckStatus::checked:
                ++checked;
                ++(rec.pass ? passed : failed);
                break;
            case CheckStatus::hypothesis_violated: ++hypo; break;
            case CheckStatus::skipped: ++skipped; break;
            case CheckStatus::informational: ++info; break;
        }
    }
    std::printf(
        "verified %zu bodies: %d checked (%d passed, %d failed), "
        "%d hypothesis-violated, %d skipped, %d informational\n",
        manifest.entries.size(), checked, passed, failed, hypo, skipped, info);
    (void)cfg;
    return failed == 0 ? kExitSuccess : kExitGoalNotMet;
}

int run_solve(const CommonOptions& opts, const std::string& out_path,
              const std::string& initial_path) {
    const ExperimentConfig cfg = resolve_config(opts);
    const GridPtr grid = make_grid(cfg);
    const ScalarField target = resolve_target(cfg, grid);
    const ConvexBody initial =
        initial_path.empty() ? make_ball(grid, 1.0) : load_body(initial_path, grid);

    const SolverResult result = solve_curvature_equation(target, initial, cfg.solver);
    if (!out_path.empty()) {
        if (fs::path(out_path).has_parent_path()) {
            fs::create_directories(fs::path(out_path).parent_path());
        }
        write_solver_result(result, cfg.solver, out_path);
    }
    std::printf("p=%g %s after %d iterations, residual %.3e\n", cfg.solver.p,
                result.converged ? "converged" : "did not converge", result.iterations,
                result.final_residual);
    if (!result.converged) {
        std::printf("reason: %s\n", result.failure_reason.c_str());
    }
    return result.converged ? kExitSuccess : kExitGoalNotMet;
}

int run_probe(const CommonOptions& opts, const std::string& out_path) {
    const ExperimentConfig cfg = resolve_config(opts);
    const GridPtr grid = make_grid(cfg);
    const ScalarField target = resolve_target(cfg, grid);
    const std::vector<NamedStart> starts = default_starts(grid);

    const UniquenessProbe probe = probe_uniqueness(target, starts, cfg.solver);
    if (!out_path.empty()) {
        if (fs::path(out_path).has_parent_path()) {
            fs::create_directories(fs::path(out_path).parent_path());
        }
        write_probe_report(probe, cfg.solver, out_path);
    }
    std::printf("p=%g starts=%zu all_converged=%d max_pairwise_hausdorff=%.3e consistent=%d\n",
                cfg.solver.p, starts.size(), probe.all_converged ? 1 : 0,
                probe.max_pairwise_hausdorff, probe.consistent ? 1 : 0);
    return probe.consistent ? kExitSuccess : kExitGoalNotMet;
}

int run_sweep(const CommonOptions& opts, const std::string& out_path) {
    const ExperimentConfig cfg = resolve_config(opts);
    const GridPtr grid = make_grid(cfg);
    const std::vector<double> exponents = sweep_exponents(cfg);
    const std::vector<NamedStart> starts = default_starts(grid);

    const auto cells = self_similar_sweep(grid, exponents, starts, cfg.solver);
    if (!out_path.empty()) {
        if (fs::path(out_path).has_parent_path()) {
            fs::create_directories(fs::path(out_path).parent_path());
        }
        write_sweep_csv(cells, out_path);
    }
    const std::size_t expected = exponents.size() * starts.size();
    std::size_t converged = 0;
    for (const SweepCell& cell : cells) converged += cell.converged ? 1 : 0;
    std::printf("sweep: %zu/%zu cells, %zu converged\n", cells.size(), expected, converged);
    return cells.size() == expected ? kExitSuccess : kExitGoalNotMet;
}

// Geometry error of the closed-form ellipsoid family against its exact
// volume, density, and support, per band limit.  Errors must decrease
// strictly with the degree and reach the requested floor at the last one.
int run_convergence_study(const CommonOptions& opts, const std::string& out_path,
                          std::vector<int> degrees, double floor) {
    const ExperimentConfig cfg = resolve_config(opts);
    const int dim = cfg.dim;
    if (degrees.empty()) degrees = {8, 16, 24, 32};
    std::sort(degrees.begin(), degrees.end());

    const std::vector<double> axes =
        dim == 1 ? std::vector<double>{1.4, 1.0} : std::vector<double>{1.4, 1.0, 0.9};
    double axis_product = 1.0;
    for (double a : axes) axis_product *= a;
    const double exact_volume =
        dim == 1 ? 3.14159265358979323846 * axis_product
                 : 4.0 * 3.14159265358979323846 * axis_product / 3.0;

    std::string csv = "degree,volume_rel_error,density_sup_error,support_sup_error\n";
    std::vector<double> worst_per_degree;
    for (int degree : degrees) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, degree);
        const ConvexBody body = make_ellipsoid(grid, axes);

        const double vol_err = std::abs(volume(body) - exact_volume) / exact_volume;

        // Exact support and cone-volume density of the ellipsoid at a node.
        double density_err = 0.0, support_err = 0.0;
        const ScalarField density = body.cone_volume_density();
        for (std::size_t i = 0; i < grid->node_count(); ++i) {
            const Vec3 x = grid->node(i);
            double s = 0.0;
            for (std::size_t k = 0; k < axes.size(); ++k) {
                s += axes[k] * axes[k] * x[static_cast<int>(k)] * x[static_cast<int>(k)];
            }
            const double h_exact = std::sqrt(s);
            const double density_exact =
                axis_product * axis_product / std::pow(h_exact, dim + 1.0);
            support_err = std::max(
                support_err, std::abs(body.support().values[i] - h_exact));
            density_err = std::max(
                density_err, std::abs(density.values[i] - density_exact));
        }

        char row[160];
        std::snprintf(row, sizeof(row), "%d,%.17g,%.17g,%.17g\n", degree, vol_err,
                      density_err, support_err);
        csv += row;
        worst_per_degree.push_back(std::max({vol_err, density_err, support_err}));
        log_line("degree " + std::to_string(degree) + " worst error " +
                 std::to_string(worst_per_degree.back()));
    }

    if (!out_path.empty()) {
        if (fs::path(out_path).has_parent_path()) {
            fs::create_directories(fs::path(out_path).parent_path());
        }
        std::FILE* f = std::fopen(out_path.c_str(), "wb");
        if (f == nullptr) throw std::runtime_error(out_path + ": cannot open file for writing");
        std::fwrite(csv.data(), 1, csv.size(), f);
        std::fclose(f);
    }
    std::fputs(csv.c_str(), stdout);

    bool decreasing = true;
    for (std::size_t i = 1; i < worst_per_degree.size(); ++i) {
        decreasing = decreasing && worst_per_degree[i] < worst_per_degree[i - 1];
    }
    const bool reached = worst_per_degree.empty() ? false : worst_per_degree.back() <= floor;
    std::printf("convergence: strictly_decreasing=%d floor_reached=%d (floor %.1e)\n",
                decreasing ? 1 : 0, reached ? 1 : 0, floor);
    return decreasing && reached ? kExitSuccess : kExitGoalNotMet;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical calculus for smooth convex bodies"};
    app.require_subcommand(1);

    CommonOptions gen_opts;
    std::string gen_out = "corpus";
    int gen_count = 0;
    CLI::App* gen = app.add_subcommand("gen-corpus", "generate a seeded body corpus");
    add_common(gen, gen_opts);
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--count", gen_count, "number of bodies");

    CommonOptions verify_opts;
    std::string verify_corpus = "corpus";
    std::string verify_out;
    CLI::App* verify = app.add_subcommand("verify", "run the standard checks on a corpus");
    add_common(verify, verify_opts);
    verify->add_option("--corpus", verify_corpus, "corpus directory with manifest.json");
    verify->add_option("--out", verify_out, "output directory (default: corpus dir)");

    CommonOptions solve_opts;
    std::string solve_out;
    std::string solve_initial;
    CLI::App* solve = app.add_subcommand("solve", "solve h^(1-p)/K = f");
    add_common(solve, solve_opts);
    solve->add_option("--out", solve_out, "result JSON path");
    solve->add_option("--initial", solve_initial, "initial body JSON (default: unit ball)");

    CommonOptions probe_opts;
    std::string probe_out;
    CLI::App* probe = app.add_subcommand("probe-uniqueness",
                                         "solve from several starts and compare limits");
    add_common(probe, probe_opts);
    probe->add_option("--out", probe_out, "report JSON path");

    CommonOptions sweep_opts;
    std::string sweep_out;
    CLI::App* sweep = app.add_subcommand("sweep", "solver sweep over exponents, f = 1");
    add_common(sweep, sweep_opts);
    sweep->add_option("--out", sweep_out, "CSV path");

    CommonOptions study_opts;
    std::string study_out;
    std::vector<int> study_degrees;
    double study_floor = 1e-10;
    CLI::App* study = app.add_subcommand("convergence-study",
                                         "geometry error vs band limit for a closed form");
    add_common(study, study_opts);
    study->add_option("--out", study_out, "CSV path");
    study->add_option("--degrees", study_degrees, "band limits to test");
    study->add_option("--floor", study_floor, "required error at the largest degree");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_gen_corpus(gen_opts, gen_out, gen_count);
        if (verify->parsed()) return run_verify(verify_opts, verify_corpus, verify_out);
        if (solve->parsed()) return run_solve(solve_opts, solve_out, solve_initial);
        if (probe->parsed()) return run_probe(probe_opts, probe_out);
        if (sweep->parsed()) return run_sweep(sweep_opts, sweep_out);
        if (study->parsed()) {
            return run_convergence_study(study_opts, study_out, study_degrees, study_floor);
        }
    } catch (const std::runtime_error& e) {
        // File-shaped problems: missing, corrupt, or mismatched inputs.
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        // Parameter-shaped problems: out-of-domain exponents and the like.
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitGoalNotMet;
    }
    return kExitSuccess;
}
