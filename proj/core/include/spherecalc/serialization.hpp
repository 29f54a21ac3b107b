#pragma once

// JSON and CSV persistence.
//
// Bodies round-trip bit-exactly: coefficients are written with the shortest
// decimal representation that parses back to the same double.  CSV output
// uses %.17g for the same reason.  Loaders throw std::runtime_error whose
// message starts with the offending file path, which the CLI surfaces
// verbatim before exiting with its corrupt-input code.

#include <span>
#include <string>
#include <vector>

#include "spherecalc/corpus.hpp"
#include "spherecalc/solver.hpp"
#include "spherecalc/verify.hpp"

namespace spherecalc {

inline constexpr int kSchemaVersion = 1;

void save_body(const ConvexBody& body, const std::string& path);

// The stored dimension and degree must match the grid.
ConvexBody load_body(const std::string& path, const GridPtr& grid);
// Convenience: builds the default-resolution grid for the stored dimension
// and degree.
ConvexBody load_body(const std::string& path);

std::string records_csv(std::span<const VerificationRecord> records);
void write_records_csv(std::span<const VerificationRecord> records, const std::string& path);

// Full verification report with per-record details and status labels.
void write_verify_report(std::span<const VerificationRecord> records,
                         const CheckTolerances& tol, int dim, int degree,
                         const std::string& path);

// Corpus manifest; body files are stored next to it as <id>.json.
void write_manifest(std::span<const CorpusEntry> corpus, const CorpusSpec& spec,
                    const SphereGrid& grid, const std::string& path);

struct ManifestEntry {
    std::string id;
    std::string family;
    std::string file;
    bool amplitude_clamped = false;
};

struct Manifest {
    int dim = 0;
    int degree = 0;
    int count = 0;
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;
};

Manifest load_manifest(const std::string& path);

void write_solver_result(const SolverResult& result, const SolverConfig& config,
                         const std::string& path);

void write_probe_report(const UniquenessProbe& probe, const SolverConfig& config,
                        const std::string& path);

std::string sweep_csv(std::span<const SweepCell> cells);
void write_sweep_csv(std::span<const SweepCell> cells, const std::string& path);

struct TargetSpec {
    std::string kind = "constant";  // constant | body_density
    double value = 1.0;             // for constant
    std::string file;               // for body_density
};

struct ExperimentConfig {
    int dim = 2;
    int degree = 16;
    CorpusSpec corpus;
    SolverConfig solver;
    TargetSpec target;
    std::vector<double> sweep_exponents;  // empty means the standard list
};

// Parses a schema_version 1 config; unknown versions and target kinds are
// rejected with the file path in the message.
ExperimentConfig load_config(const std::string& path);

}  // namespace spherecalc
