// Throughput of the hot paths: harmonic transforms, body construction,
// checker evaluation, and solver steps.

#include <benchmark/benchmark.h>

#include "spherecalc/convex_body.hpp"
#include "spherecalc/harmonics.hpp"
#include "spherecalc/solver.hpp"
#include "spherecalc/verify.hpp"

namespace {

using namespace spherecalc;

GridPtr bench_grid(int dim) { return SphereGrid::with_default_resolution(dim, 16); }

ConvexBody bench_body(const GridPtr& grid) {
    const Perturbation bumps[] = {{2, 0, 0.05}, {4, grid->dim() == 1 ? 1 : 3, 0.02}};
    return make_perturbed_ball(grid, bumps);
}

void BM_AnalyzeS2(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const ScalarField h = bench_body(grid).support();
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(h, grid->max_degree()));
    }
}
BENCHMARK(BM_AnalyzeS2);

void BM_SynthesizeJetS2(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const HarmonicCoeffs coeffs = bench_body(grid).coefficients();
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_jet(coeffs, grid));
    }
}
BENCHMARK(BM_SynthesizeJetS2);

void BM_BodyFromCoefficients(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const HarmonicCoeffs coeffs = bench_body(grid).coefficients();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ConvexBody::from_coefficients(grid, coeffs));
    }
}
BENCHMARK(BM_BodyFromCoefficients);

void BM_KeyInequality(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const ConvexBody body = bench_body(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_key_inequality(body));
    }
}
BENCHMARK(BM_KeyInequality);

void BM_StandardChecks(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const ConvexBody body = bench_body(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_standard_checks(body));
    }
}
BENCHMARK(BM_StandardChecks);

void BM_SolverTenSteps(benchmark::State& state) {
    const GridPtr grid = bench_grid(2);
    const ConvexBody start = bench_body(grid);
    const ScalarField one =
        make_scalar_field(grid, std::vector<double>(grid->node_count(), 1.0));
    SolverConfig config;
    config.p = 0.5;
    config.max_iterations = 10;
    config.tolerance = 0.0;  // never converges; measures exactly ten steps
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_curvature_equation(one, start, config));
    }
}
BENCHMARK(BM_SolverTenSteps);

}  // namespace

BENCHMARK_MAIN();
