#include "spherecalc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "spherecalc/harmonics.hpp"

namespace spherecalc {

namespace {

bool solver_logging_enabled() {
    const char* env = std::getenv("SPHERECALC_LOG");
    return env != nullptr && *env != '\0';
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void require_positive(const ScalarField& f, const char* what) {
    for (double v : f.values) {
        if (!(v > 0.0)) {
            throw std::invalid_argument(std::string("solver: ") + what +
                                        " must be positive on the grid");
        }
    }
}

// Multipliers 1/lambda_l for l = 0..L.  Exponents with a (near) zero
// eigenvalue inside the band are rejected; the linearized problem is
// singular there and no dt makes the flow contract.
std::vector<double> preconditioner(int dim, int degree, double p) {
    std::vector<double> inv(degree + 1);
    for (int l = 0; l <= degree; ++l) {
        const double lambda = flow_eigenvalue(dim, l, p);
        if (std::abs(lambda) < 1e-3) {
            char buf[96];
            std::snprintf(buf, sizeof(buf),
                          "solver: linearization degenerate at p = %g (degree %d)", p, l);
            throw std::invalid_argument(buf);
        }
        inv[l] = 1.0 / lambda;
    }
    return inv;
}

}  // namespace

double flow_eigenvalue(int dim, int l, double p) {
    return (1.0 - p) + dim - static_cast<double>(l) * (l + dim - 1);
}

ScalarField flow_residual(const ConvexBody& body, const ScalarField& f, double p) {
    require_same_grid(body.grid(), f.grid, "flow_residual");
    if (body.min_support() <= 0.0) {
        throw std::domain_error("flow_residual: body support must be positive");
    }
    const auto& h = body.support().values;
    const auto& det = body.curvature_determinant();
    std::vector<double> r(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        r[i] = (1.0 - p) * std::log(h[i]) + std::log(det[i]) - std::log(f.values[i]);
    }
    return make_scalar_field(body.grid(), std::move(r));
}

SolverResult solve_curvature_equation(const ScalarField& f, const ConvexBody& initial,
                                      const SolverConfig& config) {
    const GridPtr grid = initial.grid();
    require_same_grid(grid, f.grid, "solve_curvature_equation");
    require_positive(f, "target f");
    if (initial.min_support() <= 0.0) {
        throw std::domain_error("solve_curvature_equation: initial support must be positive");
    }
    if (!(config.p > -(grid->dim() + 1.0) && config.p < 1.0)) {
        throw std::invalid_argument(
            "solve_curvature_equation: p must lie in (-(n+1), 1)");
    }

    const int dim = grid->dim();
    const int degree = grid->max_degree();
    const std::vector<double> inv_lambda =
        config.precondition ? preconditioner(dim, degree, config.p)
                            : std::vector<double>(degree + 1, 1.0);
    const bool logging = solver_logging_enabled();

    SolverResult result;
    ConvexBody current = initial;
    ScalarField residual = flow_residual(current, f, config.p);
    double res_norm = sup_norm(residual.values);
    result.residual_history.push_back(res_norm);

    double dt = config.dt0;
    const int max_rejects_per_step = 80;

    while (result.iterations < config.max_iterations) {
        if (res_norm <= config.tolerance) {
            result.converged = true;
            break;
        }

        // Preconditioned direction in coefficient space.
        HarmonicCoeffs dir = analyze(residual, degree);
        for (std::size_t k = 0; k < dir.values.size(); ++k) {
            dir.values[k] *= inv_lambda[degree_of_index(dim, k)];
        }
        const ScalarField step = synthesize(dir, grid);

        bool accepted = false;
        int rejects = 0;
        while (rejects < max_rejects_per_step) {
            std::vector<double> trial_values(grid->node_count());
            const auto& h = current.support().values;
            for (std::size_t i = 0; i < trial_values.size(); ++i) {
                trial_values[i] = std::exp(std::log(h[i]) - dt * step.values[i]);
            }
            const ScalarField trial_field = make_scalar_field(grid, std::move(trial_values));
            const HarmonicCoeffs trial_coeffs = analyze(trial_field, degree);
            auto build = ConvexBody::try_from_coefficients(grid, trial_coeffs);

            if (build.body.has_value() && build.margin > config.convexity_guard &&
                build.min_support > config.convexity_guard) {
                const ScalarField trial_residual =
                    flow_residual(*build.body, f, config.p);
                const double trial_norm = sup_norm(trial_residual.values);
                if (trial_norm <= res_norm * (1.0 - config.decrease_rate * dt)) {
                    current = std::move(*build.body);
                    residual = trial_residual;
                    res_norm = trial_norm;
                    accepted = true;
                    break;
                }
            }
            dt *= config.shrink;
            ++rejects;
            if (dt < 1e-15) break;
        }

        if (!accepted) {
            result.failure_reason = "step size underflow: no admissible descent step";
            break;
        }

        ++result.iterations;
        result.residual_history.push_back(res_norm);
        if (logging) {
            std::fprintf(stderr, "[solver] iter %d dt %.3g residual %.6e margin %.3g\n",
                         result.iterations, dt, res_norm, current.convexity_margin());
        }
        dt = std::min(config.dt0, dt * config.recover);
    }

    if (!result.converged && result.failure_reason.empty()) {
        result.failure_reason = res_norm <= config.tolerance
                                    ? ""
                                    : "max iterations reached before tolerance";
        result.converged = res_norm <= config.tolerance;
    }
    result.body = std::move(current);
    result.final_residual = res_norm;
    result.final_margin = result.body->convexity_margin();
    return result;
}

UniquenessProbe probe_uniqueness(const ScalarField& f, std::span<const NamedStart> starts,
                                 const SolverConfig& config) {
    if (starts.size() < 2) {
        throw std::invalid_argument("probe_uniqueness: need at least two starts");
    }
    UniquenessProbe probe;
    probe.all_converged = true;
    for (const NamedStart& start : starts) {
        probe.start_ids.push_back(start.id);
        probe.runs.push_back(solve_curvature_equation(f, start.body, config));
        probe.all_converged = probe.all_converged && probe.runs.back().converged;
    }
    for (std::size_t i = 0; i < probe.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < probe.runs.size(); ++j) {
            if (probe.runs[i].body.has_value() && probe.runs[j].body.has_value()) {
                probe.max_pairwise_hausdorff =
                    std::max(probe.max_pairwise_hausdorff,
                             delta_hausdorff(*probe.runs[i].body, *probe.runs[j].body));
            }
        }
    }
    double dev = 0.0;
    for (double v : f.values) dev = std::max(dev, std::abs(v - 1.0));
    probe.target_deviation = dev;
    probe.consistent =
        probe.all_converged && probe.max_pairwise_hausdorff <= 10.0 * config.tolerance;
    return probe;
}

std::vector<SweepCell> self_similar_sweep(const GridPtr& grid, std::span<const double> exponents,
                                          std::span<const NamedStart> starts,
                                          SolverConfig config) {
    const ScalarField one =
        make_scalar_field(grid, std::vector<double>(grid->node_count(), 1.0));
    const ConvexBody ball = make_ball(grid, 1.0);
    std::vector<SweepCell> cells;
    cells.reserve(exponents.size() * starts.size());
    for (double p : exponents) {
        config.p = p;
        for (const NamedStart& start : starts) {
            const SolverResult run = solve_curvature_equation(one, start.body, config);
            SweepCell cell;
            cell.p = p;
            cell.start_id = start.id;
            cell.converged = run.converged;
            cell.iterations = run.iterations;
            cell.final_residual = run.final_residual;
            cell.hausdorff_to_ball =
                run.body.has_value() ? delta_hausdorff(*run.body, ball) : -1.0;
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace spherecalc
