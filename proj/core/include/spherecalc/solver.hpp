#pragma once

// Damped log-space flow for the curvature equation h^(1-p) / K = f on the
// sphere, f positive and band-limited, p in (-(n+1), 1).
//
// The iterate is the band-limited support function h = e^u.  Each step
// evaluates the residual r = (1-p) log h + log det(hess h + h g) - log f,
// expands it in harmonics, divides the degree-l component by the eigenvalue
//   lambda_l = (1 - p) + n - l(l + n - 1)
// of the linearized operator at the unit ball, and walks u against the
// resulting direction with step dt.  The division is what makes the flow
// stable: lambda_l is positive for l <= 1 and negative for l >= 2, so a raw
// gradient update (precondition = false) amplifies every mode of degree >= 2
// and diverges even from starts adjacent to the solution.  Keeping the raw
// update available is deliberate; tests pin down that behaviour.
//
// Steps that break convexity, lose support positivity, or fail to shrink the
// sup-norm residual are rejected and retried with a smaller dt; dt recovers
// geometrically after accepted steps.  The residual history is therefore
// strictly decreasing by construction.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spherecalc/convex_body.hpp"
#include "spherecalc/distances.hpp"

namespace spherecalc {

struct SolverConfig {
    double p = 0.0;
    double dt0 = 0.5;
    double shrink = 0.5;            // dt multiplier on a rejected step
    double recover = 1.25;          // dt multiplier (capped at dt0) on success
    double tolerance = 1e-9;        // sup-norm residual target
    int max_iterations = 50000;
    double convexity_guard = 1e-6;  // margin and support floor during the flow
    bool precondition = true;
    // Required sup-norm decrease per accepted step: |r_new| <=
    // |r_old| * (1 - decrease_rate * dt).
    double decrease_rate = 5e-4;
};

struct SolverResult {
    std::optional<ConvexBody> body;  // last accepted iterate
    int iterations = 0;              // accepted steps
    bool converged = false;
    std::string failure_reason;      // empty on success
    // residual_history[0] is the initial residual; one entry per accepted
    // step afterwards.  Strictly decreasing.
    std::vector<double> residual_history;
    double final_residual = 0.0;
    double final_margin = 0.0;
};

// r = (1-p) log h + log det(hess h + h g) - log f per node.
ScalarField flow_residual(const ConvexBody& body, const ScalarField& f, double p);

// Eigenvalue of the linearized flow map on degree-l harmonics.
double flow_eigenvalue(int dim, int l, double p);

SolverResult solve_curvature_equation(const ScalarField& f, const ConvexBody& initial,
                                      const SolverConfig& config);

struct NamedStart {
    std::string id;
    ConvexBody body;
};

// Runs the solver from several starts and compares the limits pairwise.
struct UniquenessProbe {
    std::vector<SolverResult> runs;
    std::vector<std::string> start_ids;
    bool all_converged = false;
    double max_pairwise_hausdorff = 0.0;
    // all runs converged and pairwise Hausdorff gaps stay within 10x the
    // solver tolerance
    bool consistent = false;
    double target_deviation = 0.0;  // ||f - 1||_inf, for context in reports
};

UniquenessProbe probe_uniqueness(const ScalarField& f, std::span<const NamedStart> starts,
                                 const SolverConfig& config);

// Solver behaviour across exponents for the self-similar target f = 1, whose
// solution is the unit ball.  One cell per (p, start) pair.
struct SweepCell {
    double p = 0.0;
    std::string start_id;
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double hausdorff_to_ball = 0.0;
};

std::vector<SweepCell> self_similar_sweep(const GridPtr& grid, std::span<const double> exponents,
                                          std::span<const NamedStart> starts,
                                          SolverConfig config);

}  // namespace spherecalc
