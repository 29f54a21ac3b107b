#pragma once

// Smooth strictly convex bodies represented by band-limited support
// functions.
//
// A body caches, per grid node: the support value h, its tangential gradient,
// the covariant Hessian, the boundary parametrization X = grad h + h x, and
// the determinant of A = hess h + h g (g the round metric).  That determinant
// is the curvature radius product 1/K, so the Gauss curvature and the
// cone-volume density h/K come out without divisions by small quantities.
//
// Strict convexity is certified by the convexity margin: the minimum
// eigenvalue of A over all nodes.  Construction rejects margins at or below
// 1e-8.  Support positivity (origin in the interior) is not required for
// construction but is enforced by the operations that need it.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spherecalc/fields.hpp"
#include "spherecalc/harmonics.hpp"
#include "spherecalc/linalg.hpp"
#include "spherecalc/sphere_grid.hpp"

namespace spherecalc {

class nonconvex_error : public std::domain_error {
  public:
    nonconvex_error(const std::string& what, double margin)
        : std::domain_error(what), margin_(margin) {}
    double margin() const { return margin_; }

  private:
    double margin_;
};

// Margin at or below this value fails construction.
inline constexpr double kConvexityMarginThreshold = 1e-8;

// Defined after ConvexBody; the optional needs the complete type.
struct BodyBuildResult;

class ConvexBody {
  public:
    using BuildResult = BodyBuildResult;

    // Throws nonconvex_error when the margin is at or below the threshold.
    static ConvexBody from_coefficients(GridPtr grid, HarmonicCoeffs coeffs,
                                        double projection_residual = 0.0);

    // Non-throwing variant for iterative callers; margin is always reported.
    static BodyBuildResult try_from_coefficients(GridPtr grid, HarmonicCoeffs coeffs,
                                                 double projection_residual = 0.0);

    const GridPtr& grid() const { return grid_; }
    int dim() const { return grid_->dim(); }
    const HarmonicCoeffs& coefficients() const { return coeffs_; }

    const ScalarField& support() const { return support_; }
    const TangentField& support_gradient() const { return gradient_; }
    const SymTensorField& support_hessian() const { return hessian_; }
    const AmbientVectorField& boundary_map() const { return boundary_; }

    // det(hess h + h g) per node; equals 1/K and stays positive for every
    // constructed body.
    const std::vector<double>& curvature_determinant() const { return det_; }

    ScalarField gauss_curvature() const;

    // h/K per node; requires min h > 0.
    ScalarField cone_volume_density() const;

    double convexity_margin() const { return margin_; }
    double min_support() const { return min_support_; }

    // Band-limit projection residual of the samples the body was built from;
    // zero when constructed directly from coefficients.
    double projection_residual() const { return projection_residual_; }

  private:
    ConvexBody() = default;

    GridPtr grid_;
    HarmonicCoeffs coeffs_;
    ScalarField support_;
    TangentField gradient_;
    SymTensorField hessian_;
    AmbientVectorField boundary_;
    std::vector<double> det_;
    double margin_ = 0.0;
    double min_support_ = 0.0;
    double projection_residual_ = 0.0;
};

struct BodyBuildResult {
    std::optional<ConvexBody> body;
    double margin = 0.0;
    double min_support = 0.0;
};

// Cheap margin probe without building the full cache.
double convexity_margin_of(const GridPtr& grid, const HarmonicCoeffs& coeffs);

struct Perturbation {
    int degree = 0;
    // S^2: order m in [-degree, degree].  S^1: +1 cosine, -1 sine.
    int order = 0;
    double amplitude = 0.0;
};

ConvexBody make_ball(GridPtr grid, double radius);
// Unit ball translated by c; requires |c| < 1 so the origin stays interior.
ConvexBody make_translated_ball(GridPtr grid, Vec3 c);
// Axis-aligned ellipsoid; semi_axes has dim + 1 positive entries.
ConvexBody make_ellipsoid(GridPtr grid, std::span<const double> semi_axes);
// Unit ball plus orthonormal-basis perturbations with the given amplitudes.
ConvexBody make_perturbed_ball(GridPtr grid, std::span<const Perturbation> perturbations);
// Analyze sampled support values at the grid's configured degree and build;
// the body records the projection residual.
ConvexBody body_from_support_samples(const ScalarField& h);

// Coefficients of the degree-1 field <c, x>.
HarmonicCoeffs linear_coefficients(int dim, int degree, Vec3 c);

ConvexBody translate(const ConvexBody& body, Vec3 t);
// R must be orthogonal; the rotated body samples h(R^T x).
ConvexBody rotate(const ConvexBody& body, const Mat3& R);

// Cone-volume barycenter int X dV / int dV; requires min h > 0.
Vec3 centroid(const ConvexBody& body);

// h - <c(K), x> as a field, together with helpers built from it.
ScalarField centered_support(const ConvexBody& body);

// Centered body rescaled to unit mean support: the support of
// (K - c(K)) / mean(h - <c(K), x>).
ConvexBody normalize(const ConvexBody& body);

double volume(const ConvexBody& body);

struct BodySummary {
    int dim = 0;
    double volume = 0.0;
    double cone_volume_total = 0.0;
    Vec3 centroid;
    double min_density = 0.0;
    double max_density = 0.0;
    double density_ratio_minus_one = 0.0;  // max/min - 1
    double mean_support = 0.0;
    double min_support = 0.0;
    double convexity_margin = 0.0;
    double min_centered_support = 0.0;
    double max_centered_support = 0.0;
};

BodySummary summarize(const ConvexBody& body);

}  // namespace spherecalc
