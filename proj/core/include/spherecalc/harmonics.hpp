#pragma once

// Real orthonormal harmonic bases on S^1 and S^2, dense transforms against a
// grid, and spectral differential operators.
//
// S^1 basis, degree L, size 2L + 1:
//   index 0:        1 / sqrt(2 pi)
//   index 2m - 1:   cos(m a) / sqrt(pi)      m = 1..L
//   index 2m:       sin(m a) / sqrt(pi)
// S^2 basis, degree L, size (L + 1)^2, index l^2 + l + m for m in [-l, l]:
//   m = 0:   P_l0(theta)
//   m > 0:   sqrt(2) P_lm(theta) cos(m phi)
//   m < 0:   sqrt(2) P_l|m|(theta) sin(|m| phi)
// with fully normalized associated Legendre functions and no Condon-Shortley
// sign, so that the basis is orthonormal for the surface measure.
//
// Eigenvalue convention: the Laplace-Beltrami operator acts on a degree-l
// basis element as multiplication by -l(l + n - 1), n the sphere dimension.

#include <cstddef>
#include <vector>

#include "spherecalc/fields.hpp"
#include "spherecalc/linalg.hpp"
#include "spherecalc/sphere_grid.hpp"

namespace spherecalc {

struct HarmonicCoeffs {
    int dim = 0;     // sphere dimension n, 1 or 2
    int degree = 0;  // maximum degree L
    std::vector<double> values;
};

std::size_t basis_size(int dim, int degree);
std::size_t sphere_index(int l, int m);
// sign +1 selects the cosine element of order m, -1 the sine element.
std::size_t circle_index(int m, int sign);
int degree_of_index(int dim, std::size_t k);

HarmonicCoeffs zero_coeffs(int dim, int degree);

// Quadrature projection onto the basis.  Exact for band-limited inputs when
// the grid resolves products of two degree-L elements, which every grid
// accepted by the constructors does for L up to its configured degree.
HarmonicCoeffs analyze(const ScalarField& f, int degree);

ScalarField synthesize(const HarmonicCoeffs& c, const GridPtr& grid);

// Relative sup-norm distance between f and its degree-L projection.
double projection_residual(const ScalarField& f, int degree);

// Basis evaluation at an arbitrary unit vector; used by refinement oracles
// and rotations.  O(L^2) per point.
double point_evaluate(const HarmonicCoeffs& c, Vec3 point);

// Spectral derivatives from coefficients.
TangentField gradient(const HarmonicCoeffs& c, const GridPtr& grid);
SymTensorField covariant_hessian(const HarmonicCoeffs& c, const GridPtr& grid);
ScalarField laplace_beltrami(const HarmonicCoeffs& c, const GridPtr& grid);

// Sampled-field entry points: project onto the grid's configured degree
// first and record the projection residual on the result.
TangentField gradient(const ScalarField& f);
SymTensorField covariant_hessian(const ScalarField& f);
ScalarField laplace_beltrami(const ScalarField& f);

// All angular derivatives needed for support-function geometry in one pass.
// Azimuthal derivatives are plain d/dphi values, not yet divided by
// sin(theta).  On S^1 only value, d1 (= d/da) and d11 are populated.
struct JetSynthesis {
    std::vector<double> value;
    std::vector<double> d1;    // d/dtheta
    std::vector<double> d2;    // d/dphi
    std::vector<double> d11;   // d2/dtheta2
    std::vector<double> d12;   // d2/dtheta dphi
    std::vector<double> d22;   // d2/dphi2
};
JetSynthesis synthesize_jet(const HarmonicCoeffs& c, const GridPtr& grid);

}  // namespace spherecalc
