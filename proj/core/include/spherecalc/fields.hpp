#pragma once

// Per-node sampled fields bound to a specific grid.
//
// A field never outlives or migrates between grids; every consumer checks
// grid identity and rejects mismatches.  Tangent fields store components in
// the grid's orthonormal frame, which keeps tangency exact by construction.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spherecalc/linalg.hpp"
#include "spherecalc/sphere_grid.hpp"

namespace spherecalc {

struct ScalarField {
    GridPtr grid;
    std::vector<double> values;

    // Relative sup-norm mismatch between the input and its band-limited
    // projection, recorded by operators that analyze a sampled field.
    // Zero for fields synthesized directly from coefficients.
    double projection_residual = 0.0;
};

struct TangentField {
    GridPtr grid;
    std::vector<double> comp_theta;  // e_theta component (sole component on S^1)
    std::vector<double> comp_phi;    // e_phi component (S^2 only)
    double projection_residual = 0.0;
};

struct AmbientVectorField {
    GridPtr grid;
    std::vector<Vec3> values;
};

struct SymTensorField {
    GridPtr grid;
    std::vector<SymMat2> values;
    double projection_residual = 0.0;
};

ScalarField make_scalar_field(GridPtr grid, std::vector<double> values);

// Ambient representation of a tangent field; values are orthogonal to the
// node directions because the frame is.
AmbientVectorField to_ambient(const TangentField& t);

// Pointwise squared length |v|^2 of a tangent field.
ScalarField tangent_norm_squared(const TangentField& t);

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where);

}  // namespace spherecalc
