#include "spherecalc/fields.hpp"

#include <string>

namespace spherecalc {

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* where) {
    if (!a || !b) throw std::invalid_argument(std::string(where) + ": missing grid");
    if (!same_grid(a, b))
        throw std::invalid_argument(std::string(where) + ": operands live on different grids");
}

ScalarField make_scalar_field(GridPtr grid, std::vector<double> values) {
    if (!grid) throw std::invalid_argument("make_scalar_field: missing grid");
    if (values.size() != grid->node_count())
        throw std::invalid_argument("make_scalar_field: value count does not match grid");
    return ScalarField{std::move(grid), std::move(values)};
}

AmbientVectorField to_ambient(const TangentField& t) {
    AmbientVectorField out{t.grid, std::vector<Vec3>(t.grid->node_count())};
    const bool has_phi = t.grid->dim() == 2;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = t.comp_theta[i] * t.grid->frame(i, 0);
        if (has_phi) out.values[i] += t.comp_phi[i] * t.grid->frame(i, 1);
    }
    return out;
}

ScalarField tangent_norm_squared(const TangentField& t) {
    std::vector<double> v(t.grid->node_count(), 0.0);
    const bool has_phi = t.grid->dim() == 2;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = t.comp_theta[i] * t.comp_theta[i];
        if (has_phi) v[i] += t.comp_phi[i] * t.comp_phi[i];
    }
    return ScalarField{t.grid, std::move(v)};
}

}  // namespace spherecalc
