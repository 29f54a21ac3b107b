#include "spherecalc/distances.hpp"

#include <algorithm>
#include <cmath>

namespace spherecalc {

double delta2(const ConvexBody& a, const ConvexBody& b) {
    require_same_grid(a.grid(), b.grid(), "delta2");
    const GridPtr& grid = a.grid();
    std::vector<double> buf(grid->node_count());
    for (std::size_t i = 0; i < buf.size(); ++i) {
        const double d = a.support().values[i] - b.support().values[i];
        buf[i] = d * d;
    }
    return std::sqrt(grid->integrate(buf) / grid->sphere_area());
}

double delta_hausdorff(const ConvexBody& a, const ConvexBody& b) {
    require_same_grid(a.grid(), b.grid(), "delta_hausdorff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.support().values.size(); ++i)
        m = std::max(m, std::abs(a.support().values[i] - b.support().values[i]));
    return m;
}

double diameter(const ConvexBody& body) {
    const GridPtr& grid = body.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < grid->node_count(); ++i)
        m = std::max(m, body.support().values[i] + body.support().values[grid->antipode(i)]);
    return m;
}

double diameter_union(const ConvexBody& a, const ConvexBody& b) {
    require_same_grid(a.grid(), b.grid(), "diameter_union");
    const GridPtr& grid = a.grid();
    double m = 0.0;
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const std::size_t j = grid->antipode(i);
        const double hi = std::max(a.support().values[i], b.support().values[i]);
        const double hj = std::max(a.support().values[j], b.support().values[j]);
        m = std::max(m, hi + hj);
    }
    return m;
}

}  // namespace spherecalc
