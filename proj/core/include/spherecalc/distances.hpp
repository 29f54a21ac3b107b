#pragma once

// Distances between bodies measured through their support functions on a
// shared grid, plus diameters via antipodal node pairs.

#include "spherecalc/convex_body.hpp"

namespace spherecalc {

// Normalized L2 distance: sqrt of the area-averaged squared support gap.
double delta2(const ConvexBody& a, const ConvexBody& b);

// Sup distance over grid nodes.
double delta_hausdorff(const ConvexBody& a, const ConvexBody& b);

// max over antipodal pairs of h(x) + h(-x).
double diameter(const ConvexBody& body);

// Diameter of the convex hull of the union; its support is max(h_a, h_b).
double diameter_union(const ConvexBody& a, const ConvexBody& b);

}  // namespace spherecalc
