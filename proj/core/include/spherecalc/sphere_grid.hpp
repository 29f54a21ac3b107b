#pragma once

// Quadrature grids on the unit circle S^1 and the unit sphere S^2.
//
// A grid carries nodes, positive quadrature weights summing to the sphere
// area, an orthonormal tangent frame per node, an antipodal index map, and
// precomputed basis tables for the harmonic transforms up to a configured
// maximum degree.
//
// S^1: uniform angles, trapezoidal weights.  Exact for trigonometric
//      polynomials of degree <= node_count - 1.
// S^2: Gauss-Legendre latitudes in cos(theta) crossed with uniform
//      longitudes.  Exact for polynomial integrands of degree
//      <= 2*latitudes - 1 in cos(theta) and <= longitudes - 1 in azimuth.
//
// Poles are never grid nodes, so the coordinate frame is well defined
// everywhere.  Node counts are kept even so the antipodal map is exact.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "spherecalc/linalg.hpp"

namespace spherecalc {

class SphereGrid;
using GridPtr = std::shared_ptr<const SphereGrid>;

// Internal basis tables consumed by the harmonic transforms.  Stored with the
// grid because they depend on both the node set and the maximum degree.
struct TransformTables {
    // Azimuthal tables, indexed [m][j]: cos(m phi_j), sin(m phi_j).
    // For S^1 these are the full Fourier tables over the nodes.
    std::vector<std::vector<double>> cos_m;
    std::vector<std::vector<double>> sin_m;

    // S^2 only: normalized associated Legendre values and their first and
    // second derivatives with respect to theta, per order m.  Block m is a
    // row-major [latitudes x (L - m + 1)] matrix over degrees l = m..L.
    std::vector<std::vector<double>> legendre;
    std::vector<std::vector<double>> legendre_d1;
    std::vector<std::vector<double>> legendre_d2;
};

class SphereGrid {
  public:
    // Uniform circle grid.  node_count must be even and >= 2*max_degree + 1.
    static GridPtr circle(int node_count, int max_degree);

    // Gauss-Legendre x uniform sphere grid.  Requires
    // latitudes >= max_degree + 1 and even longitudes >= 2*max_degree + 1.
    static GridPtr sphere(int latitudes, int longitudes, int max_degree);

    // Resolution rule used by the command-line tools and tests:
    // dim 1 -> 4*(degree + 1) nodes, dim 2 -> ceil(1.5*(degree + 1))
    // latitudes with twice as many longitudes.
    static GridPtr with_default_resolution(int dim, int max_degree);

    int dim() const { return dim_; }
    int ambient_dim() const { return dim_ + 1; }
    int max_degree() const { return max_degree_; }
    std::size_t node_count() const { return nodes_.size(); }

    Vec3 node(std::size_t i) const { return nodes_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::span<const Vec3> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    // Orthonormal tangent frame at node i.  axis 0 is the polar direction
    // e_theta (the sole tangent on S^1); axis 1 is e_phi (S^2 only).
    Vec3 frame(std::size_t i, int axis) const {
        return axis == 0 ? frame_theta_[i] : frame_phi_[i];
    }

    // Index of the node at -node(i); exact by construction.
    std::size_t antipode(std::size_t i) const { return antipode_[i]; }

    double sphere_area() const { return sphere_area_; }

    // Deterministic pairwise-summed quadrature of per-node values.
    double integrate(std::span<const double> values) const;

    // S^2 layout helpers; node index is i = lat * longitudes + lon.
    int latitudes() const { return latitudes_; }
    int longitudes() const { return longitudes_; }
    double theta(int lat) const { return theta_[lat]; }
    double sin_theta(int lat) const { return sin_theta_[lat]; }
    double cot_theta(int lat) const { return cot_theta_[lat]; }
    double latitude_weight(int lat) const { return lat_weight_[lat]; }

    // S^1 angle of node j.
    double angle(std::size_t j) const { return theta_[j]; }

    const TransformTables& tables() const { return tables_; }

    std::uint64_t id() const { return id_; }

  private:
    SphereGrid() = default;

    int dim_ = 0;
    int max_degree_ = 0;
    int latitudes_ = 0;
    int longitudes_ = 0;
    double sphere_area_ = 0.0;
    std::uint64_t id_ = 0;

    std::vector<Vec3> nodes_;
    std::vector<double> weights_;
    std::vector<Vec3> frame_theta_;
    std::vector<Vec3> frame_phi_;
    std::vector<std::size_t> antipode_;

    // Per-latitude data on S^2; per-node angles on S^1.
    std::vector<double> theta_;
    std::vector<double> sin_theta_;
    std::vector<double> cot_theta_;
    std::vector<double> lat_weight_;

    TransformTables tables_;
};

// True when both fields/bodies were built on the same grid object.
inline bool same_grid(const GridPtr& a, const GridPtr& b) { return a.get() == b.get(); }

// Deterministic pairwise summation; used for every quadrature reduction.
double pairwise_sum(std::span<const double> values);

// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace spherecalc
