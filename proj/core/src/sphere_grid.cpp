#include "spherecalc/sphere_grid.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spherecalc {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t next_grid_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

double pairwise_sum_impl(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(v, half) + pairwise_sum_impl(v + half, n - half);
}

// Normalized associated Legendre tables without the Condon-Shortley sign,
// together with first and second theta-derivatives, propagated through the
// classical recurrences.  Basis scale: integral over S^2 of
// (P_lm(theta) * sqrt(2) cos(m phi))^2 equals 1 (plain P_l0 for m = 0).
void build_legendre_tables(int degree, std::span<const double> theta, TransformTables& t) {
    const int block_count = degree + 1;
    const std::size_t nlat = theta.size();
    t.legendre.resize(block_count);
    t.legendre_d1.resize(block_count);
    t.legendre_d2.resize(block_count);
    for (int m = 0; m <= degree; ++m) {
        const std::size_t width = static_cast<std::size_t>(degree - m + 1);
        t.legendre[m].assign(nlat * width, 0.0);
        t.legendre_d1[m].assign(nlat * width, 0.0);
        t.legendre_d2[m].assign(nlat * width, 0.0);
    }

    std::vector<double> diag_v(nlat), diag_d1(nlat), diag_d2(nlat);
    for (std::size_t i = 0; i < nlat; ++i) {
        diag_v[i] = 1.0 / std::sqrt(4.0 * kPi);
        diag_d1[i] = 0.0;
        diag_d2[i] = 0.0;
    }

    std::vector<double> prev_v(nlat), prev_d1(nlat), prev_d2(nlat);
    std::vector<double> prev2_v(nlat), prev2_d1(nlat), prev2_d2(nlat);

    for (int m = 0; m <= degree; ++m) {
        const std::size_t width = static_cast<std::size_t>(degree - m + 1);
        auto store = [&](int l, std::size_t i, double v, double d1, double d2) {
            const std::size_t k = i * width + static_cast<std::size_t>(l - m);
            t.legendre[m][k] = v;
            t.legendre_d1[m][k] = d1;
            t.legendre_d2[m][k] = d2;
        };

        for (std::size_t i = 0; i < nlat; ++i) store(m, i, diag_v[i], diag_d1[i], diag_d2[i]);

        if (m + 1 <= degree) {
            const double k1 = std::sqrt(2.0 * m + 3.0);
            for (std::size_t i = 0; i < nlat; ++i) {
                const double c = std::cos(theta[i]);
                const double s = std::sin(theta[i]);
                prev2_v[i] = diag_v[i];
                prev2_d1[i] = diag_d1[i];
                prev2_d2[i] = diag_d2[i];
                prev_v[i] = k1 * c * diag_v[i];
                prev_d1[i] = k1 * (-s * diag_v[i] + c * diag_d1[i]);
                prev_d2[i] = k1 * (-c * diag_v[i] - 2.0 * s * diag_d1[i] + c * diag_d2[i]);
                store(m + 1, i, prev_v[i], prev_d1[i], prev_d2[i]);
            }
        }

        for (int l = m + 2; l <= degree; ++l) {
            const double a = std::sqrt(((2.0 * l - 1.0) * (2.0 * l + 1.0)) /
                                       (static_cast<double>(l - m) * (l + m)));
            const double b = std::sqrt(((2.0 * l + 1.0) * (l + m - 1.0) * (l - m - 1.0)) /
                                       (static_cast<double>(l - m) * (l + m) * (2.0 * l - 3.0)));
            for (std::size_t i = 0; i < nlat; ++i) {
                const double c = std::cos(theta[i]);
                const double s = std::sin(theta[i]);
                const double v = a * c * prev_v[i] - b * prev2_v[i];
                const double d1 = a * (-s * prev_v[i] + c * prev_d1[i]) - b * prev2_d1[i];
                const double d2 = a * (-c * prev_v[i] - 2.0 * s * prev_d1[i] + c * prev_d2[i]) -
                                  b * prev2_d2[i];
                prev2_v[i] = prev_v[i];
                prev2_d1[i] = prev_d1[i];
                prev2_d2[i] = prev_d2[i];
                prev_v[i] = v;
                prev_d1[i] = d1;
                prev_d2[i] = d2;
                store(l, i, v, d1, d2);
            }
        }

        if (m + 1 <= degree) {
            const double k = std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0));
            for (std::size_t i = 0; i < nlat; ++i) {
                const double c = std::cos(theta[i]);
                const double s = std::sin(theta[i]);
                const double v = k * s * diag_v[i];
                const double d1 = k * (c * diag_v[i] + s * diag_d1[i]);
                const double d2 = k * (-s * diag_v[i] + 2.0 * c * diag_d1[i] + s * diag_d2[i]);
                diag_v[i] = v;
                diag_d1[i] = d1;
                diag_d2[i] = d2;
            }
        }
    }
}

void build_azimuth_tables(int degree, std::span<const double> phi, TransformTables& t) {
    t.cos_m.resize(degree + 1);
    t.sin_m.resize(degree + 1);
    for (int m = 0; m <= degree; ++m) {
        t.cos_m[m].resize(phi.size());
        t.sin_m[m].resize(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) {
            t.cos_m[m][j] = std::cos(m * phi[j]);
            t.sin_m[m][j] = std::sin(m * phi[j]);
        }
    }
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_impl(values.data(), values.size());
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Root near the upper end for i = 0, descending with i.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre value and derivative by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        if (2 * i + 1 == n) x = 0.0;
        {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
}

double SphereGrid::integrate(std::span<const double> values) const {
    if (values.size() != nodes_.size())
        throw std::invalid_argument("integrate: value count does not match grid");
    std::vector<double> weighted(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) weighted[i] = weights_[i] * values[i];
    return pairwise_sum(weighted);
}

GridPtr SphereGrid::circle(int node_count, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("circle grid: negative degree");
    if (node_count % 2 != 0)
        throw std::invalid_argument("circle grid: node count must be even for antipodal pairing");
    if (node_count < 2 * max_degree + 1)
        throw std::invalid_argument(
            "circle grid: " + std::to_string(node_count) + " nodes is below the Nyquist " +
            "requirement of " + std::to_string(2 * max_degree + 1) + " for degree " +
            std::to_string(max_degree));

    auto grid = std::shared_ptr<SphereGrid>(new SphereGrid());
    grid->dim_ = 1;
    grid->max_degree_ = max_degree;
    grid->sphere_area_ = 2.0 * kPi;
    grid->id_ = next_grid_id();

    const std::size_t n = static_cast<std::size_t>(node_count);
    grid->nodes_.resize(n);
    grid->weights_.assign(n, 2.0 * kPi / node_count);
    grid->frame_theta_.resize(n);
    grid->frame_phi_.assign(n, Vec3{});
    grid->antipode_.resize(n);
    grid->theta_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = 2.0 * kPi * static_cast<double>(j) / node_count;
        grid->theta_[j] = a;
        grid->nodes_[j] = {std::cos(a), std::sin(a), 0.0};
        grid->frame_theta_[j] = {-std::sin(a), std::cos(a), 0.0};
        grid->antipode_[j] = (j + n / 2) % n;
    }
    build_azimuth_tables(max_degree, grid->theta_, grid->tables_);
    return grid;
}

GridPtr SphereGrid::sphere(int latitudes, int longitudes, int max_degree) {
    if (max_degree < 0) throw std::invalid_argument("sphere grid: negative degree");
    if (latitudes < max_degree + 1)
        throw std::invalid_argument(
            "sphere grid: " + std::to_string(latitudes) + " latitudes is below the " +
            "requirement of " + std::to_string(max_degree + 1) + " for degree " +
            std::to_string(max_degree));
    if (longitudes % 2 != 0)
        throw std::invalid_argument("sphere grid: longitude count must be even for antipodal pairing");
    if (longitudes < 2 * max_degree + 1)
        throw std::invalid_argument(
            "sphere grid: " + std::to_string(longitudes) + " longitudes is below the Nyquist " +
            "requirement of " + std::to_string(2 * max_degree + 1) + " for degree " +
            std::to_string(max_degree));

    auto grid = std::shared_ptr<SphereGrid>(new SphereGrid());
    grid->dim_ = 2;
    grid->max_degree_ = max_degree;
    grid->latitudes_ = latitudes;
    grid->longitudes_ = longitudes;
    grid->sphere_area_ = 4.0 * kPi;
    grid->id_ = next_grid_id();

    std::vector<double> x, w;
    gauss_legendre(latitudes, x, w);

    const std::size_t nlat = static_cast<std::size_t>(latitudes);
    const std::size_t nlon = static_cast<std::size_t>(longitudes);
    grid->theta_.resize(nlat);
    grid->sin_theta_.resize(nlat);
    grid->cot_theta_.resize(nlat);
    grid->lat_weight_.resize(nlat);
    for (std::size_t i = 0; i < nlat; ++i) {
        grid->theta_[i] = std::acos(x[i]);
        grid->sin_theta_[i] = std::sqrt(1.0 - x[i] * x[i]);
        grid->cot_theta_[i] = x[i] / grid->sin_theta_[i];
        grid->lat_weight_[i] = w[i];
    }

    std::vector<double> phi(nlon), cphi(nlon), sphi(nlon);
    for (std::size_t j = 0; j < nlon; ++j) {
        phi[j] = 2.0 * kPi * static_cast<double>(j) / longitudes;
        cphi[j] = std::cos(phi[j]);
        sphi[j] = std::sin(phi[j]);
    }

    const std::size_t n = nlat * nlon;
    grid->nodes_.resize(n);
    grid->weights_.resize(n);
    grid->frame_theta_.resize(n);
    grid->frame_phi_.resize(n);
    grid->antipode_.resize(n);
    const double lon_weight = 2.0 * kPi / longitudes;
    for (std::size_t i = 0; i < nlat; ++i) {
        const double s = grid->sin_theta_[i];
        const double c = x[i];
        for (std::size_t j = 0; j < nlon; ++j) {
            const std::size_t k = i * nlon + j;
            grid->nodes_[k] = {s * cphi[j], s * sphi[j], c};
            grid->weights_[k] = w[i] * lon_weight;
            grid->frame_theta_[k] = {c * cphi[j], c * sphi[j], -s};
            grid->frame_phi_[k] = {-sphi[j], cphi[j], 0.0};
            grid->antipode_[k] = (nlat - 1 - i) * nlon + (j + nlon / 2) % nlon;
        }
    }

    build_azimuth_tables(max_degree, phi, grid->tables_);
    build_legendre_tables(max_degree, grid->theta_, grid->tables_);
    return grid;
}

GridPtr SphereGrid::with_default_resolution(int dim, int max_degree) {
    if (dim == 1) return circle(4 * (max_degree + 1), max_degree);
    if (dim == 2) {
        const int lat = (3 * (max_degree + 1) + 1) / 2;
        return sphere(lat, 2 * lat, max_degree);
    }
    throw std::invalid_argument("grid: sphere dimension must be 1 or 2");
}

}  // namespace spherecalc
