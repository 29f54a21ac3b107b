#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spherecalc/harmonics.hpp"

// Spectral derivatives cross-checked against high-order finite differences
// of point evaluation.  The fields are random but smooth (coefficients decay
// like 1/(1+l)^3), so five-point stencils at step 1e-3 resolve first and
// second derivatives to ~1e-10 and ~1e-8.

using namespace spherecalc;

namespace {

HarmonicCoeffs smooth_coeffs(int dim, int degree, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    HarmonicCoeffs c = zero_coeffs(dim, degree);
    for (std::size_t k = 0; k < c.values.size(); ++k) {
        const int l = degree_of_index(dim, k);
        c.values[k] = normal(rng) / std::pow(1.0 + l, 3.0);
    }
    return c;
}

double fd1(const std::vector<double>& samples, double step) {
    // samples at -2h, -h, 0, +h, +2h
    return (samples[0] - 8.0 * samples[1] + 8.0 * samples[3] - samples[4]) / (12.0 * step);
}

double fd2(const std::vector<double>& samples, double step) {
    return (-samples[0] + 16.0 * samples[1] - 30.0 * samples[2] + 16.0 * samples[3] -
            samples[4]) /
           (12.0 * step * step);
}

std::vector<double> sample_circle(const HarmonicCoeffs& c, double angle, double step) {
    std::vector<double> out;
    for (int k = -2; k <= 2; ++k) {
        const double a = angle + k * step;
        out.push_back(point_evaluate(c, Vec3{std::cos(a), std::sin(a), 0.0}));
    }
    return out;
}

Vec3 sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
}

double azimuth_of(const SphereGrid& grid, int lon) {
    return 2.0 * 3.14159265358979323846 * lon / grid.longitudes();
}

}  // namespace

TEST_CASE("circle gradient and hessian match finite differences") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 12);
    const HarmonicCoeffs c = smooth_coeffs(1, 12, 101);
    const TangentField grad = gradient(c, grid);
    const SymTensorField hess = covariant_hessian(c, grid);
    const double step = 1e-3;

    for (std::size_t i = 0; i < grid->node_count(); i += 3) {
        const double a = grid->angle(i);
        const auto samples = sample_circle(c, a, step);
        CHECK(grad.comp_theta[i] == doctest::Approx(fd1(samples, step)).epsilon(1e-9));
        CHECK(hess.values[i].tt == doctest::Approx(fd2(samples, step)).epsilon(1e-7));
    }
}

TEST_CASE("sphere gradient matches finite differences") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    const HarmonicCoeffs c = smooth_coeffs(2, 12, 202);
    const TangentField grad = gradient(c, grid);
    const double step = 1e-3;

    for (int lat : {3, 9, 14, 19}) {
        for (int lon : {0, 7, 21}) {
            const std::size_t i = static_cast<std::size_t>(lat) * grid->longitudes() + lon;
            const double theta = grid->theta(lat);
            const double phi = azimuth_of(*grid, lon);

            std::vector<double> st, sp;
            for (int k = -2; k <= 2; ++k) {
                st.push_back(point_evaluate(c, sphere_point(theta + k * step, phi)));
                sp.push_back(point_evaluate(c, sphere_point(theta, phi + k * step)));
            }
            CHECK(grad.comp_theta[i] == doctest::Approx(fd1(st, step)).epsilon(1e-8));
            CHECK(grad.comp_phi[i] ==
                  doctest::Approx(fd1(sp, step) / std::sin(theta)).epsilon(1e-8));
        }
    }
}

TEST_CASE("sphere covariant hessian matches finite differences") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    const HarmonicCoeffs c = smooth_coeffs(2, 12, 303);
    const SymTensorField hess = covariant_hessian(c, grid);
    const double step = 2e-3;

    for (int lat : {4, 12, 19}) {
        for (int lon : {2, 17}) {
            const std::size_t i = static_cast<std::size_t>(lat) * grid->longitudes() + lon;
            const double theta = grid->theta(lat);
            const double phi = azimuth_of(*grid, lon);
            const double sin_t = std::sin(theta);
            const double cot_t = std::cos(theta) / sin_t;

            std::vector<double> st, sp;
            for (int k = -2; k <= 2; ++k) {
                st.push_back(point_evaluate(c, sphere_point(theta + k * step, phi)));
                sp.push_back(point_evaluate(c, sphere_point(theta, phi + k * step)));
            }
            // Mixed derivative as fd1 in theta of fd1 in phi, both fourth
            // order, so its truncation error matches the pure stencils.
            auto at = [&](double dt, double dp) {
                return point_evaluate(c, sphere_point(theta + dt, phi + dp));
            };
            std::vector<double> dphi_rows;
            for (int kt = -2; kt <= 2; ++kt) {
                std::vector<double> row;
                for (int kp = -2; kp <= 2; ++kp) row.push_back(at(kt * step, kp * step));
                dphi_rows.push_back(fd1(row, step));
            }
            const double mixed = fd1(dphi_rows, step);

            const double h_tt = fd2(st, step);
            const double h_tp = (mixed - cot_t * fd1(sp, step)) / sin_t;
            const double h_pp = fd2(sp, step) / (sin_t * sin_t) + cot_t * fd1(st, step);

            CHECK(hess.values[i].tt == doctest::Approx(h_tt).epsilon(1e-6));
            CHECK(hess.values[i].tp == doctest::Approx(h_tp).epsilon(1e-6));
            CHECK(hess.values[i].pp == doctest::Approx(h_pp).epsilon(1e-6));
        }
    }
}

TEST_CASE("hessian trace equals the spectral laplacian") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 14);
        const HarmonicCoeffs c = smooth_coeffs(dim, 14, 404 + dim);
        const SymTensorField hess = covariant_hessian(c, grid);
        const ScalarField lap = laplace_beltrami(c, grid);
        for (std::size_t i = 0; i < grid->node_count(); ++i) {
            const double trace =
                dim == 1 ? hess.values[i].trace_1d() : hess.values[i].trace_2d();
            CHECK(trace == doctest::Approx(lap.values[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("gradient of a linear function is its tangential projection") {
    for (int dim : {1, 2}) {
        // the third component must vanish on S^1, where z is not a coordinate
        const Vec3 v = dim == 1 ? Vec3{0.4, -0.7, 0.0} : Vec3{0.4, -0.7, 0.5};
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 8);
        std::vector<double> values(grid->node_count());
        for (std::size_t i = 0; i < values.size(); ++i) {
            values[i] = dot(v, grid->node(i));
        }
        const ScalarField f = make_scalar_field(grid, std::move(values));
        const AmbientVectorField g = to_ambient(gradient(f));
        for (std::size_t i = 0; i < grid->node_count(); i += 5) {
            const Vec3 x = grid->node(i);
            const Vec3 expected = v - dot(v, x) * x;
            CHECK(norm(g.values[i] - expected) < 1e-12);
        }
    }
}
