#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "spherecalc/harmonics.hpp"

using namespace spherecalc;

namespace {

constexpr double kPi = 3.14159265358979323846;

HarmonicCoeffs random_coeffs(int dim, int degree, unsigned seed, double decay = 0.0) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    HarmonicCoeffs c = zero_coeffs(dim, degree);
    for (std::size_t k = 0; k < c.values.size(); ++k) {
        const int l = degree_of_index(dim, k);
        c.values[k] = normal(rng) / std::pow(1.0 + l, decay);
    }
    return c;
}

}  // namespace

TEST_CASE("basis sizes and index maps") {
    CHECK(basis_size(1, 16) == 33);
    CHECK(basis_size(2, 16) == 289);
    CHECK(circle_index(0, 1) == 0);
    CHECK(circle_index(3, 1) == 5);
    CHECK(circle_index(3, -1) == 6);
    CHECK(sphere_index(0, 0) == 0);
    CHECK(sphere_index(1, -1) == 1);
    CHECK(sphere_index(1, 0) == 2);
    CHECK(sphere_index(1, 1) == 3);
    CHECK(sphere_index(5, 3) == 33);
    CHECK(degree_of_index(1, 6) == 3);
    CHECK(degree_of_index(2, 33) == 5);
}

TEST_CASE("orthonormality of the basis under grid quadrature") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 8);
        const std::size_t size = basis_size(dim, 8);
        std::vector<ScalarField> elements;
        for (std::size_t k = 0; k < size; ++k) {
            HarmonicCoeffs c = zero_coeffs(dim, 8);
            c.values[k] = 1.0;
            elements.push_back(synthesize(c, grid));
        }
        double worst = 0.0;
        std::vector<double> buf(grid->node_count());
        for (std::size_t a = 0; a < size; ++a) {
            for (std::size_t b = a; b < size; ++b) {
                for (std::size_t i = 0; i < buf.size(); ++i) {
                    buf[i] = elements[a].values[i] * elements[b].values[i];
                }
                const double inner = grid->integrate(buf);
                worst = std::max(worst, std::abs(inner - (a == b ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-13);
    }
}

TEST_CASE("analyze inverts synthesize on band-limited data") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 12);
        const HarmonicCoeffs c = random_coeffs(dim, 12, 42 + dim);
        const ScalarField f = synthesize(c, grid);
        const HarmonicCoeffs back = analyze(f, 12);
        REQUIRE(back.values.size() == c.values.size());
        double worst = 0.0;
        for (std::size_t k = 0; k < c.values.size(); ++k) {
            worst = std::max(worst, std::abs(back.values[k] - c.values[k]));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("degree-one elements are the coordinate functions") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 8);
    const double beta = std::sqrt(3.0 / (4.0 * kPi));
    struct Case {
        std::size_t index;
        int axis;
    };
    for (const Case& tc : {Case{sphere_index(1, 1), 0}, Case{sphere_index(1, -1), 1},
                           Case{sphere_index(1, 0), 2}}) {
        HarmonicCoeffs c = zero_coeffs(2, 8);
        c.values[tc.index] = 1.0;
        const ScalarField f = synthesize(c, grid);
        for (std::size_t i = 0; i < grid->node_count(); i += 11) {
            CHECK(f.values[i] ==
                  doctest::Approx(beta * grid->node(i)[tc.axis]).epsilon(1e-13));
        }
    }

    const GridPtr circle = SphereGrid::with_default_resolution(1, 8);
    HarmonicCoeffs c = zero_coeffs(1, 8);
    c.values[circle_index(1, 1)] = 1.0;
    const ScalarField f = synthesize(c, circle);
    for (std::size_t i = 0; i < circle->node_count(); i += 5) {
        CHECK(f.values[i] ==
              doctest::Approx(circle->node(i).x / std::sqrt(kPi)).epsilon(1e-13));
    }
}

TEST_CASE("point evaluation matches grid synthesis") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 10);
        const HarmonicCoeffs c = random_coeffs(dim, 10, 7 + dim, 1.0);
        const ScalarField f = synthesize(c, grid);
        for (std::size_t i = 0; i < grid->node_count(); i += 17) {
            CHECK(point_evaluate(c, grid->node(i)) ==
                  doctest::Approx(f.values[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("laplace-beltrami acts by eigenvalues") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 9);
        for (int l : {0, 1, 3, 7}) {
            HarmonicCoeffs c = zero_coeffs(dim, 9);
            const std::size_t k = dim == 1 ? circle_index(l, l == 0 ? 1 : -1)
                                           : sphere_index(l, std::min(l, 2));
            c.values[k] = 1.0;
            const ScalarField y = synthesize(c, grid);
            const ScalarField lap = laplace_beltrami(c, grid);
            const double eigen = -static_cast<double>(l) * (l + dim - 1);
            for (std::size_t i = 0; i < grid->node_count(); i += 13) {
                CHECK(lap.values[i] == doctest::Approx(eigen * y.values[i]).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("projection residual vanishes on band-limited fields and not otherwise") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 10);
    const HarmonicCoeffs c = random_coeffs(2, 10, 3, 1.5);
    const ScalarField f = synthesize(c, grid);
    CHECK(projection_residual(f, 10) < 1e-12);

    std::vector<double> sharp(grid->node_count());
    for (std::size_t i = 0; i < sharp.size(); ++i) {
        sharp[i] = std::exp(3.0 * grid->node(i).z);
    }
    const ScalarField g = make_scalar_field(grid, std::move(sharp));
    const double full = projection_residual(g, 10);
    const double truncated = projection_residual(g, 4);
    CHECK(full > 1e-9);
    CHECK(truncated > full);
}

TEST_CASE("analyze rejects mismatched degrees beyond the grid limit") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 8);
    const ScalarField f = synthesize(random_coeffs(1, 8, 11), grid);
    CHECK_THROWS_AS(analyze(f, 9), std::invalid_argument);
}
