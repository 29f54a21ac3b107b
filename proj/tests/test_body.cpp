#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "spherecalc/convex_body.hpp"
#include "spherecalc/harmonics.hpp"

using namespace spherecalc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("unit ball geometry") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 16);
        const ConvexBody ball = make_ball(grid, 1.0);
        CHECK(ball.convexity_margin() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ball.min_support() == doctest::Approx(1.0).epsilon(1e-12));
        const double expected_volume = dim == 1 ? kPi : 4.0 * kPi / 3.0;
        CHECK(volume(ball) == doctest::Approx(expected_volume).epsilon(1e-13));
        const ScalarField density = ball.cone_volume_density();
        for (std::size_t i = 0; i < grid->node_count(); i += 9) {
            CHECK(density.values[i] == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(norm(centroid(ball)) < 1e-13);
    }
}

TEST_CASE("scaled ball curvature") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 8);
    const ConvexBody ball = make_ball(grid, 1.7);
    // 1/K = r^n on a radius-r ball.
    for (std::size_t i = 0; i < grid->node_count(); i += 13) {
        CHECK(ball.curvature_determinant()[i] == doctest::Approx(1.7 * 1.7).epsilon(1e-12));
    }
    CHECK(ball.convexity_margin() == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("ellipse curvature against the parametric closed form") {
    const double a = 1.2, b = 1.0;
    const GridPtr grid = SphereGrid::with_default_resolution(1, 32);
    const ConvexBody body = make_ellipsoid(grid, std::vector<double>{a, b});
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const Vec3 x = grid->node(i);
        const double h = std::sqrt(a * a * x.x * x.x + b * b * x.y * x.y);
        const double radius = a * a * b * b / (h * h * h);
        CHECK(body.curvature_determinant()[i] == doctest::Approx(radius).epsilon(1e-10));
        CHECK(body.support().values[i] == doctest::Approx(h).epsilon(1e-12));
    }
    CHECK(volume(body) == doctest::Approx(kPi * a * b).epsilon(1e-12));
}

TEST_CASE("ellipse area against a dense boundary polygon") {
    const double a = 1.2, b = 1.0;
    const GridPtr grid = SphereGrid::with_default_resolution(1, 32);
    const ConvexBody body = make_ellipsoid(grid, std::vector<double>{a, b});

    // Shoelace area of the polygon traced by the boundary map on a dense
    // angular ladder; an estimate independent of the quadrature identities.
    const HarmonicCoeffs& c = body.coefficients();
    const int segments = 65536;
    double area2 = 0.0;
    double prev_x = 0.0, prev_y = 0.0;
    double first_x = 0.0, first_y = 0.0;
    for (int k = 0; k < segments; ++k) {
        const double ang = 2.0 * kPi * k / segments;
        const Vec3 u{std::cos(ang), std::sin(ang), 0.0};
        const Vec3 t{-std::sin(ang), std::cos(ang), 0.0};
        // X = h'(angle) t + h u, evaluated spectrally via a small step pair.
        const double h = point_evaluate(c, u);
        const double step = 1e-6;
        const Vec3 up{std::cos(ang + step), std::sin(ang + step), 0.0};
        const Vec3 um{std::cos(ang - step), std::sin(ang - step), 0.0};
        const double hp = (point_evaluate(c, up) - point_evaluate(c, um)) / (2.0 * step);
        const double bx = hp * t.x + h * u.x;
        const double by = hp * t.y + h * u.y;
        if (k == 0) {
            first_x = bx;
            first_y = by;
        } else {
            area2 += prev_x * by - bx * prev_y;
        }
        prev_x = bx;
        prev_y = by;
    }
    area2 += prev_x * first_y - first_x * prev_y;
    const double shoelace = 0.5 * area2;
    CHECK(volume(body) == doctest::Approx(shoelace).epsilon(1e-7));
}

TEST_CASE("ellipsoid curvature against the closed form") {
    const std::vector<double> axes{1.2, 1.0, 0.9};
    const GridPtr grid = SphereGrid::with_default_resolution(2, 24);
    const ConvexBody body = make_ellipsoid(grid, axes);
    const double abc = axes[0] * axes[1] * axes[2];
    double worst_det = 0.0, worst_h = 0.0;
    for (std::size_t i = 0; i < grid->node_count(); ++i) {
        const Vec3 x = grid->node(i);
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += axes[k] * axes[k] * x[k] * x[k];
        const double h = std::sqrt(s);
        const double inv_curv = abc * abc / (h * h * h * h);
        worst_h = std::max(worst_h, std::abs(body.support().values[i] - h));
        worst_det =
            std::max(worst_det, std::abs(body.curvature_determinant()[i] - inv_curv));
    }
    CHECK(worst_h < 1e-10);
    CHECK(worst_det < 1e-7);
    CHECK(volume(body) == doctest::Approx(4.0 * kPi * abc / 3.0).epsilon(1e-10));
}

TEST_CASE("translated ball closed forms") {
    for (int dim : {1, 2}) {
        const GridPtr grid = SphereGrid::with_default_resolution(dim, 16);
        const Vec3 c = dim == 1 ? Vec3{0.25, -0.1, 0.0} : Vec3{0.2, -0.1, 0.15};
        const ConvexBody body = make_translated_ball(grid, c);

        const double expected_volume = dim == 1 ? kPi : 4.0 * kPi / 3.0;
        CHECK(volume(body) == doctest::Approx(expected_volume).epsilon(1e-12));

        // Cone-volume barycenter of a translated ball sits at (n+2)/(n+1) c.
        const Vec3 factor = ((dim + 2.0) / (dim + 1.0)) * c;
        CHECK(norm(centroid(body) - factor) < 1e-12);

        // Boundary map is x + c.
        for (std::size_t i = 0; i < grid->node_count(); i += 7) {
            CHECK(norm(body.boundary_map().values[i] - (grid->node(i) + c)) < 1e-11);
        }
    }
}

TEST_CASE("translation covariance") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    const Perturbation bumps[] = {{2, 1, 0.06}, {4, -2, 0.03}};
    const ConvexBody body = make_perturbed_ball(grid, bumps);
    const Vec3 t{0.1, 0.05, -0.08};
    const ConvexBody moved = translate(body, t);

    CHECK(volume(moved) == doctest::Approx(volume(body)).epsilon(1e-12));
    // The cone-volume barycenter gains (n+2)/(n+1) t, not t: the density
    // h + <t,x> also shifts mass toward the translation direction.
    const Vec3 shift = (2.0 + 2.0) / (2.0 + 1.0) * t;
    CHECK(norm(centroid(moved) - centroid(body) - shift) < 1e-11);
    for (std::size_t i = 0; i < grid->node_count(); i += 19) {
        const double expected = body.support().values[i] + dot(t, grid->node(i));
        CHECK(moved.support().values[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("rotation covariance") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    const ConvexBody body = make_ellipsoid(grid, std::vector<double>{1.2, 1.0, 0.9});
    const double ca = std::cos(0.7), sa = std::sin(0.7);
    Mat3 R = Mat3::identity();
    R.m = {ca, -sa, 0.0, sa, ca, 0.0, 0.0, 0.0, 1.0};
    const ConvexBody rotated = rotate(body, R);

    CHECK(volume(rotated) == doctest::Approx(volume(body)).epsilon(1e-11));
    // h_R(x) = h(R^T x) sampled at nodes.
    for (std::size_t i = 0; i < grid->node_count(); i += 23) {
        const Vec3 x = grid->node(i);
        const Vec3 back = transpose_times(R, x);
        const double expected = point_evaluate(body.coefficients(), back);
        CHECK(rotated.support().values[i] == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("centroid is stable under grid refinement") {
    const GridPtr coarse = SphereGrid::with_default_resolution(2, 12);
    const Perturbation bumps[] = {{2, 1, 0.05}, {3, -1, 0.04}};
    const ConvexBody body = make_perturbed_ball(coarse, bumps);

    // Same coefficients embedded at a higher band limit on a finer grid.
    const GridPtr fine = SphereGrid::with_default_resolution(2, 24);
    HarmonicCoeffs lifted = zero_coeffs(2, 24);
    for (std::size_t k = 0; k < body.coefficients().values.size(); ++k) {
        lifted.values[k] = body.coefficients().values[k];
    }
    const ConvexBody refined = ConvexBody::from_coefficients(fine, lifted);

    CHECK(norm(centroid(body) - centroid(refined)) < 1e-12);
    CHECK(volume(body) == doctest::Approx(volume(refined)).epsilon(1e-12));
}

TEST_CASE("normalization recenters and rescales") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 16);
    const ConvexBody body = make_translated_ball(grid, Vec3{0.3, 0.0, 0.0});
    const ConvexBody normalized = normalize(body);

    const double mean =
        grid->integrate(normalized.support().values) / grid->sphere_area();
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-13));

    // Normalized translated ball is the unit ball shifted by -c/(n+1).
    for (std::size_t i = 0; i < grid->node_count(); i += 3) {
        const double expected = 1.0 - 0.3 * grid->node(i).x / 2.0;
        CHECK(normalized.support().values[i] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("construction rejects nonconvex coefficients with the margin attached") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 8);
    HarmonicCoeffs c = make_ball(grid, 1.0).coefficients();
    c.values[circle_index(4, 1)] = 0.5;  // 1 + 0.5 cos(4a)/sqrt(pi): h'' + h < 0

    const double probed = convexity_margin_of(grid, c);
    CHECK(probed < 0.0);
    try {
        ConvexBody::from_coefficients(grid, c);
        FAIL("expected nonconvex_error");
    } catch (const nonconvex_error& e) {
        CHECK(e.margin() == doctest::Approx(probed).epsilon(1e-12));
    }

    const auto result = ConvexBody::try_from_coefficients(grid, c);
    CHECK_FALSE(result.body.has_value());
    CHECK(result.margin == doctest::Approx(probed).epsilon(1e-12));
}

TEST_CASE("perturbed ball matches its explicit description") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 10);
    const Perturbation bump{3, 2, 0.04};
    const ConvexBody body = make_perturbed_ball(grid, {&bump, 1});
    HarmonicCoeffs expected = make_ball(grid, 1.0).coefficients();
    expected.values[sphere_index(3, 2)] += 0.04;
    for (std::size_t k = 0; k < expected.values.size(); ++k) {
        CHECK(body.coefficients().values[k] == expected.values[k]);
    }
}

TEST_CASE("summary fields are consistent") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 16);
    const ConvexBody body = make_translated_ball(grid, Vec3{0.2, 0.0, 0.0});
    const BodySummary s = summarize(body);
    CHECK(s.dim == 1);
    CHECK(s.volume == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(s.cone_volume_total == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(s.min_density == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(s.max_density == doctest::Approx(1.2).epsilon(1e-10));
    CHECK(s.density_ratio_minus_one == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(s.mean_support == doctest::Approx(1.0).epsilon(1e-13));
}
