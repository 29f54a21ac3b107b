#include "spherecalc/convex_body.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spherecalc {

namespace {

struct GeometryCache {
    ScalarField support;
    TangentField gradient;
    SymTensorField hessian;
    AmbientVectorField boundary;
    std::vector<double> det;
    double margin = 0.0;
    double min_support = 0.0;
};

GeometryCache build_geometry(const GridPtr& grid, const HarmonicCoeffs& coeffs) {
    const JetSynthesis jet = synthesize_jet(coeffs, grid);
    const std::size_t n = grid->node_count();
    const int dim = grid->dim();

    GeometryCache gc;
    gc.support = ScalarField{grid, jet.value};
    gc.gradient = TangentField{grid, jet.d1, {}, 0.0};
    gc.hessian = SymTensorField{grid, std::vector<SymMat2>(n), 0.0};
    gc.det.resize(n);

    if (dim == 1) {
        gc.margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            gc.hessian.values[i].tt = jet.d11[i];
            const double a = jet.d11[i] + jet.value[i];
            gc.det[i] = a;
            gc.margin = std::min(gc.margin, a);
        }
    } else {
        gc.gradient.comp_phi.assign(n, 0.0);
        const int nlon = grid->longitudes();
        gc.margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const int lat = static_cast<int>(i) / nlon;
            const double inv_sin = 1.0 / grid->sin_theta(lat);
            const double cot = grid->cot_theta(lat);
            gc.gradient.comp_phi[i] = jet.d2[i] * inv_sin;
            SymMat2& hm = gc.hessian.values[i];
            hm.tt = jet.d11[i];
            hm.tp = inv_sin * (jet.d12[i] - cot * jet.d2[i]);
            hm.pp = inv_sin * inv_sin * jet.d22[i] + cot * jet.d1[i];
            const SymMat2 a{hm.tt + jet.value[i], hm.tp, hm.pp + jet.value[i]};
            gc.det[i] = a.det_2d();
            gc.margin = std::min(gc.margin, a.min_eigenvalue_2d());
        }
    }

    gc.boundary = AmbientVectorField{grid, std::vector<Vec3>(n)};
    const bool has_phi = dim == 2;
    gc.min_support = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 v = gc.gradient.comp_theta[i] * grid->frame(i, 0);
        if (has_phi) v += gc.gradient.comp_phi[i] * grid->frame(i, 1);
        gc.boundary.values[i] = v + jet.value[i] * grid->node(i);
        gc.min_support = std::min(gc.min_support, jet.value[i]);
    }
    return gc;
}

double sphere_area_of_dim(int dim) { return dim == 1 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

void require_positive_support(const ConvexBody& body, const char* where) {
    if (body.min_support() <= 0.0)
        throw std::domain_error(std::string(where) + ": support function is not positive (min " +
                                std::to_string(body.min_support()) +
                                "); origin must be interior");
}

}  // namespace

ConvexBody ConvexBody::from_coefficients(GridPtr grid, HarmonicCoeffs coeffs,
                                         double projection_residual) {
    BuildResult r = try_from_coefficients(std::move(grid), std::move(coeffs), projection_residual);
    if (!r.body)
        throw nonconvex_error("body construction: convexity margin " +
                                  std::to_string(r.margin) + " is at or below the threshold " +
                                  std::to_string(kConvexityMarginThreshold),
                              r.margin);
    return std::move(*r.body);
}

ConvexBody::BuildResult ConvexBody::try_from_coefficients(GridPtr grid, HarmonicCoeffs coeffs,
                                                          double projection_residual) {
    if (!grid) throw std::invalid_argument("body construction: missing grid");
    GeometryCache gc = build_geometry(grid, coeffs);
    BuildResult out;
    out.margin = gc.margin;
    out.min_support = gc.min_support;
    if (!(gc.margin > kConvexityMarginThreshold)) return out;

    ConvexBody body;
    body.grid_ = std::move(grid);
    body.coeffs_ = std::move(coeffs);
    body.support_ = std::move(gc.support);
    body.gradient_ = std::move(gc.gradient);
    body.hessian_ = std::move(gc.hessian);
    body.boundary_ = std::move(gc.boundary);
    body.det_ = std::move(gc.det);
    body.margin_ = gc.margin;
    body.min_support_ = gc.min_support;
    body.projection_residual_ = projection_residual;
    out.body = std::move(body);
    return out;
}

double convexity_margin_of(const GridPtr& grid, const HarmonicCoeffs& coeffs) {
    if (!grid) throw std::invalid_argument("convexity_margin_of: missing grid");
    return build_geometry(grid, coeffs).margin;
}

ScalarField ConvexBody::gauss_curvature() const {
    std::vector<double> k(det_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = 1.0 / det_[i];
    return ScalarField{grid_, std::move(k)};
}

ScalarField ConvexBody::cone_volume_density() const {
    require_positive_support(*this, "cone_volume_density");
    std::vector<double> d(det_.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = support_.values[i] * det_[i];
    return ScalarField{grid_, std::move(d)};
}

HarmonicCoeffs linear_coefficients(int dim, int degree, Vec3 c) {
    HarmonicCoeffs out = zero_coeffs(dim, degree);
    // Degree-1 orthonormal elements are beta * coordinate with
    // beta = sqrt((n + 1) / area); the coefficient of <c, x> is c_k / beta.
    const double inv_beta = std::sqrt(sphere_area_of_dim(dim) / (dim + 1.0));
    if (dim == 1) {
        if (degree >= 1) {
            out.values[circle_index(1, +1)] = c.x * inv_beta;
            out.values[circle_index(1, -1)] = c.y * inv_beta;
        }
    } else {
        if (degree >= 1) {
            out.values[sphere_index(1, 1)] = c.x * inv_beta;
            out.values[sphere_index(1, -1)] = c.y * inv_beta;
            out.values[sphere_index(1, 0)] = c.z * inv_beta;
        }
    }
    return out;
}

ConvexBody make_ball(GridPtr grid, double radius) {
    if (!grid) throw std::invalid_argument("make_ball: missing grid");
    if (!(radius > 0.0)) throw std::invalid_argument("make_ball: radius must be positive");
    HarmonicCoeffs c = zero_coeffs(grid->dim(), grid->max_degree());
    c.values[0] = radius * std::sqrt(sphere_area_of_dim(grid->dim()));
    return ConvexBody::from_coefficients(std::move(grid), std::move(c));
}

ConvexBody make_translated_ball(GridPtr grid, Vec3 offset) {
    if (!grid) throw std::invalid_argument("make_translated_ball: missing grid");
    if (grid->dim() == 1 && offset.z != 0.0)
        throw std::invalid_argument("make_translated_ball: z offset on a circle grid");
    if (!(norm(offset) < 1.0))
        throw std::invalid_argument("make_translated_ball: |offset| must be below 1");
    HarmonicCoeffs c = linear_coefficients(grid->dim(), grid->max_degree(), offset);
    c.values[0] += std::sqrt(sphere_area_of_dim(grid->dim()));
    return ConvexBody::from_coefficients(std::move(grid), std::move(c));
}

ConvexBody make_ellipsoid(GridPtr grid, std::span<const double> semi_axes) {
    if (!grid) throw std::invalid_argument("make_ellipsoid: missing grid");
    if (semi_axes.size() != static_cast<std::size_t>(grid->ambient_dim()))
        throw std::invalid_argument("make_ellipsoid: need one semi-axis per ambient coordinate");
    for (double a : semi_axes)
        if (!(a > 0.0)) throw std::invalid_argument("make_ellipsoid: semi-axes must be positive");

    std::vector<double> h(grid->node_count());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Vec3 x = grid->node(i);
        double q = semi_axes[0] * semi_axes[0] * x.x * x.x +
                   semi_axes[1] * semi_axes[1] * x.y * x.y;
        if (semi_axes.size() == 3) q += semi_axes[2] * semi_axes[2] * x.z * x.z;
        h[i] = std::sqrt(q);
    }
    return body_from_support_samples(ScalarField{std::move(grid), std::move(h)});
}

ConvexBody make_perturbed_ball(GridPtr grid, std::span<const Perturbation> perturbations) {
    if (!grid) throw std::invalid_argument("make_perturbed_ball: missing grid");
    HarmonicCoeffs c = zero_coeffs(grid->dim(), grid->max_degree());
    c.values[0] = std::sqrt(sphere_area_of_dim(grid->dim()));
    for (const Perturbation& p : perturbations) {
        if (p.degree < 1 || p.degree > grid->max_degree())
            throw std::invalid_argument("make_perturbed_ball: perturbation degree out of range");
        std::size_t k;
        if (grid->dim() == 1) {
            if (p.order != 1 && p.order != -1)
                throw std::invalid_argument(
                    "make_perturbed_ball: circle order must be +1 (cos) or -1 (sin)");
            k = circle_index(p.degree, p.order);
        } else {
            if (std::abs(p.order) > p.degree)
                throw std::invalid_argument("make_perturbed_ball: |order| exceeds degree");
            k = sphere_index(p.degree, p.order);
        }
        c.values[k] += p.amplitude;
    }
    return ConvexBody::from_coefficients(std::move(grid), std::move(c));
}

ConvexBody body_from_support_samples(const ScalarField& h) {
    if (!h.grid) throw std::invalid_argument("body_from_support_samples: missing grid");
    const int L = h.grid->max_degree();
    HarmonicCoeffs c = analyze(h, L);
    return ConvexBody::from_coefficients(h.grid, std::move(c), projection_residual(h, L));
}

ConvexBody translate(const ConvexBody& body, Vec3 t) {
    if (body.dim() == 1 && t.z != 0.0)
        throw std::invalid_argument("translate: z offset on a circle grid");
    HarmonicCoeffs c = body.coefficients();
    const HarmonicCoeffs shift = linear_coefficients(body.dim(), c.degree, t);
    for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] += shift.values[k];
    return ConvexBody::from_coefficients(body.grid(), std::move(c));
}

ConvexBody rotate(const ConvexBody& body, const Mat3& R) {
    const GridPtr& grid = body.grid();
    std::vector<double> h(grid->node_count());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = point_evaluate(body.coefficients(), transpose_times(R, grid->node(i)));
    HarmonicCoeffs c = analyze(ScalarField{grid, std::move(h)}, body.coefficients().degree);
    return ConvexBody::from_coefficients(grid, std::move(c));
}

Vec3 centroid(const ConvexBody& body) {
    require_positive_support(body, "centroid");
    const GridPtr& grid = body.grid();
    const std::size_t n = grid->node_count();
    const auto& h = body.support().values;
    const auto& det = body.curvature_determinant();
    const auto& X = body.boundary_map().values;

    std::vector<double> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = h[i] * det[i];
    const double total = grid->integrate(buf);

    Vec3 c;
    for (int k = 0; k < grid->ambient_dim(); ++k) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = X[i][k] * h[i] * det[i];
        c[k] = grid->integrate(buf) / total;
    }
    return c;
}

ScalarField centered_support(const ConvexBody& body) {
    const Vec3 c = centroid(body);
    std::vector<double> v(body.grid()->node_count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = body.support().values[i] - dot(c, body.grid()->node(i));
    return ScalarField{body.grid(), std::move(v)};
}

ConvexBody normalize(const ConvexBody& body) {
    const Vec3 c = centroid(body);
    HarmonicCoeffs coeffs = body.coefficients();
    const HarmonicCoeffs shift = linear_coefficients(body.dim(), coeffs.degree, c);
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) coeffs.values[k] -= shift.values[k];

    // Mean of the centered support, read off the constant coefficient.
    const double area = body.grid()->sphere_area();
    const double mean = coeffs.values[0] / std::sqrt(area);
    if (!(mean > 0.0)) throw std::domain_error("normalize: centered support has nonpositive mean");
    for (double& v : coeffs.values) v /= mean;
    return ConvexBody::from_coefficients(body.grid(), std::move(coeffs));
}

double volume(const ConvexBody& body) {
    const GridPtr& grid = body.grid();
    std::vector<double> buf(grid->node_count());
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = body.support().values[i] * body.curvature_determinant()[i];
    return grid->integrate(buf) / (grid->dim() + 1.0);
}

BodySummary summarize(const ConvexBody& body) {
    const GridPtr& grid = body.grid();
    const std::size_t n = grid->node_count();
    BodySummary s;
    s.dim = body.dim();
    s.convexity_margin = body.convexity_margin();
    s.min_support = body.min_support();

    const ScalarField density = body.cone_volume_density();
    s.cone_volume_total = grid->integrate(density.values);
    s.volume = s.cone_volume_total / (body.dim() + 1.0);
    s.min_density = s.max_density = density.values[0];
    for (double d : density.values) {
        s.min_density = std::min(s.min_density, d);
        s.max_density = std::max(s.max_density, d);
    }
    s.density_ratio_minus_one = s.max_density / s.min_density - 1.0;

    s.centroid = centroid(body);
    s.mean_support = grid->integrate(body.support().values) / grid->sphere_area();

    s.min_centered_support = std::numeric_limits<double>::infinity();
    s.max_centered_support = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double v = body.support().values[i] - dot(s.centroid, grid->node(i));
        s.min_centered_support = std::min(s.min_centered_support, v);
        s.max_centered_support = std::max(s.max_centered_support, v);
    }
    return s;
}

}  // namespace spherecalc
