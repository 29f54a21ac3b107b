#include "spherecalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "spherecalc/harmonics.hpp"

namespace spherecalc {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Below this Hausdorff gap two bodies are treated as the same body.
constexpr double kCoincidenceGap = 1e-13;

std::string format_exponent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

void require_positive_support(const ConvexBody& body, const char* op) {
    if (body.min_support() <= 0.0) {
        throw std::domain_error(std::string(op) +
                                ": support function must be positive on the grid");
    }
}

double integrate_product(const SphereGrid& grid, const std::vector<double>& a,
                         const std::vector<double>& b) {
    std::vector<double> buf(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) buf[i] = a[i] * b[i];
    return grid.integrate(buf);
}

// Componentwise weighted moment sum(f_i * node_i), each component summed
// pairwise so results do not depend on accumulation chunking.
Vec3 integrate_vector_moment(const SphereGrid& grid, const std::vector<double>& f) {
    const std::size_t n = grid.node_count();
    std::vector<double> bx(n), by(n), bz(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 x = grid.node(i);
        bx[i] = f[i] * x.x;
        by[i] = f[i] * x.y;
        bz[i] = f[i] * x.z;
    }
    return {grid.integrate(bx), grid.integrate(by), grid.integrate(bz)};
}

// sum(w_i * f_i * a_i b_i^T) with deterministic per-entry pairwise sums.
Mat3 integrate_outer_moment(const SphereGrid& grid, const std::vector<double>& f,
                            const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    const std::size_t n = grid.node_count();
    Mat3 result{};
    std::vector<double> buf(n);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < n; ++i) buf[i] = f[i] * a[i][r] * b[i][c];
            result.m[3 * r + c] = grid.integrate(buf);
        }
    }
    return result;
}

std::vector<Vec3> grid_nodes(const SphereGrid& grid) {
    std::vector<Vec3> xs(grid.node_count());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = grid.node(i);
    return xs;
}

// Tangential gradient of x -> <c, x> has frame components <c, e_a(x)>.
void subtract_linear_gradient(const SphereGrid& grid, Vec3 c, TangentField& g) {
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        g.comp_theta[i] -= dot(c, grid.frame(i, 0));
        if (grid.dim() == 2) g.comp_phi[i] -= dot(c, grid.frame(i, 1));
    }
}

VerificationRecord make_record(std::string name, std::string statement, CheckKind kind) {
    VerificationRecord rec;
    rec.check = std::move(name);
    rec.statement = std::move(statement);
    rec.kind = kind;
    return rec;
}

void finish_inequality(VerificationRecord& rec, double lhs, double rhs,
                       const CheckTolerances& tol) {
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.slack = rhs - lhs;
    rec.tolerance = tol.inequality;
    rec.pass = rec.slack >= -tol.inequality;
}

void finish_identity(VerificationRecord& rec, double lhs, double rhs, double residual,
                     const CheckTolerances& tol) {
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.slack = residual;
    rec.tolerance = tol.identity;
    rec.pass = residual <= tol.identity;
}

const char* kKeyStatement =
    "n*int |X|^2 dV <= int h*(lap h + n*h) dV + n*|int X dV|^2 / int dV";
const char* kBasicStatement =
    "n*int (|grad ht|^2 + ht^2) dtheta <= (M/m)*int ht*(lap ht + n*ht) dtheta";
const char* kPoincareStatement = "n*avg (ht - avg ht)^2 <= avg |grad ht|^2";
const char* kStabilityStatement = "delta2(Kbar, ball) <= sqrt(M/m - 1)/(c1*sqrt(n+1))";
const char* kHausdorffStatement = "alpha_hat = delta2^2 * diam^n / deltaH^(n+2) > 0";
const char* kChainStatement =
    "max h_Kbar <= 1/c1; (max ht)^(n+1)*area >= (n+1)*V >= (1-eps)*area; "
    "min ht >= max ht*(1-dH)/(1+dH) > 0";
const char* kDivergenceStatement =
    "int <w1,x>*<X,w2> K^-1 dtheta = (int dV/(n+1))*<w1,w2>, all w1, w2";
const char* kIbpStatement =
    "int h^(p+1)*x dtheta = ((p+1)/(n+p+1))*int X*h^p dtheta";
const char* kIsotropicStatement =
    "int x x^T dV = (int dV/(n+1))*Id when h/K = h^p";
const char* kProbeStatement =
    "anisotropy of int x x^T h^(-(n+1)) dtheta (identity fails at p = -(n+1))";
const char* kDecompositionStatement =
    "int (|grad h|^2 - |grad ht|^2) dmu = int (|c|^2 - 2<c,x>h + <c,x>^2) dmu; "
    "with h/K = h^p: int |grad h|^2 dmu = int |grad ht|^2 dmu "
    "+ n*(n+1-p)/((n+1)*(n+1+p))*|c|^2*int dmu";
const char* kCentroaffineStatement = "int grad log(h^(n+2)/K) x^T dV = 0";

}  // namespace

double cap_fraction(int dim, double t) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("cap_fraction: dim must be 1 or 2");
    if (!(t > -1.0 && t < 1.0)) {
        throw std::invalid_argument("cap_fraction: threshold must lie in (-1, 1)");
    }
    // Fraction of |S^n| with <x, w> >= t: a circular arc for n = 1, a polar
    // cap with area 2*pi*(1 - t) for n = 2.
    if (dim == 1) return std::acos(t) / kPi;
    return 0.5 * (1.0 - t);
}

double cap_fraction_quadrature(const SphereGrid& grid, Vec3 w, double t) {
    const double wn = norm(w);
    if (wn <= 0.0) throw std::invalid_argument("cap_fraction_quadrature: zero direction");
    std::vector<double> indicator(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        indicator[i] = dot(grid.node(i), w) >= t * wn ? 1.0 : 0.0;
    }
    return grid.integrate(indicator) / grid.sphere_area();
}

StabilityConstants stability_constants(int dim) {
    StabilityConstants sc;
    sc.dim = dim;
    sc.cap_threshold = 0.5;
    sc.c1 = 0.5 * cap_fraction(dim, sc.cap_threshold);
    sc.gamma = 1.0 / (sc.c1 * std::sqrt(static_cast<double>(dim) + 1.0));
    return sc;
}

VerificationRecord check_key_inequality(const ConvexBody& body, const CheckTolerances& tol) {
    require_positive_support(body, "check_key_inequality");
    const auto& grid = *body.grid();
    const int n = body.dim();

    const ScalarField density = body.cone_volume_density();
    const AmbientVectorField X = body.boundary_map();
    const ScalarField h = body.support();
    const ScalarField lap = laplace_beltrami(body.coefficients(), body.grid());

    const std::size_t count = grid.node_count();
    std::vector<double> speed(count), dirichlet(count);
    for (std::size_t i = 0; i < count; ++i) {
        speed[i] = norm_squared(X.values[i]) * density.values[i];
        dirichlet[i] = h.values[i] * (lap.values[i] + n * h.values[i]) * density.values[i];
    }
    const double total = grid.integrate(density.values);
    std::vector<double> buf(count);
    Vec3 xmoment{};
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < count; ++i) buf[i] = X.values[i][k] * density.values[i];
        xmoment[k] = grid.integrate(buf);
    }

    const double lhs = n * grid.integrate(speed);
    const double rhs = grid.integrate(dirichlet) + n * norm_squared(xmoment) / total;

    auto rec = make_record("key_inequality", kKeyStatement, CheckKind::inequality);
    finish_inequality(rec, lhs, rhs, tol);
    rec.details.emplace_back("total_cone_volume", total);
    rec.details.emplace_back("centroid_norm", norm(xmoment) / total);
    return rec;
}

VerificationRecord check_basic_estimate(const ConvexBody& body, const CheckTolerances& tol) {
    require_positive_support(body, "check_basic_estimate");
    const auto& grid = *body.grid();
    const int n = body.dim();

    const ScalarField density = body.cone_volume_density();
    const double m = *std::min_element(density.values.begin(), density.values.end());
    const double M = *std::max_element(density.values.begin(), density.values.end());

    const Vec3 c = centroid(body);
    const ScalarField ht = centered_support(body);
    TangentField grad = body.support_gradient();
    subtract_linear_gradient(grid, c, grad);
    // (lap + n) annihilates <c, x>, so lap ht + n ht = lap h + n h exactly.
    const ScalarField lap = laplace_beltrami(body.coefficients(), body.grid());
    const ScalarField h = body.support();

    const std::size_t count = grid.node_count();
    std::vector<double> lhs_buf(count), rhs_buf(count);
    const std::vector<double> grad_sq = tangent_norm_squared(grad).values;
    for (std::size_t i = 0; i < count; ++i) {
        lhs_buf[i] = grad_sq[i] + ht.values[i] * ht.values[i];
        rhs_buf[i] = ht.values[i] * (lap.values[i] + n * h.values[i]);
    }
    const double lhs = n * grid.integrate(lhs_buf);
    const double rhs = (M / m) * grid.integrate(rhs_buf);

    auto rec = make_record("basic_estimate", kBasicStatement, CheckKind::inequality);
    finish_inequality(rec, lhs, rhs, tol);
    rec.details.emplace_back("density_max", M);
    rec.details.emplace_back("density_min", m);
    rec.details.emplace_back("density_ratio", M / m);
    return rec;
}

VerificationRecord check_poincare(const ConvexBody& body, const CheckTolerances& tol) {
    const auto& grid = *body.grid();
    const int n = body.dim();
    const double area = grid.sphere_area();

    const Vec3 c = centroid(body);
    const ScalarField ht = centered_support(body);
    TangentField grad = body.support_gradient();
    subtract_linear_gradient(grid, c, grad);

    const double mean = grid.integrate(ht.values) / area;
    std::vector<double> dev(grid.node_count());
    for (std::size_t i = 0; i < dev.size(); ++i) {
        const double u = ht.values[i] - mean;
        dev[i] = u * u;
    }
    const double lhs = n * grid.integrate(dev) / area;
    const double rhs = grid.integrate(tangent_norm_squared(grad).values) / area;

    auto rec = make_record("poincare", kPoincareStatement, CheckKind::inequality);
    finish_inequality(rec, lhs, rhs, tol);
    rec.details.emplace_back("mean_centered_support", mean);
    return rec;
}

VerificationRecord check_stability_bound(const ConvexBody& body, const CheckTolerances& tol) {
    require_positive_support(body, "check_stability_bound");
    const BodySummary summary = summarize(body);
    const double eps = summary.density_ratio_minus_one;

    const ConvexBody normalized = normalize(body);
    const ConvexBody ball = make_ball(body.grid(), 1.0);
    const double d2 = delta2(normalized, ball);

    const StabilityConstants sc = stability_constants(body.dim());
    const double rhs = sc.gamma * std::sqrt(eps);

    auto rec = make_record("stability_bound", kStabilityStatement, CheckKind::inequality);
    finish_inequality(rec, d2, rhs, tol);
    rec.details.emplace_back("epsilon", eps);
    rec.details.emplace_back("c1", sc.c1);
    rec.details.emplace_back("gamma", sc.gamma);
    rec.details.emplace_back("tightness", rhs > 0.0 ? d2 / rhs : 0.0);
    return rec;
}

VerificationRecord check_hausdorff_comparison(const ConvexBody& a, const ConvexBody& b,
                                              const CheckTolerances& tol) {
    const int n = a.dim();
    const double d2 = delta2(a, b);
    const double dh = delta_hausdorff(a, b);
    const double diam = diameter_union(a, b);

    auto rec = make_record("hausdorff_vs_ball", kHausdorffStatement, CheckKind::inequality);
    if (dh <= kCoincidenceGap) {
        rec.status = CheckStatus::skipped;
        rec.pass = true;
        rec.tolerance = tol.inequality;
        rec.note = "bodies coincide on the grid; ratio undefined";
        rec.details.emplace_back("deltaH", dh);
        return rec;
    }
    const double alpha_hat =
        d2 * d2 * std::pow(diam, n) / std::pow(dh, n + 2);
    finish_inequality(rec, 0.0, alpha_hat, tol);
    rec.details.emplace_back("alpha_hat", alpha_hat);
    rec.details.emplace_back("delta2", d2);
    rec.details.emplace_back("deltaH", dh);
    rec.details.emplace_back("diam_union", diam);
    return rec;
}

VerificationRecord check_diameter_chain(const ConvexBody& body, double eps,
                                        const CheckTolerances& tol) {
    require_positive_support(body, "check_diameter_chain");
    const auto& grid = *body.grid();
    const int n = body.dim();

    const ScalarField density = body.cone_volume_density();
    const double m = *std::min_element(density.values.begin(), density.values.end());
    const double M = *std::max_element(density.values.begin(), density.values.end());
    // Round-off only; the density band itself is the hypothesis, not tunable.
    const double band_slop = 1e-12;
    if (m < 1.0 - eps - band_slop || M > 1.0 + eps + band_slop) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "check_diameter_chain: density range [%.6g, %.6g] outside [%g, %g]",
                      m, M, 1.0 - eps, 1.0 + eps);
        throw std::domain_error(buf);
    }

    const StabilityConstants sc = stability_constants(n);
    const ConvexBody normalized = normalize(body);
    const double max_hbar =
        *std::max_element(normalized.support().values.begin(), normalized.support().values.end());

    const ScalarField ht = centered_support(body);
    const double max_ht = *std::max_element(ht.values.begin(), ht.values.end());
    const double min_ht = *std::min_element(ht.values.begin(), ht.values.end());
    const double vol = volume(body);
    const double area = grid.sphere_area();

    const ConvexBody ball = make_ball(body.grid(), 1.0);
    const double dh = delta_hausdorff(normalized, ball);

    const double link_ceiling = 1.0 / sc.c1 - max_hbar;
    const double link_contain = std::pow(max_ht, n + 1) * area - (n + 1) * vol;
    const double link_mass = (n + 1) * vol - (1.0 - eps) * area;
    const double link_pinch = min_ht - max_ht * (1.0 - dh) / (1.0 + dh);
    const double link_inradius = min_ht;

    const double worst = std::min({link_ceiling, link_contain, link_mass,
                                   link_pinch, link_inradius});

    auto rec = make_record("diameter_chain", kChainStatement, CheckKind::inequality);
    rec.lhs = max_hbar;
    rec.rhs = 1.0 / sc.c1;
    rec.slack = worst;
    rec.tolerance = tol.inequality;
    rec.pass = worst >= -tol.inequality;
    rec.details.emplace_back("eps", eps);
    rec.details.emplace_back("link_support_ceiling", link_ceiling);
    rec.details.emplace_back("link_ball_containment", link_contain);
    rec.details.emplace_back("link_mass_floor", link_mass);
    rec.details.emplace_back("link_minmax_pinch", link_pinch);
    rec.details.emplace_back("link_inradius", link_inradius);
    rec.details.emplace_back("hausdorff_to_ball", dh);
    rec.details.emplace_back("max_centered_support", max_ht);
    rec.details.emplace_back("min_centered_support", min_ht);
    return rec;
}

VerificationRecord check_divergence_identity(const ConvexBody& body, Vec3 w1, Vec3 w2,
                                             const CheckTolerances& tol) {
    require_positive_support(body, "check_divergence_identity");
    const auto& grid = *body.grid();
    const int n = body.dim();
    const int ambient = grid.ambient_dim();

    const std::vector<double>& det = body.curvature_determinant();
    const AmbientVectorField X = body.boundary_map();
    const ScalarField density = body.cone_volume_density();
    const double total = grid.integrate(density.values);
    const double scale = total / (n + 1);

    const Mat3 moment = integrate_outer_moment(grid, det, X.values, grid_nodes(grid));
    Mat3 deviation = moment;
    for (int k = 0; k < ambient; ++k) deviation.m[3 * k + k] -= scale;
    const double matrix_residual = max_abs_entry(deviation, ambient) / scale;

    // <w2, moment * w1> = int <w1,x><X,w2> K^-1 dtheta.
    const double lhs = dot(w2, moment * w1);
    const double rhs = scale * dot(w1, w2);
    const double residual = std::max(std::abs(lhs - rhs) / scale, matrix_residual);

    auto rec = make_record("divergence_identity", kDivergenceStatement, CheckKind::identity);
    finish_identity(rec, lhs, rhs, residual, tol);
    rec.details.emplace_back("matrix_residual", matrix_residual);
    rec.details.emplace_back("total_cone_volume", total);
    return rec;
}

VerificationRecord check_ibp_identity(const ScalarField& h, double p,
                                      const CheckTolerances& tol) {
    const auto& grid = *h.grid;
    const int n = grid.dim();
    if (!(p > -(n + 1.0))) {
        throw std::invalid_argument("check_ibp_identity: requires p > -(n+1)");
    }
    const double hmin = *std::min_element(h.values.begin(), h.values.end());
    if (hmin <= 0.0) {
        throw std::domain_error("check_ibp_identity: field must be positive");
    }

    const HarmonicCoeffs coeffs = analyze(h, grid.max_degree());
    const double proj = projection_residual(h, grid.max_degree());
    const TangentField grad_field = gradient(coeffs, h.grid);
    const AmbientVectorField grad_ambient = to_ambient(grad_field);

    const std::size_t count = grid.node_count();
    std::vector<double> hp(count), hp1(count);
    for (std::size_t i = 0; i < count; ++i) {
        hp[i] = std::pow(h.values[i], p);
        hp1[i] = hp[i] * h.values[i];
    }
    const Vec3 lhs_vec = integrate_vector_moment(grid, hp1);

    std::vector<double> buf(count);
    Vec3 rhs_vec{};
    for (int k = 0; k < 3; ++k) {
        for (std::size_t i = 0; i < count; ++i) {
            const double xk = grid.node(i)[k];
            buf[i] = (grad_ambient.values[i][k] + h.values[i] * xk) * hp[i];
        }
        rhs_vec[k] = grid.integrate(buf);
    }
    rhs_vec = ((p + 1.0) / (n + p + 1.0)) * rhs_vec;

    const double scale = grid.integrate(hp1);
    double residual = 0.0;
    for (int k = 0; k < grid.ambient_dim(); ++k) {
        residual = std::max(residual, std::abs(lhs_vec[k] - rhs_vec[k]) / scale);
    }

    auto rec = make_record("ibp[p=" + format_exponent(p) + "]", kIbpStatement,
                           CheckKind::identity);
    finish_identity(rec, norm(lhs_vec), norm(rhs_vec), residual, tol);
    rec.details.emplace_back("p", p);
    rec.details.emplace_back("projection_residual", proj);
    rec.details.emplace_back("moment_scale", scale);
    return rec;
}

VerificationRecord check_isotropic_identity(const ConvexBody& body, double p,
                                            const CheckTolerances& tol) {
    const int n = body.dim();
    if (p == -(n + 1.0)) {
        throw std::invalid_argument(
            "check_isotropic_identity: p = -(n+1) is excluded; use probe_excluded_exponent");
    }
    require_positive_support(body, "check_isotropic_identity");
    const auto& grid = *body.grid();
    const int ambient = grid.ambient_dim();

    const ScalarField density = body.cone_volume_density();
    const ScalarField h = body.support();
    double mismatch = 0.0, hp_max = 0.0;
    std::vector<double> hp(grid.node_count());
    for (std::size_t i = 0; i < hp.size(); ++i) {
        hp[i] = std::pow(h.values[i], p);
        hp_max = std::max(hp_max, hp[i]);
        mismatch = std::max(mismatch, std::abs(density.values[i] - hp[i]));
    }
    mismatch /= hp_max;

    const double total = grid.integrate(density.values);
    const double scale = total / (n + 1);
    const auto nodes = grid_nodes(grid);
    Mat3 moment = integrate_outer_moment(grid, density.values, nodes, nodes);
    for (int k = 0; k < ambient; ++k) moment.m[3 * k + k] -= scale;
    const double residual = max_abs_entry(moment, ambient) / scale;

    auto rec = make_record("isotropic[p=" + format_exponent(p) + "]", kIsotropicStatement,
                           CheckKind::identity);
    finish_identity(rec, residual, 0.0, residual, tol);
    rec.details.emplace_back("p", p);
    rec.details.emplace_back("hypothesis_mismatch", mismatch);
    rec.details.emplace_back("total_cone_volume", total);
    if (mismatch > tol.hypothesis) {
        rec.status = CheckStatus::hypothesis_violated;
        rec.pass = true;  // no claim is made, so the record cannot fail
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "self-similarity mismatch %.3g exceeds %.3g; isotropy not asserted",
                      mismatch, tol.hypothesis);
        rec.note = buf;
    }
    return rec;
}

VerificationRecord probe_excluded_exponent(const ConvexBody& body,
                                           const CheckTolerances& tol) {
    require_positive_support(body, "probe_excluded_exponent");
    const auto& grid = *body.grid();
    const int n = body.dim();
    const int ambient = grid.ambient_dim();

    const ScalarField h = body.support();
    std::vector<double> w(grid.node_count());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::pow(h.values[i], -(n + 1.0));
    }
    const double total = grid.integrate(w);
    const double scale = total / (n + 1);

    const auto nodes = grid_nodes(grid);
    Mat3 moment = integrate_outer_moment(grid, w, nodes, nodes);
    for (int k = 0; k < ambient; ++k) moment.m[3 * k + k] -= scale;
    const double anisotropy = max_abs_entry(moment, ambient) / scale;

    auto rec = make_record("excluded_exponent_probe", kProbeStatement, CheckKind::identity);
    rec.status = CheckStatus::informational;
    rec.lhs = anisotropy;
    rec.rhs = 0.0;
    rec.slack = anisotropy;
    rec.tolerance = tol.identity;
    rec.pass = true;
    rec.details.emplace_back("anisotropy", anisotropy);
    rec.details.emplace_back("total_mass", total);
    return rec;
}

VerificationRecord check_centroid_decomposition(const ConvexBody& body, double p,
                                                const CheckTolerances& tol) {
    const int n = body.dim();
    if (p == -(n + 1.0)) {
        throw std::invalid_argument(
            "check_centroid_decomposition: coefficient undefined at p = -(n+1)");
    }
    require_positive_support(body, "check_centroid_decomposition");
    const auto& grid = *body.grid();

    const ScalarField h = body.support();
    const ScalarField density = body.cone_volume_density();
    const std::size_t count = grid.node_count();
    std::vector<double> mu(count);
    double hp_max = 0.0, mismatch = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mu[i] = std::pow(h.values[i], p);
        hp_max = std::max(hp_max, mu[i]);
        mismatch = std::max(mismatch, std::abs(density.values[i] - mu[i]));
    }
    mismatch /= hp_max;
    const double total = grid.integrate(mu);

    // Barycenter of the measure mu through the boundary map.
    const AmbientVectorField X = body.boundary_map();
    Vec3 c{};
    {
        std::vector<double> buf(count);
        for (int k = 0; k < 3; ++k) {
            for (std::size_t i = 0; i < count; ++i) buf[i] = X.values[i][k] * mu[i];
            c[k] = grid.integrate(buf) / total;
        }
    }

    TangentField grad = body.support_gradient();
    const std::vector<double> grad_sq = tangent_norm_squared(grad).values;
    subtract_linear_gradient(grid, c, grad);
    const std::vector<double> grad_centered_sq = tangent_norm_squared(grad).values;

    std::vector<double> lhs_buf(count), rhs_buf(count), full_buf(count), centered_buf(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double cx = dot(c, grid.node(i));
        lhs_buf[i] = (grad_sq[i] - grad_centered_sq[i]) * mu[i];
        rhs_buf[i] = (norm_squared(c) - 2.0 * cx * h.values[i] + cx * cx) * mu[i];
        full_buf[i] = grad_sq[i] * mu[i];
        centered_buf[i] = grad_centered_sq[i] * mu[i];
    }
    const double lhs_a = grid.integrate(lhs_buf);
    const double rhs_a = grid.integrate(rhs_buf);
    const double scale_a = std::max({std::abs(lhs_a), std::abs(rhs_a), total});
    const double residual_a = std::abs(lhs_a - rhs_a) / scale_a;

    const double coef = n * (n + 1.0 - p) / ((n + 1.0) * (n + 1.0 + p));
    const double lhs_b = grid.integrate(full_buf);
    const double rhs_b = grid.integrate(centered_buf) + coef * norm_squared(c) * total;
    const double scale_b = std::max({std::abs(lhs_b), std::abs(rhs_b), total});
    const double residual_b = std::abs(lhs_b - rhs_b) / scale_b;

    const bool hypothesis_ok = mismatch <= tol.hypothesis;
    const double residual = hypothesis_ok ? std::max(residual_a, residual_b) : residual_a;

    auto rec = make_record("centroid_decomposition[p=" + format_exponent(p) + "]",
                           kDecompositionStatement, CheckKind::identity);
    finish_identity(rec, lhs_a, rhs_a, residual, tol);
    rec.details.emplace_back("p", p);
    rec.details.emplace_back("hypothesis_mismatch", mismatch);
    rec.details.emplace_back("barycenter_norm", norm(c));
    rec.details.emplace_back("algebraic_residual", residual_a);
    rec.details.emplace_back("coefficient_residual", residual_b);
    if (!hypothesis_ok) {
        char buf[112];
        std::snprintf(buf, sizeof(buf),
                      "coefficient form not asserted: self-similarity mismatch %.3g > %.3g",
                      mismatch, tol.hypothesis);
        rec.note = buf;
    }
    return rec;
}

VerificationRecord check_centroaffine_identity(const ConvexBody& body,
                                               const CheckTolerances& tol) {
    require_positive_support(body, "check_centroaffine_identity");
    const auto& grid = *body.grid();
    const int n = body.dim();
    const int ambient = grid.ambient_dim();

    const ScalarField h = body.support();
    const std::vector<double>& det = body.curvature_determinant();
    std::vector<double> g(grid.node_count());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = (n + 2.0) * std::log(h.values[i]) + std::log(det[i]);
    }
    const ScalarField g_field = make_scalar_field(body.grid(), std::move(g));
    const HarmonicCoeffs g_coeffs = analyze(g_field, grid.max_degree());
    const double proj = projection_residual(g_field, grid.max_degree());
    const AmbientVectorField grad_g = to_ambient(gradient(g_coeffs, body.grid()));

    const ScalarField density = body.cone_volume_density();
    const double total = grid.integrate(density.values);
    const Mat3 moment =
        integrate_outer_moment(grid, density.values, grad_g.values, grid_nodes(grid));
    const double residual = max_abs_entry(moment, ambient) / total;

    auto rec = make_record("centroaffine_identity", kCentroaffineStatement,
                           CheckKind::identity);
    // log(h^{n+2} det) is generally not band-limited, so the discrete moment
    // inherits the projection tail of that field. Across the body families the
    // truncation-limited residual stays below ~0.03x the tail, while a genuine
    // violation of the identity is O(1), so gating at 0.1x the tail separates
    // the two. The slack keeps the raw residual so refinement studies see it
    // decay toward zero.
    const double effective = std::max(tol.identity, 0.1 * proj);
    rec.lhs = residual;
    rec.rhs = 0.0;
    rec.slack = residual;
    rec.tolerance = effective;
    rec.pass = residual <= effective;
    if (effective > tol.identity) {
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "tolerance widened to %.3g by the log-density band-limit tail %.3g",
                      effective, proj);
        rec.note = buf;
    }
    rec.details.emplace_back("projection_residual", proj);
    rec.details.emplace_back("total_cone_volume", total);
    return rec;
}

std::vector<double> standard_exponents(int dim) {
    if (dim == 1) return {-1.5, -0.5, 0.5, 2.0};
    return {-2.5, -1.5, -0.5, 0.5, 2.0};
}

std::vector<VerificationRecord> run_standard_checks(const ConvexBody& body,
                                                    const CheckTolerances& tol) {
    std::vector<VerificationRecord> records;
    records.push_back(check_key_inequality(body, tol));
    records.push_back(check_basic_estimate(body, tol));
    records.push_back(check_poincare(body, tol));
    records.push_back(check_stability_bound(body, tol));
    records.push_back(check_divergence_identity(body, Vec3{1, 0, 0}, Vec3{0, 1, 0}, tol));
    for (double p : standard_exponents(body.dim())) {
        records.push_back(check_ibp_identity(body.support(), p, tol));
    }
    for (double p : standard_exponents(body.dim())) {
        records.push_back(check_centroid_decomposition(body, p, tol));
    }
    records.push_back(check_centroaffine_identity(body, tol));
    records.push_back(check_isotropic_identity(body, 1.0, tol));

    // The chain needs density inside [1-eps, 1+eps]; report out-of-band
    // bodies as skipped so every body yields the same record list.
    const double chain_eps = 0.2;
    const ScalarField density = body.cone_volume_density();
    const double m = *std::min_element(density.values.begin(), density.values.end());
    const double M = *std::max_element(density.values.begin(), density.values.end());
    if (m >= 1.0 - chain_eps && M <= 1.0 + chain_eps) {
        records.push_back(check_diameter_chain(body, chain_eps, tol));
    } else {
        auto rec = make_record("diameter_chain", kChainStatement, CheckKind::inequality);
        rec.status = CheckStatus::skipped;
        rec.pass = true;
        rec.tolerance = tol.inequality;
        char buf[112];
        std::snprintf(buf, sizeof(buf),
                      "density range [%.6g, %.6g] outside [%g, %g]", m, M,
                      1.0 - chain_eps, 1.0 + chain_eps);
        rec.note = buf;
        rec.details.emplace_back("eps", chain_eps);
        records.push_back(rec);
    }

    records.push_back(check_hausdorff_comparison(body, make_ball(body.grid(), 1.0), tol));
    return records;
}

}  // namespace spherecalc
