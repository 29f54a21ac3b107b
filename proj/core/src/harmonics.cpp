#include "spherecalc/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spherecalc {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

void require_coeffs_match(const HarmonicCoeffs& c, const GridPtr& grid, const char* where) {
    if (!grid) throw std::invalid_argument(std::string(where) + ": missing grid");
    if (c.dim != grid->dim())
        throw std::invalid_argument(std::string(where) + ": coefficient dimension " +
                                    std::to_string(c.dim) + " does not match grid dimension " +
                                    std::to_string(grid->dim()));
    if (c.degree > grid->max_degree())
        throw std::invalid_argument(std::string(where) + ": degree " + std::to_string(c.degree) +
                                    " exceeds grid capacity " +
                                    std::to_string(grid->max_degree()));
    if (c.values.size() != basis_size(c.dim, c.degree))
        throw std::invalid_argument(std::string(where) + ": coefficient count mismatch");
}

// Latitude-major staging buffers for the separable S^2 transform: one pair of
// (cos, sin) partial sums per order m and latitude.
struct StagedOrders {
    int degree;
    int nlat;
    std::vector<double> c;  // [m * nlat + i]
    std::vector<double> s;

    StagedOrders(int degree_, int nlat_)
        : degree(degree_), nlat(nlat_),
          c(static_cast<std::size_t>(degree_ + 1) * nlat_, 0.0),
          s(static_cast<std::size_t>(degree_ + 1) * nlat_, 0.0) {}

    double* cos_row(int m) { return c.data() + static_cast<std::size_t>(m) * nlat; }
    double* sin_row(int m) { return s.data() + static_cast<std::size_t>(m) * nlat; }
};

// Contract coefficients against a Legendre table (value or derivative level).
void stage_from_coeffs(const HarmonicCoeffs& coef, const SphereGrid& grid,
                       const std::vector<std::vector<double>>& table, StagedOrders& st) {
    const int L = coef.degree;
    const int nlat = grid.latitudes();
    for (int m = 0; m <= L; ++m) {
        const std::size_t width = static_cast<std::size_t>(grid.max_degree() - m + 1);
        const double scale = (m == 0) ? 1.0 : kSqrt2;
        double* cr = st.cos_row(m);
        double* sr = st.sin_row(m);
        for (int i = 0; i < nlat; ++i) {
            const double* row = table[m].data() + static_cast<std::size_t>(i) * width;
            double ac = 0.0, as = 0.0;
            for (int l = std::max(m, 0); l <= L; ++l) {
                const double p = row[l - m];
                ac += coef.values[sphere_index(l, m)] * p;
                if (m > 0) as += coef.values[sphere_index(l, -m)] * p;
            }
            cr[i] = scale * ac;
            sr[i] = scale * as;
        }
    }
}

enum class AzimuthMode { plain, first_derivative, second_derivative };

// Expand staged orders onto the grid, optionally applying d/dphi factors.
void expand_azimuth(const SphereGrid& grid, StagedOrders& st, AzimuthMode mode,
                    std::vector<double>& out) {
    const int nlat = grid.latitudes();
    const int nlon = grid.longitudes();
    const auto& tables = grid.tables();
    out.assign(static_cast<std::size_t>(nlat) * nlon, 0.0);
    for (int m = 0; m <= st.degree; ++m) {
        const double* cr = st.cos_row(m);
        const double* sr = st.sin_row(m);
        const double* cm = tables.cos_m[m].data();
        const double* sm = tables.sin_m[m].data();
        for (int i = 0; i < nlat; ++i) {
            double a = cr[i];
            double b = sr[i];
            if (mode == AzimuthMode::first_derivative) {
                // d/dphi swaps cos <-> sin with factors -m, +m.
                const double na = m * b;
                const double nb = -m * a;
                a = na;
                b = nb;
            } else if (mode == AzimuthMode::second_derivative) {
                a *= -static_cast<double>(m) * m;
                b *= -static_cast<double>(m) * m;
            }
            if (a == 0.0 && b == 0.0) continue;
            double* row = out.data() + static_cast<std::size_t>(i) * nlon;
            for (int j = 0; j < nlon; ++j) row[j] += a * cm[j] + b * sm[j];
        }
    }
}

void synthesize_sphere_level(const HarmonicCoeffs& c, const SphereGrid& grid,
                             const std::vector<std::vector<double>>& table, AzimuthMode mode,
                             std::vector<double>& out) {
    StagedOrders st(c.degree, grid.latitudes());
    stage_from_coeffs(c, grid, table, st);
    expand_azimuth(grid, st, mode, out);
}

// Normalized associated Legendre values at a single colatitude, packed per
// order: values[m] spans degrees l = m..L.
std::vector<std::vector<double>> legendre_point(int L, double theta) {
    std::vector<std::vector<double>> val(L + 1);
    for (int m = 0; m <= L; ++m) val[m].assign(L - m + 1, 0.0);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    double diag = 1.0 / std::sqrt(4.0 * kPi);
    for (int m = 0; m <= L; ++m) {
        val[m][0] = diag;
        if (m + 1 <= L) val[m][1] = std::sqrt(2.0 * m + 3.0) * c * diag;
        for (int l = m + 2; l <= L; ++l) {
            const double a = std::sqrt(((2.0 * l - 1.0) * (2.0 * l + 1.0)) /
                                       (static_cast<double>(l - m) * (l + m)));
            const double b = std::sqrt(((2.0 * l + 1.0) * (l + m - 1.0) * (l - m - 1.0)) /
                                       (static_cast<double>(l - m) * (l + m) * (2.0 * l - 3.0)));
            val[m][l - m] = a * c * val[m][l - m - 1] - b * val[m][l - m - 2];
        }
        if (m + 1 <= L) diag *= std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0)) * s;
    }
    return val;
}

}  // namespace

std::size_t basis_size(int dim, int degree) {
    if (degree < 0) throw std::invalid_argument("basis_size: negative degree");
    if (dim == 1) return static_cast<std::size_t>(2 * degree + 1);
    if (dim == 2) return static_cast<std::size_t>(degree + 1) * (degree + 1);
    throw std::invalid_argument("basis_size: sphere dimension must be 1 or 2");
}

std::size_t sphere_index(int l, int m) {
    return static_cast<std::size_t>(l) * l + static_cast<std::size_t>(l + m);
}

std::size_t circle_index(int m, int sign) {
    if (m == 0) return 0;
    return static_cast<std::size_t>(2 * m - (sign > 0 ? 1 : 0));
}

int degree_of_index(int dim, std::size_t k) {
    if (dim == 1) return static_cast<int>((k + 1) / 2);
    int l = static_cast<int>(std::sqrt(static_cast<double>(k)));
    while (static_cast<std::size_t>(l + 1) * (l + 1) <= k) ++l;
    while (static_cast<std::size_t>(l) * l > k) --l;
    return l;
}

HarmonicCoeffs zero_coeffs(int dim, int degree) {
    return HarmonicCoeffs{dim, degree, std::vector<double>(basis_size(dim, degree), 0.0)};
}

HarmonicCoeffs analyze(const ScalarField& f, int degree) {
    if (!f.grid) throw std::invalid_argument("analyze: missing grid");
    const SphereGrid& grid = *f.grid;
    if (degree > grid.max_degree())
        throw std::invalid_argument("analyze: degree " + std::to_string(degree) +
                                    " exceeds grid capacity " +
                                    std::to_string(grid.max_degree()));
    if (f.values.size() != grid.node_count())
        throw std::invalid_argument("analyze: field size does not match grid");

    HarmonicCoeffs out = zero_coeffs(grid.dim(), degree);
    const auto& tables = grid.tables();

    if (grid.dim() == 1) {
        const std::size_t n = grid.node_count();
        const double w = 2.0 * kPi / static_cast<double>(n);
        const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        std::vector<double> buf(n);
        for (std::size_t j = 0; j < n; ++j) buf[j] = f.values[j] * w * inv_sqrt_2pi;
        out.values[0] = pairwise_sum(buf);
        for (int m = 1; m <= degree; ++m) {
            for (std::size_t j = 0; j < n; ++j)
                buf[j] = f.values[j] * tables.cos_m[m][j] * w * inv_sqrt_pi;
            out.values[circle_index(m, +1)] = pairwise_sum(buf);
            for (std::size_t j = 0; j < n; ++j)
                buf[j] = f.values[j] * tables.sin_m[m][j] * w * inv_sqrt_pi;
            out.values[circle_index(m, -1)] = pairwise_sum(buf);
        }
        return out;
    }

    const int nlat = grid.latitudes();
    const int nlon = grid.longitudes();
    const double lon_w = 2.0 * kPi / nlon;

    // Azimuthal projections per order, then Gauss-Legendre contraction.
    StagedOrders st(degree, nlat);
    std::vector<double> buf(nlon);
    for (int i = 0; i < nlat; ++i) {
        const double* row = f.values.data() + static_cast<std::size_t>(i) * nlon;
        for (int m = 0; m <= degree; ++m) {
            const double* cm = tables.cos_m[m].data();
            const double* sm = tables.sin_m[m].data();
            for (int j = 0; j < nlon; ++j) buf[j] = row[j] * cm[j];
            st.cos_row(m)[i] = lon_w * pairwise_sum(buf);
            if (m > 0) {
                for (int j = 0; j < nlon; ++j) buf[j] = row[j] * sm[j];
                st.sin_row(m)[i] = lon_w * pairwise_sum(buf);
            }
        }
    }

    std::vector<double> acc(nlat);
    for (int m = 0; m <= degree; ++m) {
        const std::size_t width = static_cast<std::size_t>(grid.max_degree() - m + 1);
        const double scale = (m == 0) ? 1.0 : kSqrt2;
        for (int l = m; l <= degree; ++l) {
            for (int i = 0; i < nlat; ++i)
                acc[i] = grid.latitude_weight(i) *
                         tables.legendre[m][static_cast<std::size_t>(i) * width + (l - m)] *
                         st.cos_row(m)[i];
            out.values[sphere_index(l, m)] = scale * pairwise_sum(acc);
            if (m > 0) {
                for (int i = 0; i < nlat; ++i)
                    acc[i] = grid.latitude_weight(i) *
                             tables.legendre[m][static_cast<std::size_t>(i) * width + (l - m)] *
                             st.sin_row(m)[i];
                out.values[sphere_index(l, -m)] = scale * pairwise_sum(acc);
            }
        }
    }
    return out;
}

ScalarField synthesize(const HarmonicCoeffs& c, const GridPtr& grid) {
    require_coeffs_match(c, grid, "synthesize");
    const auto& tables = grid->tables();
    std::vector<double> out;

    if (c.dim == 1) {
        const std::size_t n = grid->node_count();
        out.assign(n, 0.0);
        const double a0 = c.values[0] / std::sqrt(2.0 * kPi);
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        for (std::size_t j = 0; j < n; ++j) out[j] = a0;
        for (int m = 1; m <= c.degree; ++m) {
            const double ac = c.values[circle_index(m, +1)] * inv_sqrt_pi;
            const double as = c.values[circle_index(m, -1)] * inv_sqrt_pi;
            for (std::size_t j = 0; j < n; ++j)
                out[j] += ac * tables.cos_m[m][j] + as * tables.sin_m[m][j];
        }
        return ScalarField{grid, std::move(out)};
    }

    synthesize_sphere_level(c, *grid, tables.legendre, AzimuthMode::plain, out);
    return ScalarField{grid, std::move(out)};
}

double projection_residual(const ScalarField& f, int degree) {
    const ScalarField back = synthesize(analyze(f, degree), f.grid);
    double scale = 1.0, err = 0.0;
    for (double v : f.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(back.values[i] - f.values[i]));
    return err / scale;
}

double point_evaluate(const HarmonicCoeffs& c, Vec3 point) {
    const double r = norm(point);
    if (r <= 0.0) throw std::invalid_argument("point_evaluate: zero direction");
    point = point / r;

    if (c.dim == 1) {
        const double a = std::atan2(point.y, point.x);
        double out = c.values[0] / std::sqrt(2.0 * kPi);
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        for (int m = 1; m <= c.degree; ++m)
            out += (c.values[circle_index(m, +1)] * std::cos(m * a) +
                    c.values[circle_index(m, -1)] * std::sin(m * a)) *
                   inv_sqrt_pi;
        return out;
    }

    const double theta = std::acos(std::clamp(point.z, -1.0, 1.0));
    const double phi = std::atan2(point.y, point.x);
    const auto val = legendre_point(c.degree, theta);
    double out = 0.0;
    for (int l = 0; l <= c.degree; ++l) out += c.values[sphere_index(l, 0)] * val[0][l];
    for (int m = 1; m <= c.degree; ++m) {
        const double cm = std::cos(m * phi);
        const double sm = std::sin(m * phi);
        for (int l = m; l <= c.degree; ++l) {
            const double p = kSqrt2 * val[m][l - m];
            out += p * (c.values[sphere_index(l, m)] * cm + c.values[sphere_index(l, -m)] * sm);
        }
    }
    return out;
}

JetSynthesis synthesize_jet(const HarmonicCoeffs& c, const GridPtr& grid) {
    require_coeffs_match(c, grid, "synthesize_jet");
    JetSynthesis jet;
    const auto& tables = grid->tables();

    if (c.dim == 1) {
        const std::size_t n = grid->node_count();
        jet.value.assign(n, c.values[0] / std::sqrt(2.0 * kPi));
        jet.d1.assign(n, 0.0);
        jet.d11.assign(n, 0.0);
        const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
        for (int m = 1; m <= c.degree; ++m) {
            const double ac = c.values[circle_index(m, +1)] * inv_sqrt_pi;
            const double as = c.values[circle_index(m, -1)] * inv_sqrt_pi;
            for (std::size_t j = 0; j < n; ++j) {
                const double cm = tables.cos_m[m][j];
                const double sm = tables.sin_m[m][j];
                jet.value[j] += ac * cm + as * sm;
                jet.d1[j] += m * (-ac * sm + as * cm);
                jet.d11[j] += -static_cast<double>(m) * m * (ac * cm + as * sm);
            }
        }
        return jet;
    }

    StagedOrders v(c.degree, grid->latitudes());
    StagedOrders d1(c.degree, grid->latitudes());
    StagedOrders d2(c.degree, grid->latitudes());
    stage_from_coeffs(c, *grid, tables.legendre, v);
    stage_from_coeffs(c, *grid, tables.legendre_d1, d1);
    stage_from_coeffs(c, *grid, tables.legendre_d2, d2);

    expand_azimuth(*grid, v, AzimuthMode::plain, jet.value);
    expand_azimuth(*grid, d1, AzimuthMode::plain, jet.d1);
    expand_azimuth(*grid, v, AzimuthMode::first_derivative, jet.d2);
    expand_azimuth(*grid, d2, AzimuthMode::plain, jet.d11);
    expand_azimuth(*grid, d1, AzimuthMode::first_derivative, jet.d12);
    expand_azimuth(*grid, v, AzimuthMode::second_derivative, jet.d22);
    return jet;
}

TangentField gradient(const HarmonicCoeffs& c, const GridPtr& grid) {
    const JetSynthesis jet = synthesize_jet(c, grid);
    TangentField out{grid, jet.d1, {}, 0.0};
    if (c.dim == 2) {
        const int nlon = grid->longitudes();
        out.comp_phi.assign(grid->node_count(), 0.0);
        for (std::size_t i = 0; i < grid->node_count(); ++i)
            out.comp_phi[i] = jet.d2[i] / grid->sin_theta(static_cast<int>(i) / nlon);
    }
    return out;
}

SymTensorField covariant_hessian(const HarmonicCoeffs& c, const GridPtr& grid) {
    const JetSynthesis jet = synthesize_jet(c, grid);
    SymTensorField out{grid, std::vector<SymMat2>(grid->node_count()), 0.0};
    if (c.dim == 1) {
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i].tt = jet.d11[i];
        return out;
    }
    const int nlon = grid->longitudes();
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const int lat = static_cast<int>(i) / nlon;
        const double inv_sin = 1.0 / grid->sin_theta(lat);
        const double cot = grid->cot_theta(lat);
        SymMat2& h = out.values[i];
        h.tt = jet.d11[i];
        h.tp = inv_sin * (jet.d12[i] - cot * jet.d2[i]);
        h.pp = inv_sin * inv_sin * jet.d22[i] + cot * jet.d1[i];
    }
    return out;
}

ScalarField laplace_beltrami(const HarmonicCoeffs& c, const GridPtr& grid) {
    require_coeffs_match(c, grid, "laplace_beltrami");
    HarmonicCoeffs scaled = c;
    for (std::size_t k = 0; k < scaled.values.size(); ++k) {
        const int l = degree_of_index(c.dim, k);
        scaled.values[k] *= -static_cast<double>(l) * (l + c.dim - 1);
    }
    return synthesize(scaled, grid);
}

TangentField gradient(const ScalarField& f) {
    if (!f.grid) throw std::invalid_argument("gradient: missing grid");
    const int L = f.grid->max_degree();
    TangentField out = gradient(analyze(f, L), f.grid);
    out.projection_residual = projection_residual(f, L);
    return out;
}

SymTensorField covariant_hessian(const ScalarField& f) {
    if (!f.grid) throw std::invalid_argument("covariant_hessian: missing grid");
    const int L = f.grid->max_degree();
    SymTensorField out = covariant_hessian(analyze(f, L), f.grid);
    out.projection_residual = projection_residual(f, L);
    return out;
}

ScalarField laplace_beltrami(const ScalarField& f) {
    if (!f.grid) throw std::invalid_argument("laplace_beltrami: missing grid");
    const int L = f.grid->max_degree();
    ScalarField out = laplace_beltrami(analyze(f, L), f.grid);
    out.projection_residual = projection_residual(f, L);
    return out;
}

}  // namespace spherecalc
