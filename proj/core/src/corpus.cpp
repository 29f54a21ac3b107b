#include "spherecalc/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "spherecalc/harmonics.hpp"

namespace spherecalc {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

std::string entry_id(const char* family, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%03zu", family, index);
    return buf;
}

Vec3 random_direction(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    if (dim == 1) {
        const double a = angle(rng);
        return {std::cos(a), std::sin(a), 0.0};
    }
    std::uniform_real_distribution<double> height(-1.0, 1.0);
    const double z = height(rng);
    const double a = angle(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(a), s * std::sin(a), z};
}

// Largest scale below `hi` at which the perturbed coefficients stay convex,
// by bisecting the margin to its zero crossing.  margin(0) = 1 (unit ball).
double critical_scale(const GridPtr& grid, const HarmonicCoeffs& ball,
                      const HarmonicCoeffs& bump) {
    auto margin_at = [&](double s) {
        HarmonicCoeffs c = ball;
        for (std::size_t k = 0; k < c.values.size(); ++k) c.values[k] += s * bump.values[k];
        return convexity_margin_of(grid, c);
    };
    double lo = 0.0, hi = 1.0;
    int expansions = 0;
    while (margin_at(hi) > 0.0 && expansions < 8) {
        lo = hi;
        hi *= 2.0;
        ++expansions;
    }
    if (margin_at(hi) > 0.0) return hi;  // convex across the whole bracket
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (margin_at(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

CorpusEntry make_ball_entry(const GridPtr& grid, std::size_t index, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> radius_dist(0.6, 1.5);
    const double r = radius_dist(rng);
    CorpusEntry entry{entry_id("ball", index), "ball", make_ball(grid, r), false, 1.0, {}};
    entry.params.emplace_back("radius", r);
    return entry;
}

CorpusEntry make_translated_entry(const GridPtr& grid, std::size_t index,
                                  std::mt19937_64& rng) {
    std::uniform_real_distribution<double> norm_dist(0.05, 0.45);
    const double c_norm = norm_dist(rng);
    const Vec3 c = c_norm * random_direction(grid->dim(), rng);
    CorpusEntry entry{entry_id("translated_ball", index), "translated_ball",
                      make_translated_ball(grid, c), false, 1.0, {}};
    entry.params.emplace_back("center_x", c.x);
    entry.params.emplace_back("center_y", c.y);
    entry.params.emplace_back("center_z", c.z);
    return entry;
}

CorpusEntry make_ellipsoid_entry(const GridPtr& grid, std::size_t index,
                                 std::mt19937_64& rng) {
    std::uniform_real_distribution<double> axis_dist(0.8, 1.3);
    std::vector<double> axes(grid->ambient_dim());
    for (double& a : axes) a = axis_dist(rng);
    CorpusEntry entry{entry_id("ellipsoid", index), "ellipsoid", make_ellipsoid(grid, axes),
                      false, 1.0, {}};
    for (std::size_t k = 0; k < axes.size(); ++k) {
        char name[16];
        std::snprintf(name, sizeof(name), "axis_%zu", k);
        entry.params.emplace_back(name, axes[k]);
    }
    return entry;
}

CorpusEntry make_perturbed_entry(const GridPtr& grid, std::size_t index,
                                 std::mt19937_64& rng) {
    const int dim = grid->dim();
    std::uniform_int_distribution<int> count_dist(2, 4);
    std::uniform_int_distribution<int> degree_dist(2, 8);
    std::uniform_real_distribution<double> amp_dist(0.01, 0.08);
    std::uniform_int_distribution<int> sign_dist(0, 1);

    const int modes = count_dist(rng);
    std::vector<Perturbation> perturbations(modes);
    for (Perturbation& q : perturbations) {
        q.degree = degree_dist(rng);
        if (dim == 1) {
            q.order = sign_dist(rng) == 0 ? 1 : -1;
        } else {
            std::uniform_int_distribution<int> order_dist(-q.degree, q.degree);
            q.order = order_dist(rng);
        }
        q.amplitude = amp_dist(rng);
    }

    // Split ball + bump so the critical amplitude scale can be probed.
    HarmonicCoeffs ball_coeffs = make_ball(grid, 1.0).coefficients();
    HarmonicCoeffs bump = zero_coeffs(dim, grid->max_degree());
    for (const Perturbation& q : perturbations) {
        const std::size_t k = dim == 1 ? circle_index(q.degree, q.order)
                                       : sphere_index(q.degree, q.order);
        bump.values[k] += q.amplitude;
    }

    const double critical = critical_scale(grid, ball_coeffs, bump);
    double scale = 1.0;
    bool clamped = false;
    if (critical < 2.0) {
        scale = 0.5 * critical;
        clamped = true;
    }

    HarmonicCoeffs coeffs = ball_coeffs;
    for (std::size_t k = 0; k < coeffs.values.size(); ++k) {
        coeffs.values[k] += scale * bump.values[k];
    }
    auto build = ConvexBody::try_from_coefficients(grid, coeffs);
    // Margins are continuous in the scale, so halving from the critical
    // scale converges; a couple of extra halvings cover non-monotone cases.
    int retries = 0;
    while (!build.body.has_value() && retries < 6) {
        scale *= 0.5;
        clamped = true;
        HarmonicCoeffs again = ball_coeffs;
        for (std::size_t k = 0; k < again.values.size(); ++k) {
            again.values[k] += scale * bump.values[k];
        }
        build = ConvexBody::try_from_coefficients(grid, again);
        ++retries;
    }
    if (!build.body.has_value()) {
        throw std::runtime_error("generate_corpus: perturbed ball stayed nonconvex");
    }

    CorpusEntry entry{entry_id("perturbed_ball", index), "perturbed_ball",
                      std::move(*build.body), clamped, scale, {}};
    entry.params.emplace_back("modes", static_cast<double>(modes));
    for (int q = 0; q < modes; ++q) {
        char name[32];
        std::snprintf(name, sizeof(name), "degree_%d", q);
        entry.params.emplace_back(name, static_cast<double>(perturbations[q].degree));
        std::snprintf(name, sizeof(name), "order_%d", q);
        entry.params.emplace_back(name, static_cast<double>(perturbations[q].order));
        std::snprintf(name, sizeof(name), "amplitude_%d", q);
        entry.params.emplace_back(name, scale * perturbations[q].amplitude);
    }
    return entry;
}

}  // namespace

std::vector<CorpusEntry> generate_corpus(const GridPtr& grid, const CorpusSpec& spec) {
    if (spec.count < 1) throw std::invalid_argument("generate_corpus: count must be positive");
    std::mt19937_64 rng(spec.seed);
    std::vector<CorpusEntry> corpus;
    corpus.reserve(spec.count);
    for (std::size_t i = 0; i < static_cast<std::size_t>(spec.count); ++i) {
        switch (i % 4) {
            case 0: corpus.push_back(make_ball_entry(grid, i, rng)); break;
            case 1: corpus.push_back(make_translated_entry(grid, i, rng)); break;
            case 2: corpus.push_back(make_ellipsoid_entry(grid, i, rng)); break;
            default: corpus.push_back(make_perturbed_entry(grid, i, rng)); break;
        }
    }
    return corpus;
}

}  // namespace spherecalc
