#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "spherecalc/corpus.hpp"

using namespace spherecalc;

namespace {

bool has_param(const CorpusEntry& entry, const std::string& key) {
    for (const auto& [name, value] : entry.params) {
        if (name == key) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("same seed reproduces the corpus bitwise") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    CorpusSpec spec;
    spec.count = 12;
    spec.seed = 99;
    const auto a = generate_corpus(grid, spec);
    const auto b = generate_corpus(grid, spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].family == b[i].family);
        CHECK(a[i].amplitude_scale == b[i].amplitude_scale);
        const auto& ca = a[i].body.coefficients().values;
        const auto& cb = b[i].body.coefficients().values;
        REQUIRE(ca.size() == cb.size());
        for (std::size_t k = 0; k < ca.size(); ++k) {
            CHECK(ca[k] == cb[k]);  // bitwise, not approx
        }
    }
}

TEST_CASE("different seeds give different bodies") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 12);
    CorpusSpec one;
    one.count = 4;
    one.seed = 1;
    CorpusSpec two = one;
    two.seed = 2;
    const auto a = generate_corpus(grid, one);
    const auto b = generate_corpus(grid, two);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.size() && !any_difference; ++i) {
        const auto& ca = a[i].body.coefficients().values;
        const auto& cb = b[i].body.coefficients().values;
        for (std::size_t k = 0; k < ca.size(); ++k) {
            if (ca[k] != cb[k]) {
                any_difference = true;
                break;
            }
        }
    }
    CHECK(any_difference);
}

TEST_CASE("full sphere corpus is valid and cycles families") {
    const GridPtr grid = SphereGrid::with_default_resolution(2, 12);
    const auto corpus = generate_corpus(grid, CorpusSpec{});
    REQUIRE(corpus.size() == 50);

    const char* expected[] = {"ball", "translated_ball", "ellipsoid", "perturbed_ball"};
    std::set<std::string> ids;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const CorpusEntry& entry = corpus[i];
        CHECK(entry.family == expected[i % 4]);
        CHECK(ids.insert(entry.id).second);  // ids unique
        CHECK(entry.body.convexity_margin() > 1e-6);
        CHECK(entry.body.min_support() > 0.0);
        CHECK_FALSE(entry.params.empty());
        if (entry.family == "ball") CHECK(has_param(entry, "radius"));
        if (entry.family == "translated_ball") CHECK(has_param(entry, "center_x"));
        if (entry.family == "ellipsoid") CHECK(has_param(entry, "axis_0"));
        if (entry.family == "perturbed_ball") {
            CHECK(has_param(entry, "modes"));
            CHECK(entry.amplitude_scale > 0.0);
            CHECK(entry.amplitude_scale <= 1.0);
            if (!entry.amplitude_clamped) CHECK(entry.amplitude_scale == 1.0);
        }
    }
}

TEST_CASE("circle corpus is valid") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 12);
    CorpusSpec spec;
    spec.count = 50;
    const auto corpus = generate_corpus(grid, spec);
    REQUIRE(corpus.size() == 50);
    for (const CorpusEntry& entry : corpus) {
        CAPTURE(entry.id);
        CHECK(entry.body.convexity_margin() > 1e-6);
        CHECK(entry.body.min_support() > 0.0);
    }
}

TEST_CASE("ids embed the corpus index") {
    const GridPtr grid = SphereGrid::with_default_resolution(1, 8);
    CorpusSpec spec;
    spec.count = 6;
    const auto corpus = generate_corpus(grid, spec);
    CHECK(corpus[0].id == "ball_000");
    CHECK(corpus[1].id == "translated_ball_001");
    CHECK(corpus[2].id == "ellipsoid_002");
    CHECK(corpus[3].id == "perturbed_ball_003");
    CHECK(corpus[4].id == "ball_004");
}
