#pragma once

// Seeded generation of body corpora for verification runs.
//
// Four families are cycled in a fixed order: origin-centered balls of
// varying radius (equality cases for the sharp inequalities), translated
// unit balls, axis-aligned ellipsoids, and balls with random band-limited
// perturbations of degree 2..8.  All random draws happen before any
// convexity handling, so ids and parameters depend only on the seed.
//
// A drawn perturbation may be too violent to stay convex.  In that case the
// amplitude vector is rescaled to half the critical scale at which the
// convexity margin hits zero (found by bisection) and the entry is flagged.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spherecalc/convex_body.hpp"

namespace spherecalc {

struct CorpusSpec {
    int count = 50;
    std::uint64_t seed = 20240914;
};

struct CorpusEntry {
    std::string id;      // e.g. "ellipsoid_002"; the number is the corpus index
    std::string family;  // ball | translated_ball | ellipsoid | perturbed_ball
    ConvexBody body;
    bool amplitude_clamped = false;
    // Scale applied to the drawn amplitudes (1 when no clamping was needed).
    double amplitude_scale = 1.0;
    std::vector<std::pair<std::string, double>> params;
};

std::vector<CorpusEntry> generate_corpus(const GridPtr& grid, const CorpusSpec& spec);

}  // namespace spherecalc
