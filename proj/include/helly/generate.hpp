#pragma once
#include <cstdint>
#include <string>

#include "helly/scene.hpp"

namespace helly {

enum class GeneratorKind { planted_flat, planted_clusters, uniform_random, spherical_planted };

GeneratorKind generator_kind_from_string(const std::string& s);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::planted_flat;
    int n = 10;
    int d = 3;
    int k = 1;
    double rho = 1.0;          // >= 1; 1 generates balls, > 1 offset polytopes
    double noise_fraction = 0.0;
    std::uint64_t seed = 0;
    int clusters = 2;  // planted_clusters only
};

// Deterministic scene given the seed; planted ground truth recorded in meta.
Scene generate(const GeneratorSpec& spec);

// Exactly rho-fat cross-polytope body: certificates hold by construction.
FatBody make_fat_body(class Rng& rng, const Vec& center, double rho, double scale);

// Exactly rho-fat spherical body: an offset arc with exact cap certificates.
SphericalBody make_fat_spherical_body(class Rng& rng, const Vec& center, double rho, double scale);

}  // namespace helly
