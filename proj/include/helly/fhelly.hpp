#pragma once
#include <optional>
#include <string>
#include <vector>

#include "helly/transversal.hpp"

namespace helly {

struct TupleRecord {
    std::vector<int> members;  // body indices
    bool hit = false;
    std::optional<TransversalWitness> witness;
};

// Hit tuples charged to their member with the smallest bounding radius
// (ties to the lowest index); the charged class and its most charged body
// drive the recursive search.
struct ChargingTable {
    std::vector<TupleRecord> tuples;
    std::vector<long long> charges;
    int charged_class = 0;
    int k0 = -1;
    double epsilon = 0.0;  // bounding radius of the most charged body
    long long total_hits = 0;
    double alpha = 0.0;
};

struct TupleAlphaResult {
    double alpha = 0.0;
    ChargingTable table;
};

// Evaluates the k-transversal decision on every (k+2)-subset (or every
// colorful selection when the family carries colors) and charges the hits.
TupleAlphaResult tuple_alpha(const Family& family, std::size_t k, const SearchConfig& cfg);

TupleAlphaResult spherical_tuple_alpha(const std::vector<SphericalBody>& bodies, std::size_t k,
                                       const SearchConfig& cfg);

// Fraction of colorful selections (one body per class) with a k-transversal.
double colorful_tuple_alpha(const std::vector<Family>& classes, std::size_t k,
                            const SearchConfig& cfg);

struct LevelTrace {
    int k0 = -1;
    double epsilon = 0.0;
    std::string projection_kind;
    double recursed_fraction = 0.0;
    double lifted_fraction = 0.0;
};

struct HeavyFlatResult {
    bool spherical = false;
    KFlat flat;          // valid when !spherical
    GreatSphere sphere;  // valid when spherical
    std::vector<int> hit_indices;
    double fraction = 0.0;
    double min_margin = 0.0;
    bool degraded = false;
    double alpha = 0.0;
    std::vector<LevelTrace> trace;
};

// Recursive heavy-flat search: charging, inflation by the bounding radius of
// the most charged body, central projection to the unit sphere, spherical
// recursion at (d-1, k-1), and lifting by complement-space pigeonhole.
// Returns the best of the recursion and a direct multistart/coverage sweep.
HeavyFlatResult heavy_flat_search(const Family& family, std::size_t k, const SearchConfig& cfg);

// Spherical branch: deletes (or directly pigeonholes) bodies with bounding
// radius above pi/8, thickens by the charged radius, projects to the cap
// boundary, recurses, and lifts with the meridian-projection machinery.
HeavyFlatResult heavy_great_sphere_search(const std::vector<SphericalBody>& bodies, std::size_t k,
                                          const SearchConfig& cfg);

struct BestFlatResult {
    KFlat flat;
    double fraction = 0.0;
};

// Exhaustive count-maximizing sweep over the oracle's flat grid.
BestFlatResult brute_force_best_flat(const Family& family, std::size_t k, int resolution);

struct BestSphereResult {
    GreatSphere sphere;
    double fraction = 0.0;
};

BestSphereResult brute_force_best_great_sphere(const std::vector<SphericalBody>& bodies,
                                               std::size_t k, int resolution);

// Local ascent on a smooth coverage score around a starting flat; used to
// grow witness candidates into high-coverage piercing candidates.
KFlat refine_flat_coverage(const KFlat& start, const Family& family, const SearchConfig& cfg);

}  // namespace helly
