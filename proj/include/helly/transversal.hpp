#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "helly/euclid.hpp"
#include "helly/sphere.hpp"

namespace helly {

struct SearchConfig {
    int restarts = 64;
    int max_iter = 4000;  // probe budget per restart
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int grid_fallback_resolution = 32;
};

enum class WitnessKind { euclidean_flat, great_sphere };

struct TransversalWitness {
    WitnessKind kind = WitnessKind::euclidean_flat;
    KFlat flat;          // valid when kind == euclidean_flat
    GreatSphere sphere;  // valid when kind == great_sphere
    double margin = 0.0;
    int restarts_used = 0;
};

// A present witness is sound (re-verified against every body); an absent
// one is only a heuristic "no" outside the convex regimes, and the
// heuristic_no flag says when that caveat applies.
struct TransversalDecision {
    std::optional<TransversalWitness> witness;
    double best_margin = -1e300;
    bool heuristic_no = false;
};

// --- Euclidean searches ----------------------------------------------------

// Convex minimax: min over points x of max_i (dist(x, body_i) - slack_i).
TransversalDecision exists_point_transversal(const std::vector<Ball>& balls,
                                             const SearchConfig& cfg);
TransversalDecision point_transversal_bodies(const std::vector<Body>& bodies,
                                             const SearchConfig& cfg);

// Multistart Grassmannian search over direction subspaces; inner problem is
// the point transversal of the bodies projected to the complement.
// Optional warm starts seed the first restarts. stop_at_feasible trades
// margin maximization for speed once any verified hit is found (used by
// tuple scans, where only the yes/no decision matters).
TransversalDecision exists_k_transversal(const Family& family, std::size_t k,
                                         const SearchConfig& cfg,
                                         const std::vector<KFlat>* warm_starts = nullptr,
                                         bool stop_at_feasible = false);

// Fast path for hyperplanes over balls: a direction u is feasible iff
// max_i(u.c_i - r_i) <= min_i(u.c_i + r_i).
TransversalDecision exists_hyperplane_transversal(const std::vector<Ball>& balls,
                                                  const SearchConfig& cfg);

// --- spherical searches ------------------------------------------------------

TransversalDecision exists_great_sphere_transversal(const std::vector<Cap>& caps, std::size_t k,
                                                    const SearchConfig& cfg);
TransversalDecision great_sphere_transversal_bodies(const std::vector<SphericalBody>& bodies,
                                                    std::size_t k, const SearchConfig& cfg,
                                                    const std::vector<GreatSphere>* warm_starts = nullptr,
                                                    bool stop_at_feasible = false);

// --- brute-force oracles --------------------------------------------------------

// Exhaustive flat enumeration over an angular/spatial grid (d <= 3, k <= 2,
// n <= 20). Returns the best-margin flat; independent of the multistart path.
struct GridOracleResult {
    std::optional<TransversalWitness> witness;
    double best_margin = -1e300;
    KFlat best_flat;
    long long flats_scanned = 0;
};

GridOracleResult grid_oracle_k_transversal(const Family& family, std::size_t k, int resolution);

struct SphereGridOracleResult {
    std::optional<TransversalWitness> witness;
    double best_margin = -1e300;
    GreatSphere best_sphere;
    long long scanned = 0;
};

// Grid over (k+1)-dimensional subspaces for caps on S^2 (k in {0,1}).
SphereGridOracleResult grid_oracle_great_sphere(const std::vector<Cap>& caps, std::size_t k,
                                                int resolution);

// Shared flat/subspace grids behind the oracles, exposed so count-maximizing
// sweeps can reuse the identical enumeration.
void enumerate_grid_flats(const Family& family, std::size_t k, int resolution,
                          const std::function<void(const KFlat&)>& fn);
void enumerate_grid_great_spheres(std::size_t ambient, std::size_t k, int resolution,
                                  const std::function<void(const GreatSphere&)>& fn);

// --- shared helpers --------------------------------------------------------------

HitResult witness_hits_body(const TransversalWitness& w, const Body& b, double tol = kGeomTol);

// Verified min margin of a flat over a family.
double family_min_margin(const KFlat& f, const Family& family);
double sphere_family_min_margin(const GreatSphere& g, const std::vector<SphericalBody>& bodies);

// Canonical dedup key for a flat at a given resolution (projector + foot point).
std::vector<long long> flat_canonical_key(const KFlat& f, double resolution);

}  // namespace helly
