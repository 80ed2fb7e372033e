#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "helly/fhelly.hpp"

namespace helly {

// Finite surrogate for the space of candidate piercing flats: one witness per
// hit (k+2)-tuple plus coverage-refined variants, with their incidences.
// Exactly one of flats / spheres is populated.
struct CandidateSet {
    std::vector<KFlat> flats;
    std::vector<GreatSphere> spheres;
    std::vector<std::vector<bool>> coverage;  // coverage[candidate][body]
    std::size_t n_bodies = 0;

    bool spherical() const { return !spheres.empty(); }
    std::size_t size() const { return spherical() ? spheres.size() : flats.size(); }
};

struct LPSolution {
    Vec weights;       // t(v) per candidate flat
    double value = 0;  // tau* over the candidate set
    Vec dual_weights;  // y per body
    double dual_value = 0;
    double gap = 0;
};

enum class RoundingMethod { greedy, lp_sampling };

struct PiercingResult {
    std::vector<KFlat> flats;
    std::vector<GreatSphere> spheres;
    int tau = 0;
    double tau_star = 0;
    RoundingMethod method = RoundingMethod::greedy;
    bool fell_back_to_greedy = false;
};

// Among any p members there must be k+2 with a common k-flat; decided by the
// tuple scan (sound yes per tuple, heuristic no).
bool check_pq_condition(const Family& family, std::size_t p, std::size_t k,
                        const SearchConfig& cfg);

CandidateSet witness_candidates(const Family& family, std::size_t k, const SearchConfig& cfg);

// Spherical analogue over cap families (great-sphere candidates).
CandidateSet witness_candidates_spherical(const std::vector<SphericalBody>& bodies, std::size_t k,
                                          const SearchConfig& cfg);

// Covering LP over the candidate set, solved exactly via the packing dual
// with a dense Bland-rule simplex. Throws input_error naming any uncovered
// body (the LP would be infeasible).
LPSolution fractional_transversal_lp(const CandidateSet& cands);

PiercingResult round_piercing(const CandidateSet& cands, const LPSolution& lp,
                              RoundingMethod method, std::uint64_t seed);

// Lower bound on the shatter function: distinct hit-subsets of the first m
// bodies realized by candidate flats plus seeded random flats (the random
// flats can be disabled to probe the candidates alone).
int shatter_estimate(const Family& family, std::size_t k, std::size_t m,
                     const CandidateSet& cands, std::uint64_t seed = 0,
                     bool include_random = true);

}  // namespace helly
