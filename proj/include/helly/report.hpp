#pragma once
#include <cstdint>
#include <string>

#include "helly/claims.hpp"
#include "helly/piercing.hpp"
#include "helly/scene.hpp"

namespace helly {

// Deterministic run record: everything inside is reproducible from
// (scene, seed, command); wall-clock timings never enter the report.
struct RunReport {
    std::string command;
    json params;
    std::string scene_hash;
    json metrics;
    json findings;
};

json report_to_json(const RunReport& r);
std::string report_to_csv(const RunReport& r);

RunReport run_verify_claims(bool spherical, int trials, std::uint64_t seed);

// Chains tuple statistics, the heavy search, candidate generation, the
// covering LP, and rounding; every reported hit and cover is re-verified.
RunReport run_pipeline(const Scene& scene, std::size_t k, std::size_t p, const SearchConfig& cfg);

}  // namespace helly
