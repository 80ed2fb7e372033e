#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "helly/scene.hpp"

namespace helly {

// One property suite outcome: worst_slack <= 0 means every sample satisfied
// its bound; measured constants are reported alongside, never asserted.
struct ClaimFinding {
    std::string name;
    long long samples = 0;
    double worst_slack = 0.0;
    bool pass = false;
    std::map<std::string, double> measured;
};

std::vector<ClaimFinding> verify_claims_euclidean(int trials, std::uint64_t seed);
std::vector<ClaimFinding> verify_claims_spherical(int trials, std::uint64_t seed);

json findings_to_json(const std::vector<ClaimFinding>& findings);

// Brute-force oracle for the intrinsic radius of a projected cap: samples
// the cap boundary on S^2, projects to longitude coordinates, and polishes
// the maximum angular distance from the projected center.
double projected_cap_radius_oracle(double r, double t, int samples);

}  // namespace helly
