#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "helly/sphere.hpp"
#include "helly/transversal.hpp"

namespace helly {

using json = nlohmann::json;

// Shared scene container. Euclidean scenes carry a Family of balls and
// offset polytopes; spherical scenes carry caps of S^dimension (vectors of
// length dimension + 1). Generator ground truth lives under meta.
struct Scene {
    int dimension = 2;
    bool spherical = false;
    Family family;
    std::vector<Cap> caps;
    std::uint64_t seed = 0;
    json meta;

    std::size_t size() const { return spherical ? caps.size() : family.size(); }
    std::vector<SphericalBody> cap_bodies() const;
};

json scene_to_json(const Scene& scene);
Scene scene_from_json(const json& j);
Scene load_scene(const std::string& path);
void save_scene(const Scene& scene, const std::string& path);

// Canonical serialization (sorted keys, shortest round-trip numerals) and a
// 64-bit FNV-1a digest of it, in hex.
std::string canonical_dump(const json& j);
std::string scene_hash(const Scene& scene);

json flat_to_json(const KFlat& f, double margin);
json sphere_to_json(const GreatSphere& g, double margin);

}  // namespace helly
