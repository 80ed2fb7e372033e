#include "helly/scene.hpp"

#include <cmath>
#include <fstream>

#include "helly/errors.hpp"

namespace helly {

std::vector<SphericalBody> Scene::cap_bodies() const {
    std::vector<SphericalBody> out;
    out.reserve(caps.size());
    for (const Cap& c : caps) out.push_back(SphericalBody::from_cap(c));
    return out;
}

namespace {

json vec_to_json(const Vec& v) { return json(v); }

Vec vec_from_json(const json& j, std::size_t expect) {
    if (!j.is_array()) throw input_error("scene: expected coordinate array");
    Vec v = j.get<Vec>();
    if (expect != 0 && v.size() != expect) throw input_error("scene: coordinate length mismatch");
    for (double x : v)
        if (!std::isfinite(x)) throw input_error("scene: non-finite coordinate");
    return v;
}

}  // namespace

json scene_to_json(const Scene& scene) {
    json j;
    j["dimension"] = scene.dimension;
    j["space"] = scene.spherical ? "spherical" : "euclidean";
    json bodies = json::array();
    if (scene.spherical) {
        for (const Cap& c : scene.caps) {
            json b;
            b["type"] = "cap";
            b["center"] = vec_to_json(c.center);
            b["radius"] = c.radius;
            bodies.push_back(b);
        }
    } else {
        for (const Body& body : scene.family.bodies) {
            json b;
            if (const auto* ball = std::get_if<Ball>(&body)) {
                b["type"] = "ball";
                b["center"] = vec_to_json(ball->center);
                b["radius"] = ball->radius;
            } else {
                const FatBody& k = std::get<FatBody>(body);
                b["type"] = "polytope";
                json verts = json::array();
                for (const Vec& v : k.vertices) verts.push_back(vec_to_json(v));
                b["vertices"] = verts;
                b["offset"] = k.offset;
                b["center"] = vec_to_json(k.center);
                b["inner"] = k.inner;
                b["outer"] = k.outer;
            }
            bodies.push_back(b);
        }
    }
    j["bodies"] = bodies;
    if (!scene.family.colors.empty()) j["colors"] = scene.family.colors;
    if (scene.seed != 0) j["seed"] = scene.seed;
    if (!scene.meta.is_null()) j["meta"] = scene.meta;
    return j;
}

Scene scene_from_json(const json& j) {
    Scene scene;
    if (!j.contains("dimension") || !j.contains("space") || !j.contains("bodies"))
        throw input_error("scene: missing dimension/space/bodies");
    scene.dimension = j.at("dimension").get<int>();
    if (scene.dimension < 1) throw input_error("scene: dimension must be >= 1");
    const std::string space = j.at("space").get<std::string>();
    if (space == "spherical")
        scene.spherical = true;
    else if (space == "euclidean")
        scene.spherical = false;
    else
        throw input_error("scene: space must be euclidean or spherical");
    scene.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("meta")) scene.meta = j.at("meta");

    const std::size_t coord_len =
        scene.spherical ? static_cast<std::size_t>(scene.dimension) + 1 : static_cast<std::size_t>(scene.dimension);
    for (const json& b : j.at("bodies")) {
        const std::string type = b.at("type").get<std::string>();
        if (scene.spherical) {
            if (type != "cap") throw input_error("scene: spherical scenes hold caps only");
            Vec center = vec_from_json(b.at("center"), coord_len);
            if (std::fabs(norm(center) - 1.0) >= 1e-9)
                throw input_error("scene: cap center is not a unit vector");
            const double radius = b.at("radius").get<double>();
            if (radius < 0 || radius > M_PI) throw input_error("scene: cap radius outside [0, pi]");
            scene.caps.push_back(Cap{std::move(center), radius});
        } else if (type == "ball") {
            Vec center = vec_from_json(b.at("center"), coord_len);
            const double radius = b.at("radius").get<double>();
            if (radius < 0) throw input_error("scene: negative ball radius");
            scene.family.bodies.push_back(Ball{std::move(center), radius});
        } else if (type == "polytope") {
            FatBody k;
            for (const json& v : b.at("vertices")) k.vertices.push_back(vec_from_json(v, coord_len));
            if (k.vertices.empty()) throw input_error("scene: polytope needs vertices");
            k.offset = b.at("offset").get<double>();
            k.center = vec_from_json(b.at("center"), coord_len);
            k.inner = b.at("inner").get<double>();
            k.outer = b.at("outer").get<double>();
            if (k.offset < 0 || k.inner <= 0 || k.outer < k.inner)
                throw input_error("scene: invalid polytope certificate");
            scene.family.bodies.push_back(std::move(k));
        } else {
            throw input_error("scene: unknown body type " + type);
        }
    }
    if (scene.size() == 0) throw input_error("scene: no bodies");
    if (j.contains("colors")) {
        scene.family.colors = j.at("colors").get<std::vector<int>>();
        if (scene.family.colors.size() != scene.size()) throw input_error("scene: colors length mismatch");
    }
    // spherical scenes keep colors in family.colors too; caps and colors
    // share indexing
    if (!scene.spherical) scene.family.validate();
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open scene file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error(std::string("scene parse error: ") + e.what());
    }
    return scene_from_json(j);
}

void save_scene(const Scene& scene, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write scene file: " + path);
    out << scene_to_json(scene).dump(2) << "\n";
}

std::string canonical_dump(const json& j) { return j.dump(); }

std::string scene_hash(const Scene& scene) {
    const std::string s = canonical_dump(scene_to_json(scene));
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

json flat_to_json(const KFlat& f, double margin) {
    json j;
    j["kind"] = "euclidean-flat";
    j["base"] = json(f.base);
    json dirs = json::array();
    for (std::size_t c = 0; c < f.k(); ++c) dirs.push_back(json(f.dirs.col(c)));
    j["dirs"] = dirs;
    j["margin"] = margin;
    return j;
}

json sphere_to_json(const GreatSphere& g, double margin) {
    json j;
    j["kind"] = "great-sphere";
    json dirs = json::array();
    for (std::size_t c = 0; c < g.basis.cols(); ++c) dirs.push_back(json(g.basis.col(c)));
    j["basis"] = dirs;
    j["margin"] = margin;
    return j;
}

}  // namespace helly
