#include "helly/generate.hpp"

#include <algorithm>
#include <cmath>

#include "helly/errors.hpp"
#include "helly/rng.hpp"

namespace helly {

GeneratorKind generator_kind_from_string(const std::string& s) {
    if (s == "planted-flat") return GeneratorKind::planted_flat;
    if (s == "planted-clusters") return GeneratorKind::planted_clusters;
    if (s == "uniform-random") return GeneratorKind::uniform_random;
    if (s == "spherical-planted") return GeneratorKind::spherical_planted;
    throw input_error("unknown generator kind: " + s);
}

FatBody make_fat_body(Rng& rng, const Vec& center, double rho, double scale) {
    const std::size_t d = center.size();
    if (rho < 1.0) throw input_error("make_fat_body: rho must be >= 1");
    FatBody k;
    k.center = center;
    k.outer = scale;
    if (rho <= 1.0 + 1e-9) {
        k.vertices = {center};
        k.offset = scale;
        k.inner = scale;
        return k;
    }
    // random orthonormal frame for the cross-polytope axes
    Mat frame(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) frame(i, j) = rng.gaussian();
    frame = orthonormalized(frame);

    const double sqd = std::sqrt(static_cast<double>(d));
    std::vector<double> axes(d, scale);
    double offset = 0.0;
    if (rho >= sqd || d == 1) {
        // elongate: one long axis, short axes sized so inner = scale / rho
        const double b = d > 1 ? scale * std::sqrt(static_cast<double>(d - 1)) / std::sqrt(rho * rho - 1.0)
                               : scale / rho;
        for (std::size_t i = 1; i < d; ++i) axes[i] = b;
        k.inner = scale / rho;
    } else {
        // equal axes plus offset tuned so the ratio is exactly rho
        const double a = scale * (1.0 - 1.0 / rho) / (1.0 - 1.0 / sqd);
        offset = scale - a;
        for (std::size_t i = 0; i < d; ++i) axes[i] = a;
        k.inner = scale / rho;
    }
    k.offset = offset;
    for (std::size_t i = 0; i < d; ++i) {
        Vec axis = frame.col(i);
        k.vertices.push_back(center + axes[i] * axis);
        k.vertices.push_back(center - axes[i] * axis);
    }
    return k;
}

SphericalBody make_fat_spherical_body(Rng& rng, const Vec& center, double rho, double scale) {
    if (rho < 1.0) throw input_error("make_fat_spherical_body: rho must be >= 1");
    if (scale >= M_PI / 2) throw input_error("make_fat_spherical_body: scale must stay below pi/2");
    if (rho <= 1.0 + 1e-9) return SphericalBody::from_cap(Cap{center, scale});
    const double inner = scale / rho;
    const double half = scale - inner;
    Vec g = rng.gaussian_vector(center.size());
    Vec t = g - dot(g, center) * center;
    if (norm(t) < 1e-12) t = g;
    t = normalized(t - dot(t, center) * center);
    SphericalBody b;
    b.points = {std::cos(half) * center + std::sin(half) * t,
                std::cos(half) * center - std::sin(half) * t};
    b.offset = inner;
    b.center = center;
    b.inner = inner;
    b.outer = scale;
    return b;
}

namespace {

Body planted_body(Rng& rng, const Vec& anchor, double rho, double radius) {
    const std::size_t d = anchor.size();
    const double inner = radius / rho;
    // displace the center by at most 0.9 * inner so the anchor flat pierces
    // the inscribed ball with margin
    Vec center = anchor + (0.9 * inner * rng.uniform()) * rng.unit_vector(d);
    if (rho <= 1.0 + 1e-9) return Ball{center, radius};
    return make_fat_body(rng, center, rho, radius);
}

Body noise_body(Rng& rng, std::size_t d, double rho, double span) {
    Vec center(d);
    for (auto& x : center) x = rng.uniform(-span, span);
    const double radius = rng.uniform(0.2, 0.8);
    if (rho <= 1.0 + 1e-9) return Ball{center, radius};
    return make_fat_body(rng, center, rho, radius);
}

KFlat random_flat(Rng& rng, std::size_t d, std::size_t k, double span) {
    Vec base(d);
    for (auto& x : base) x = rng.uniform(-span, span);
    if (k == 0) return KFlat::point(base);
    Mat dirs(d, k);
    while (true) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) dirs(i, j) = rng.gaussian();
        try {
            return KFlat{base, orthonormalized(dirs)};
        } catch (const numeric_error&) {
        }
    }
}

Vec point_on_flat(Rng& rng, const KFlat& f, double span) {
    Vec p = f.base;
    for (std::size_t j = 0; j < f.k(); ++j) p = p + rng.uniform(-span, span) * f.dirs.col(j);
    return p;
}

}  // namespace

Scene generate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw input_error("generate: n must be >= 1");
    if (spec.d < 1) throw input_error("generate: d must be >= 1");
    if (spec.k < 0 || spec.k > spec.d) throw input_error("generate: k out of range");
    if (spec.rho < 1.0) throw input_error("generate: rho must be >= 1");
    if (spec.noise_fraction < 0 || spec.noise_fraction > 1)
        throw input_error("generate: noiseFraction outside [0,1]");

    Rng rng(spec.seed);
    Scene scene;
    scene.seed = spec.seed;
    const std::size_t d = static_cast<std::size_t>(spec.d);
    const std::size_t k = static_cast<std::size_t>(spec.k);

    switch (spec.kind) {
        case GeneratorKind::planted_flat: {
            scene.dimension = spec.d;
            const KFlat flat = random_flat(rng, d, k, 3.0);
            const int n_noise = static_cast<int>(std::lround(spec.noise_fraction * spec.n));
            const int n_hit = spec.n - n_noise;
            for (int i = 0; i < n_hit; ++i) {
                const Vec anchor = point_on_flat(rng, flat, 4.0);
                scene.family.bodies.push_back(planted_body(rng, anchor, spec.rho, rng.uniform(0.4, 1.0)));
            }
            for (int i = 0; i < n_noise; ++i)
                scene.family.bodies.push_back(noise_body(rng, d, spec.rho, 6.0));
            scene.meta["kind"] = "planted-flat";
            scene.meta["planted"] = n_hit;
            scene.meta["flat"] = flat_to_json(flat, 0.0);
            break;
        }
        case GeneratorKind::planted_clusters: {
            scene.dimension = spec.d;
            const int m = std::max(1, spec.clusters);
            std::vector<KFlat> flats;
            json flats_json = json::array();
            for (int c = 0; c < m; ++c) {
                // spread cluster anchors apart so clusters stay separated
                Vec base(d, 0.0);
                for (std::size_t i = 0; i < d; ++i) base[i] = (c + 1) * 7.0 * ((i + c) % 2 == 0 ? 1 : -1);
                KFlat f = random_flat(rng, d, k, 1.0);
                f.base = base;
                flats.push_back(f);
                flats_json.push_back(flat_to_json(f, 0.0));
            }
            const int n_noise = static_cast<int>(std::lround(spec.noise_fraction * spec.n));
            const int n_hit = spec.n - n_noise;
            for (int i = 0; i < n_hit; ++i) {
                const KFlat& f = flats[i % m];
                const Vec anchor = point_on_flat(rng, f, 3.0);
                scene.family.bodies.push_back(planted_body(rng, anchor, spec.rho, rng.uniform(0.4, 1.0)));
            }
            for (int i = 0; i < n_noise; ++i)
                scene.family.bodies.push_back(noise_body(rng, d, spec.rho, 20.0));
            scene.meta["kind"] = "planted-clusters";
            scene.meta["clusters"] = m;
            scene.meta["flats"] = flats_json;
            break;
        }
        case GeneratorKind::uniform_random: {
            scene.dimension = spec.d;
            for (int i = 0; i < spec.n; ++i) scene.family.bodies.push_back(noise_body(rng, d, spec.rho, 5.0));
            scene.meta["kind"] = "uniform-random";
            break;
        }
        case GeneratorKind::spherical_planted: {
            if (k >= d) throw input_error("generate: spherical requires k < d");
            scene.dimension = spec.d;
            scene.spherical = true;
            const std::size_t amb = d + 1;
            Mat basis(amb, k + 1);
            while (true) {
                for (std::size_t i = 0; i < amb; ++i)
                    for (std::size_t j = 0; j <= k; ++j) basis(i, j) = rng.gaussian();
                try {
                    basis = orthonormalized(basis);
                    break;
                } catch (const numeric_error&) {
                }
            }
            const int n_noise = static_cast<int>(std::lround(spec.noise_fraction * spec.n));
            const int n_hit = spec.n - n_noise;
            for (int i = 0; i < n_hit; ++i) {
                Vec g = rng.gaussian_vector(k + 1);
                Vec v = normalized(matvec(basis, normalized(g)));
                const double eps = rng.uniform(0.12, 0.3);
                Vec tg = rng.gaussian_vector(amb);
                Vec t = tg - dot(tg, v) * v;
                Vec center = v;
                if (norm(t) > 1e-12) {
                    const double a = 0.9 * eps * rng.uniform();
                    center = std::cos(a) * v + (std::sin(a) / norm(t)) * t;
                }
                center = normalized(normalized(center));
                scene.caps.push_back(Cap{center, eps});
            }
            for (int i = 0; i < n_noise; ++i)
                scene.caps.push_back(Cap{normalized(rng.unit_vector(amb)), rng.uniform(0.08, 0.25)});
            scene.meta["kind"] = "spherical-planted";
            scene.meta["planted"] = n_hit;
            scene.meta["subspace"] = sphere_to_json(GreatSphere{basis}, 0.0);
            break;
        }
    }
    return scene;
}

}  // namespace helly
