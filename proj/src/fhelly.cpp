#include "helly/fhelly.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "helly/errors.hpp"
#include "helly/optimize.hpp"
#include "helly/rng.hpp"

namespace helly {

namespace {

constexpr long long kTupleBudget = 10000000;

long long binomial(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    long long v = 1;
    for (std::size_t i = 0; i < r; ++i) {
        v = v * static_cast<long long>(n - i) / static_cast<long long>(i + 1);
        if (v > 4 * kTupleBudget) return 4 * kTupleBudget;
    }
    return v;
}

void for_each_subset(std::size_t n, std::size_t r, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<int>(i);
    if (r > n) return;
    while (true) {
        fn(idx);
        // next combination
        long long i = static_cast<long long>(r) - 1;
        while (i >= 0 && idx[i] == static_cast<int>(n - r + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Smallest bounding radius member of a tuple, ties to lowest index.
template <class RadiusFn>
int charge_target(const std::vector<int>& members, RadiusFn radius) {
    int best = members.front();
    for (int m : members)
        if (radius(m) < radius(best) - 1e-15 || (std::fabs(radius(m) - radius(best)) <= 1e-15 && m < best))
            best = m;
    return best;
}

template <class RadiusFn, class ClassFn>
void finish_charging(ChargingTable& table, std::size_t n, std::size_t n_classes, RadiusFn radius,
                     ClassFn klass) {
    table.charges.assign(n, 0);
    table.total_hits = 0;
    for (const TupleRecord& t : table.tuples) {
        if (!t.hit) continue;
        ++table.total_hits;
        ++table.charges[charge_target(t.members, radius)];
    }
    // the class holding the most charge holds at least 1/(k+2) of all hits
    std::vector<long long> class_charge(n_classes, 0);
    for (std::size_t i = 0; i < n; ++i) class_charge[klass(i)] += table.charges[i];
    table.charged_class = 0;
    for (std::size_t c = 1; c < n_classes; ++c)
        if (class_charge[c] > class_charge[table.charged_class]) table.charged_class = static_cast<int>(c);
    table.k0 = -1;
    long long best = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (klass(i) != static_cast<std::size_t>(table.charged_class)) continue;
        if (table.charges[i] > best) {
            best = table.charges[i];
            table.k0 = static_cast<int>(i);
        }
    }
    if (table.k0 >= 0) table.epsilon = radius(table.k0);
}

// Closed-form pair decisions for the k = 0 base cases.
std::optional<TransversalWitness> ball_pair_witness(const Ball& a, const Ball& b) {
    const double gap = dist(a.center, b.center) - (a.radius + b.radius);
    if (gap > kGeomTol) return std::nullopt;
    const double d2 = dist(a.center, b.center);
    Vec p;
    if (d2 < 1e-15) {
        p = a.center;
    } else {
        const double t = std::min(1.0, std::max(0.0, (a.radius + 0.5 * (d2 - a.radius - b.radius)) / d2));
        p = a.center + t * (b.center - a.center);
    }
    TransversalWitness w;
    w.kind = WitnessKind::euclidean_flat;
    w.flat = KFlat::point(p);
    w.margin = std::min(a.radius - dist(p, a.center), b.radius - dist(p, b.center));
    return w;
}

std::optional<TransversalWitness> cap_pair_witness(const SphericalBody& a, const SphericalBody& b) {
    if (a.points.size() != 1 || b.points.size() != 1) return std::nullopt;  // not caps
    const Vec& x1 = a.points[0];
    const Vec& x2 = b.points[0];
    const double ang = angular_dist(x1, x2);
    const double direct = ang, reflected = M_PI - ang;
    if (std::min(direct, reflected) > a.offset + b.offset + kGeomTol) return std::nullopt;
    Vec target = x2;
    double span = direct;
    if (reflected < direct) {
        target = -1.0 * x2;
        span = reflected;
    }
    Vec u;
    if (span < 1e-12) {
        u = x1;
    } else {
        // walk along the geodesic from x1 toward the target far enough to
        // enter both caps
        const double t = std::min(1.0, std::max(0.0, (a.offset + 0.5 * (span - a.offset - b.offset)) / span));
        Vec axis = normalized(target - dot(x1, target) * x1);
        u = std::cos(t * span) * x1 + std::sin(t * span) * axis;
    }
    Mat basis(u.size(), 1);
    basis.set_col(0, normalized(u));
    TransversalWitness w;
    w.kind = WitnessKind::great_sphere;
    w.sphere = GreatSphere{basis};
    const double m1 = a.offset - std::min(angular_dist(normalized(u), x1), M_PI - angular_dist(normalized(u), x1));
    const double m2 = b.offset - std::min(angular_dist(normalized(u), x2), M_PI - angular_dist(normalized(u), x2));
    w.margin = std::min(m1, m2);
    return w;
}

}  // namespace

TupleAlphaResult tuple_alpha(const Family& family, std::size_t k, const SearchConfig& cfg) {
    family.validate();
    const std::size_t n = family.size();
    const std::size_t r = k + 2;
    if (n < r) throw input_error("tuple_alpha: family smaller than k+2");

    TupleAlphaResult out;
    ChargingTable& table = out.table;

    auto decide = [&](const std::vector<int>& members, std::uint64_t salt) {
        TupleRecord rec;
        rec.members = members;
        if (k == 0) {
            const auto* b0 = std::get_if<Ball>(&family.bodies[members[0]]);
            const auto* b1 = std::get_if<Ball>(&family.bodies[members[1]]);
            if (b0 && b1) {
                auto w = ball_pair_witness(*b0, *b1);
                rec.hit = w.has_value();
                rec.witness = std::move(w);
                return rec;
            }
        }
        Family sub;
        for (int m : members) sub.bodies.push_back(family.bodies[m]);
        SearchConfig sc = cfg;
        sc.seed = mix_seed(cfg.seed, salt);
        auto dec = exists_k_transversal(sub, k, sc, nullptr, /*stop_at_feasible=*/true);
        rec.hit = dec.witness.has_value();
        if (dec.witness) rec.witness = std::move(dec.witness);
        return rec;
    };

    long long total = 0;
    if (!family.colors.empty()) {
        // colorful selections: one body per class, exactly k+2 classes
        int n_classes = 0;
        for (int c : family.colors) n_classes = std::max(n_classes, c + 1);
        if (static_cast<std::size_t>(n_classes) != r)
            throw input_error("tuple_alpha: colorful input needs exactly k+2 classes");
        std::vector<std::vector<int>> classes(r);
        for (std::size_t i = 0; i < n; ++i) classes[family.colors[i]].push_back(static_cast<int>(i));
        long long product = 1;
        for (const auto& c : classes) {
            if (c.empty()) throw input_error("tuple_alpha: empty color class");
            product *= static_cast<long long>(c.size());
            if (product > kTupleBudget)
                throw resource_error("tuple_alpha: selection count exceeds budget; use sampling");
        }
        std::vector<std::size_t> idx(r, 0);
        while (true) {
            std::vector<int> members(r);
            for (std::size_t c = 0; c < r; ++c) members[c] = classes[c][idx[c]];
            table.tuples.push_back(decide(members, static_cast<std::uint64_t>(total)));
            ++total;
            std::size_t c = 0;
            while (c < r && ++idx[c] == classes[c].size()) idx[c++] = 0;
            if (c == r) break;
        }
        auto radius = [&](int i) { return body_outer_radius(family.bodies[i]); };
        auto klass = [&](std::size_t i) { return static_cast<std::size_t>(family.colors[i]); };
        finish_charging(table, n, r, radius, klass);
    } else {
        if (binomial(n, r) > kTupleBudget)
            throw resource_error("tuple_alpha: tuple count exceeds budget; use sampling");
        for_each_subset(n, r, [&](const std::vector<int>& members) {
            table.tuples.push_back(decide(members, static_cast<std::uint64_t>(total)));
            ++total;
        });
        auto radius = [&](int i) { return body_outer_radius(family.bodies[i]); };
        auto klass = [&](std::size_t) { return std::size_t{0}; };
        finish_charging(table, n, 1, radius, klass);
    }

    table.alpha = total > 0 ? static_cast<double>(table.total_hits) / static_cast<double>(total) : 0.0;
    out.alpha = table.alpha;
    return out;
}

TupleAlphaResult spherical_tuple_alpha(const std::vector<SphericalBody>& bodies, std::size_t k,
                                       const SearchConfig& cfg) {
    const std::size_t n = bodies.size();
    const std::size_t r = k + 2;
    if (n < r) throw input_error("spherical_tuple_alpha: family smaller than k+2");
    if (binomial(n, r) > kTupleBudget)
        throw resource_error("spherical_tuple_alpha: tuple count exceeds budget");

    TupleAlphaResult out;
    ChargingTable& table = out.table;
    long long total = 0;
    for_each_subset(n, r, [&](const std::vector<int>& members) {
        TupleRecord rec;
        rec.members = members;
        bool done = false;
        if (k == 0) {
            const SphericalBody& a = bodies[members[0]];
            const SphericalBody& b = bodies[members[1]];
            if (a.full_sphere || b.full_sphere) {
                rec.hit = true;
                done = true;
            } else if (a.points.size() == 1 && b.points.size() == 1) {
                auto w = cap_pair_witness(a, b);
                rec.hit = w.has_value();
                rec.witness = std::move(w);
                done = true;
            }
        }
        if (!done) {
            std::vector<SphericalBody> sub;
            for (int m : members) sub.push_back(bodies[m]);
            SearchConfig sc = cfg;
            sc.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(total));
            auto dec = great_sphere_transversal_bodies(sub, k, sc, nullptr, /*stop_at_feasible=*/true);
            rec.hit = dec.witness.has_value();
            if (dec.witness) rec.witness = std::move(dec.witness);
        }
        table.tuples.push_back(std::move(rec));
        ++total;
    });
    auto radius = [&](int i) { return bodies[i].full_sphere ? M_PI : bodies[i].outer; };
    auto klass = [&](std::size_t) { return std::size_t{0}; };
    finish_charging(table, n, 1, radius, klass);
    table.alpha = total > 0 ? static_cast<double>(table.total_hits) / static_cast<double>(total) : 0.0;
    out.alpha = table.alpha;
    return out;
}

double colorful_tuple_alpha(const std::vector<Family>& classes, std::size_t k,
                            const SearchConfig& cfg) {
    if (classes.size() != k + 2) throw input_error("colorful_tuple_alpha: needs exactly k+2 classes");
    Family merged;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        classes[c].validate();
        for (const Body& b : classes[c].bodies) {
            merged.bodies.push_back(b);
            merged.colors.push_back(static_cast<int>(c));
        }
    }
    return tuple_alpha(merged, k, cfg).alpha;
}

// --- coverage sweeps ----------------------------------------------------------

namespace {

struct FlatCoverage {
    KFlat flat;
    std::vector<int> hits;
    double fraction = 0.0;
    double min_hit_margin = 0.0;
};

FlatCoverage evaluate_flat(const KFlat& f, const Family& family, double tol) {
    FlatCoverage out;
    out.flat = f;
    double worst = 1e300;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto hr = flat_hits_body(f, family.bodies[i], tol);
        if (hr.hit) {
            out.hits.push_back(static_cast<int>(i));
            worst = std::min(worst, hr.margin);
        }
    }
    out.fraction = static_cast<double>(out.hits.size()) / static_cast<double>(family.size());
    out.min_hit_margin = out.hits.empty() ? -1e300 : worst;
    return out;
}

bool coverage_beats(const FlatCoverage& a, const FlatCoverage& b) {
    if (a.hits.size() != b.hits.size()) return a.hits.size() > b.hits.size();
    return a.min_hit_margin > b.min_hit_margin;
}

}  // namespace

// Local count-ascent: smooth coverage score over (base, dirs) parameters.
KFlat refine_flat_coverage(const KFlat& start, const Family& family, const SearchConfig& cfg) {
    const std::size_t d = family.dim();
    const std::size_t k = start.k();
    double scale = 0.0;
    for (const Body& b : family.bodies) scale = std::max(scale, body_outer_radius(b));
    scale = std::max(scale, 1e-3);

    auto build = [&](const Vec& params) -> std::optional<KFlat> {
        Vec base(params.begin(), params.begin() + d);
        if (k == 0) return KFlat::point(base);
        Mat dirs(d, k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) dirs(i, j) = params[d + j * d + i];
        try {
            return KFlat{std::move(base), orthonormalized(dirs)};
        } catch (const numeric_error&) {
            return std::nullopt;
        }
    };
    auto score = [&](const Vec& params) {
        const auto f = build(params);
        if (!f) return 1e300;
        double s = 0.0;
        for (const Body& b : family.bodies) {
            const double m = flat_hits_body(*f, b).margin / scale;
            s += 1.0 / (1.0 + std::exp(-6.0 * m));
        }
        return -s;
    };

    Vec params(d + d * k, 0.0);
    for (std::size_t i = 0; i < d; ++i) params[i] = start.base[i];
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < d; ++i) params[d + j * d + i] = start.dirs(i, j);

    Rng rng(mix_seed(cfg.seed, 0x72656669ULL));
    PatternOptions opt;
    opt.step0 = 0.5 * scale;
    opt.levels = 16;
    opt.random_dirs = 3;
    opt.max_evals = 3000;
    auto [best_params, best_score] = pattern_minimize(score, params, opt, rng);
    (void)best_score;
    const auto f = build(best_params);
    return f ? *f : start;
}

namespace {

struct SphereCoverage {
    GreatSphere sphere;
    std::vector<int> hits;
    double fraction = 0.0;
    double min_hit_margin = 0.0;
};

SphereCoverage evaluate_sphere(const GreatSphere& g, const std::vector<SphericalBody>& bodies,
                               double tol) {
    SphereCoverage out;
    out.sphere = g;
    double worst = 1e300;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const auto hr = great_sphere_hits_body(g, bodies[i], tol);
        if (hr.hit) {
            out.hits.push_back(static_cast<int>(i));
            worst = std::min(worst, hr.margin);
        }
    }
    out.fraction = static_cast<double>(out.hits.size()) / static_cast<double>(bodies.size());
    out.min_hit_margin = out.hits.empty() ? -1e300 : worst;
    return out;
}

bool sphere_coverage_beats(const SphereCoverage& a, const SphereCoverage& b) {
    if (a.hits.size() != b.hits.size()) return a.hits.size() > b.hits.size();
    return a.min_hit_margin > b.min_hit_margin;
}

GreatSphere refine_sphere_coverage(const GreatSphere& start, const std::vector<SphericalBody>& bodies,
                                   const SearchConfig& cfg) {
    const std::size_t amb = start.basis.rows();
    const std::size_t cols = start.basis.cols();
    auto build = [&](const Vec& params) -> std::optional<GreatSphere> {
        Mat m(amb, cols);
        for (std::size_t i = 0; i < amb; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = params[j * amb + i];
        try {
            return GreatSphere{orthonormalized(m)};
        } catch (const numeric_error&) {
            return std::nullopt;
        }
    };
    auto score = [&](const Vec& params) {
        const auto g = build(params);
        if (!g) return 1e300;
        double s = 0.0;
        for (const SphericalBody& b : bodies) {
            const double m = great_sphere_hits_body(*g, b).margin / 0.2;
            s += 1.0 / (1.0 + std::exp(-6.0 * m));
        }
        return -s;
    };
    Vec params(amb * cols);
    for (std::size_t i = 0; i < amb; ++i)
        for (std::size_t j = 0; j < cols; ++j) params[j * amb + i] = start.basis(i, j);
    Rng rng(mix_seed(cfg.seed, 0x73726566ULL));
    PatternOptions opt;
    opt.step0 = 0.4;
    opt.levels = 14;
    opt.random_dirs = 3;
    opt.max_evals = 1500;
    auto [best_params, best_score] = pattern_minimize(score, params, opt, rng);
    (void)best_score;
    const auto g = build(best_params);
    return g ? *g : start;
}

}  // namespace

BestFlatResult brute_force_best_flat(const Family& family, std::size_t k, int resolution) {
    family.validate();
    if (family.dim() > 3 || k > 2 || family.size() > 20)
        throw resource_error("brute_force_best_flat: instance beyond d<=3, k<=2, n<=20");
    FlatCoverage best;
    best.fraction = -1.0;
    long long scanned = 0;
    enumerate_grid_flats(family, k, resolution, [&](const KFlat& f) {
        if (++scanned > 20000000) throw resource_error("brute_force_best_flat: budget exceeded");
        // count hits with a plain pass before paying for full bookkeeping
        std::size_t count = 0;
        for (const Body& b : family.bodies)
            if (flat_hits_body(f, b).hit) ++count;
        if (best.fraction < 0 || count > best.hits.size() ||
            (count == best.hits.size() && false)) {
            if (static_cast<long long>(count) >= static_cast<long long>(best.hits.size()) || best.fraction < 0) {
                FlatCoverage cov = evaluate_flat(f, family, kGeomTol);
                if (best.fraction < 0 || coverage_beats(cov, best)) best = std::move(cov);
            }
        }
    });
    return BestFlatResult{best.flat, std::max(0.0, best.fraction)};
}

BestSphereResult brute_force_best_great_sphere(const std::vector<SphericalBody>& bodies,
                                               std::size_t k, int resolution) {
    if (bodies.empty()) throw input_error("brute_force_best_great_sphere: empty family");
    SphereCoverage best;
    best.fraction = -1.0;
    enumerate_grid_great_spheres(bodies.front().ambient_dim(), k, resolution, [&](const GreatSphere& g) {
        SphereCoverage cov = evaluate_sphere(g, bodies, kGeomTol);
        if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = std::move(cov);
    });
    return BestSphereResult{best.sphere, std::max(0.0, best.fraction)};
}

// --- heavy searches --------------------------------------------------------------

namespace {

// Direct (non-recursive) branch shared by both heavy searches: scan cached
// tuple witnesses for coverage, refine the best, and try a full-family
// multistart.
FlatCoverage direct_flat_branch(const Family& family, std::size_t k, const SearchConfig& cfg,
                                const ChargingTable& table) {
    FlatCoverage best;
    best.fraction = -1.0;
    std::vector<KFlat> warm;
    for (const TupleRecord& t : table.tuples) {
        if (!t.hit || !t.witness || t.witness->kind != WitnessKind::euclidean_flat) continue;
        const FlatCoverage cov = evaluate_flat(t.witness->flat, family, kGeomTol);
        if (best.fraction < 0 || coverage_beats(cov, best)) best = cov;
        if (warm.size() < 8) warm.push_back(t.witness->flat);
    }
    SearchConfig sc = cfg;
    sc.restarts = std::max(4, cfg.restarts / 4);
    const auto dec = exists_k_transversal(family, k, sc, warm.empty() ? nullptr : &warm);
    if (dec.witness) {
        const FlatCoverage cov = evaluate_flat(dec.witness->flat, family, kGeomTol);
        if (best.fraction < 0 || coverage_beats(cov, best)) best = cov;
    }
    if (best.fraction >= 0 && best.fraction < 1.0) {
        const KFlat refined = refine_flat_coverage(best.flat, family, cfg);
        const FlatCoverage cov = evaluate_flat(refined, family, kGeomTol);
        if (coverage_beats(cov, best)) best = cov;
    }
    return best;
}

SphereCoverage direct_sphere_branch(const std::vector<SphericalBody>& bodies, std::size_t k,
                                    const SearchConfig& cfg, const ChargingTable& table) {
    SphereCoverage best;
    best.fraction = -1.0;
    std::vector<GreatSphere> warm;
    for (const TupleRecord& t : table.tuples) {
        if (!t.hit || !t.witness || t.witness->kind != WitnessKind::great_sphere) continue;
        const SphereCoverage cov = evaluate_sphere(t.witness->sphere, bodies, kGeomTol);
        if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = cov;
        if (warm.size() < 8) warm.push_back(t.witness->sphere);
    }
    SearchConfig sc = cfg;
    sc.restarts = std::max(4, cfg.restarts / 4);
    const auto dec = great_sphere_transversal_bodies(bodies, k, sc, warm.empty() ? nullptr : &warm);
    if (dec.witness) {
        const SphereCoverage cov = evaluate_sphere(dec.witness->sphere, bodies, kGeomTol);
        if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = cov;
    }
    if (best.fraction >= 0 && best.fraction < 1.0) {
        const GreatSphere refined = refine_sphere_coverage(best.sphere, bodies, cfg);
        const SphereCoverage cov = evaluate_sphere(refined, bodies, kGeomTol);
        if (sphere_coverage_beats(cov, best)) best = cov;
    }
    return best;
}

// Candidate axis pigeonhole for the spherical k = 0 base: a tangent-plane
// grid of candidate points around the anchor, scored by antipodal-pair hits.
SphereCoverage axis_pigeonhole(const std::vector<SphericalBody>& bodies, const Vec& anchor,
                               double extent, int resolution) {
    const std::size_t amb = anchor.size();
    Mat col(amb, 1);
    col.set_col(0, anchor);
    const Mat tangent = orthonormal_complement(col);
    const std::size_t tdim = tangent.cols();

    int res = resolution;
    while (std::pow(static_cast<double>(res), static_cast<double>(tdim)) > 4096.0 && res > 2) res /= 2;
    const double a = std::tan(std::min(M_PI / 3, extent));

    SphereCoverage best;
    best.fraction = -1.0;
    auto consider = [&](const Vec& u) {
        Mat basis(amb, 1);
        basis.set_col(0, u);
        SphereCoverage cov = evaluate_sphere(GreatSphere{basis}, bodies, kGeomTol);
        if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = cov;
    };

    consider(anchor);
    for (const SphericalBody& b : bodies)
        if (!b.full_sphere) consider(b.center);

    std::vector<int> idx(tdim, 0);
    while (true) {
        Vec y(tdim);
        for (std::size_t t = 0; t < tdim; ++t) y[t] = -a + (idx[t] + 0.5) * (2 * a / res);
        consider(normalized(anchor + matvec(tangent, y)));
        std::size_t t = 0;
        while (t < tdim && ++idx[t] == res) idx[t++] = 0;
        if (t == tdim) break;
    }
    return best;
}

}  // namespace

HeavyFlatResult heavy_great_sphere_search(const std::vector<SphericalBody>& bodies, std::size_t k,
                                          const SearchConfig& cfg) {
    if (bodies.empty()) throw input_error("heavy_great_sphere_search: empty family");
    const std::size_t n = bodies.size();
    const std::size_t amb = bodies.front().ambient_dim();
    if (k + 1 >= amb) throw input_error("heavy_great_sphere_search: requires k < sphere dimension");

    HeavyFlatResult result;
    result.spherical = true;

    // tuple statistics on the full family
    TupleAlphaResult stats;
    bool have_stats = n >= k + 2;
    if (have_stats) stats = spherical_tuple_alpha(bodies, k, cfg);
    result.alpha = have_stats ? stats.alpha : 0.0;

    SphereCoverage best = have_stats ? direct_sphere_branch(bodies, k, cfg, stats.table)
                                     : SphereCoverage{};
    if (!have_stats) best.fraction = -1.0;

    // large bodies are handled by a single-point pigeonhole when they are
    // frequent, and deleted otherwise
    const double large_threshold = M_PI / 8;
    std::vector<int> large, kept;
    for (std::size_t i = 0; i < n; ++i) {
        const SphericalBody& b = bodies[i];
        if (b.full_sphere || b.outer > large_threshold)
            large.push_back(static_cast<int>(i));
        else
            kept.push_back(static_cast<int>(i));
    }
    const double c_large = std::max(0.02, result.alpha / (2.0 * (k + 2)));

    bool recursion_failed = false;
    LevelTrace trace;
    trace.projection_kind = "cap-boundary";

    try {
        if (static_cast<double>(large.size()) >= c_large * static_cast<double>(n) && !large.empty()) {
            // pigeonhole the large bodies around the most central one
            std::vector<SphericalBody> sub;
            for (int i : large) sub.push_back(bodies[i]);
            Vec anchor = sub.front().full_sphere ? Vec{} : sub.front().center;
            if (anchor.empty()) {
                anchor.assign(amb, 0.0);
                anchor[0] = 1.0;
            }
            SphereCoverage pigeon = axis_pigeonhole(sub, anchor, M_PI / 2, cfg.grid_fallback_resolution);
            if (pigeon.fraction >= 0 && !pigeon.hits.empty()) {
                // complete the axis to a great k-sphere and score on everyone
                Mat basis(amb, 1);
                basis.set_col(0, pigeon.sphere.basis.col(0));
                Mat rest = orthonormal_complement(basis);
                Mat full(amb, k + 1);
                full.set_col(0, basis.col(0));
                for (std::size_t j = 0; j < k; ++j) full.set_col(j + 1, rest.col(j));
                SphereCoverage cov = evaluate_sphere(GreatSphere{full}, bodies, kGeomTol);
                trace.projection_kind = "large-body-pigeonhole";
                trace.lifted_fraction = cov.fraction;
                if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = cov;
            }
        } else if (kept.size() >= k + 2) {
            std::vector<SphericalBody> pruned;
            for (int i : kept) pruned.push_back(bodies[i]);
            const TupleAlphaResult pruned_stats =
                kept.size() == n ? stats : spherical_tuple_alpha(pruned, k, cfg);
            const ChargingTable& table = pruned_stats.table;
            if (table.k0 >= 0 && table.total_hits > 0) {
                const SphericalBody& hub = pruned[table.k0];
                const double eps = std::max(1e-6, table.epsilon);
                trace.k0 = kept[table.k0];
                trace.epsilon = eps;

                if (k == 0) {
                    SphereCoverage cov = axis_pigeonhole(pruned, hub.center, 2 * eps + 0.1,
                                                         cfg.grid_fallback_resolution);
                    if (cov.fraction >= 0) {
                        SphereCoverage full_cov = evaluate_sphere(cov.sphere, bodies, kGeomTol);
                        trace.lifted_fraction = full_cov.fraction;
                        if (best.fraction < 0 || sphere_coverage_beats(full_cov, best)) best = full_cov;
                    }
                } else {
                    // thicken, project to the boundary of the charged cap, recurse
                    const Cap b0{hub.center, eps};
                    const CapFrame frame = CapFrame::make(b0);
                    std::vector<SphericalBody> projected;
                    for (std::size_t j = 0; j < pruned.size(); ++j) {
                        if (static_cast<int>(j) == table.k0) continue;
                        const SphericalBody grown = epsilon_neighborhood(pruned[j], eps);
                        projected.push_back(project_body_to_cap_boundary(b0, grown));
                    }
                    HeavyFlatResult rec = heavy_great_sphere_search(projected, k - 1, cfg);
                    trace.recursed_fraction = rec.fraction;

                    // lift: span of the cap axis and the embedded recursion basis
                    Mat lifted(amb, k + 1);
                    lifted.set_col(0, hub.center);
                    for (std::size_t j = 0; j < k; ++j)
                        lifted.set_col(j + 1, matvec(frame.basis, rec.sphere.basis.col(j)));
                    GreatSphere g_lift{orthonormalized(lifted)};

                    // members whose thickened bodies the lifted sphere hits
                    std::vector<int> recovered;
                    for (std::size_t j = 0; j < pruned.size(); ++j) {
                        if (static_cast<int>(j) == table.k0) continue;
                        const SphericalBody grown = epsilon_neighborhood(pruned[j], eps);
                        if (great_sphere_hits_body(g_lift, grown).hit) recovered.push_back(static_cast<int>(j));
                    }

                    // metric-net pigeonhole of closest sphere points
                    std::vector<Vec> feet;
                    feet.reserve(recovered.size());
                    for (int j : recovered) {
                        const auto mx = max_subspace_projection(g_lift, pruned[j]);
                        feet.push_back(closest_point_on_great_sphere(g_lift, mx.point));
                    }
                    Vec hub_axis = hub.center;
                    if (!feet.empty()) {
                        const auto net = metric_net(g_lift, std::max(eps / 2, 0.05));
                        std::vector<int> votes(net.size(), 0);
                        for (const Vec& f : feet) {
                            std::size_t bestp = 0;
                            double bestd = 1e300;
                            for (std::size_t p = 0; p < net.size(); ++p) {
                                const double d2 = angular_dist(f, net[p]);
                                if (d2 < bestd) {
                                    bestd = d2;
                                    bestp = p;
                                }
                            }
                            ++votes[bestp];
                        }
                        std::size_t popular = 0;
                        for (std::size_t p = 1; p < net.size(); ++p)
                            if (votes[p] > votes[popular]) popular = p;
                        hub_axis = net[popular];
                    }

                    // meridian-projection reduction to the k = 0 case
                    const MeridianProjection op = compose_meridian_projections(g_lift, hub_axis);
                    std::vector<SphericalBody> reduced;
                    std::vector<int> reduced_index;
                    for (int j : recovered) {
                        const SphericalBody grown = epsilon_neighborhood(pruned[j], eps);
                        SphericalBody img;
                        bool on_axis = false;
                        for (const Vec& s : spherical_body_samples(grown, 4)) {
                            const auto w = op.apply(s);
                            if (!w) {
                                on_axis = true;
                                break;
                            }
                            img.points.push_back(*w);
                        }
                        if (on_axis || img.points.empty()) {
                            img = SphericalBody::full(op.target.cols());
                        } else {
                            img.center = img.points.front();
                            img.offset = 0.0;
                        }
                        reduced.push_back(std::move(img));
                        reduced_index.push_back(j);
                    }
                    const auto hub_t = op.apply(hub_axis);
                    if (hub_t && !reduced.empty()) {
                        SphereCoverage z = axis_pigeonhole(reduced, *hub_t, 3 * eps + 0.3,
                                                           cfg.grid_fallback_resolution);
                        if (z.fraction >= 0) {
                            GreatSphere final_sphere = op.lift(z.sphere.basis.col(0));
                            SphereCoverage cov = evaluate_sphere(final_sphere, bodies, kGeomTol);
                            trace.lifted_fraction = cov.fraction;
                            if (best.fraction < 0 || sphere_coverage_beats(cov, best)) best = cov;
                        }
                    }
                    // the lifted sphere itself also pierces the thickened family
                    SphereCoverage raw = evaluate_sphere(g_lift, bodies, kGeomTol);
                    if (best.fraction < 0 || sphere_coverage_beats(raw, best)) best = raw;
                }
            }
        }
    } catch (const std::exception&) {
        recursion_failed = true;
    }

    result.trace.push_back(trace);
    result.degraded = recursion_failed;
    if (best.fraction < 0) {
        // nothing found at all: fall back to the first body's center axis
        Vec anchor = bodies.front().full_sphere ? Vec{} : bodies.front().center;
        if (anchor.empty()) {
            anchor.assign(amb, 0.0);
            anchor[0] = 1.0;
        }
        Mat basis(amb, k + 1);
        Mat col(amb, 1);
        col.set_col(0, anchor);
        basis.set_col(0, anchor);
        const Mat rest = orthonormal_complement(col);
        for (std::size_t j = 0; j < k; ++j) basis.set_col(j + 1, rest.col(j));
        best = evaluate_sphere(GreatSphere{basis}, bodies, kGeomTol);
        result.degraded = true;
    }

    result.sphere = best.sphere;
    result.hit_indices = best.hits;
    result.fraction = best.fraction;
    result.min_margin = best.min_hit_margin;
    return result;
}

HeavyFlatResult heavy_flat_search(const Family& family, std::size_t k, const SearchConfig& cfg) {
    family.validate();
    const std::size_t n = family.size();
    const std::size_t d = family.dim();
    if (n < k + 2) throw input_error("heavy_flat_search: family smaller than k+2");
    if (k >= d) throw input_error("heavy_flat_search: requires k < d");

    HeavyFlatResult result;
    const auto stats = tuple_alpha(family, k, cfg);
    result.alpha = stats.alpha;
    const ChargingTable& table = stats.table;

    FlatCoverage best = direct_flat_branch(family, k, cfg, table);

    bool recursion_failed = false;
    LevelTrace trace;
    trace.projection_kind = k == 0 ? "pigeonhole" : "central-projection";
    if (table.k0 >= 0 && table.total_hits > 0) {
        trace.k0 = table.k0;
        const double eps = table.epsilon;
        trace.epsilon = eps;
        try {
            const Vec hub_center = body_center(family.bodies[table.k0]);
            const double hub_radius = std::max(1e-9, body_outer_radius(family.bodies[table.k0]));
            if (k == 0) {
                const Ball region{hub_center, 2 * hub_radius};
                const auto pigeon = volumetric_pigeonhole(family.bodies, region,
                                                          cfg.grid_fallback_resolution);
                const FlatCoverage cov = evaluate_flat(KFlat::point(pigeon.point), family, kGeomTol);
                trace.lifted_fraction = cov.fraction;
                if (coverage_beats(cov, best) || best.fraction < 0) best = cov;
            } else {
                // inflate by the charged radius, recenter at the charged body,
                // and project radially to the unit sphere
                std::vector<SphericalBody> projected;
                Vec minus_hub = -1.0 * hub_center;
                for (std::size_t i = 0; i < n; ++i) {
                    if (static_cast<int>(i) == table.k0) continue;
                    Body moved = translate_body(inflate_body(family.bodies[i], hub_radius), minus_hub);
                    projected.push_back(central_project_to_unit_sphere(moved));
                }
                HeavyFlatResult rec = heavy_great_sphere_search(projected, k - 1, cfg);
                trace.recursed_fraction = rec.fraction;

                // the recursion basis spans the direction subspace of the flat
                Mat dirs(d, k);
                for (std::size_t j = 0; j < k; ++j) dirs.set_col(j, rec.sphere.basis.col(j));
                dirs = orthonormalized(dirs);
                const KFlat through_hub{hub_center, dirs};

                // recover members whose inflated bodies the subspace hits
                std::vector<Body> members;
                for (std::size_t i = 0; i < n; ++i) {
                    if (static_cast<int>(i) == table.k0) {
                        members.push_back(family.bodies[i]);
                        continue;
                    }
                    const Body grown = inflate_body(family.bodies[i], hub_radius);
                    if (flat_hits_body(through_hub, grown).hit) members.push_back(family.bodies[i]);
                }
                // offset search in the orthogonal complement
                const Mat w = complement_basis(through_hub);
                std::vector<Body> shadows;
                shadows.reserve(members.size());
                for (const Body& b : members)
                    shadows.push_back(project_body_to_complement(b, through_hub, w));
                const Ball region{Vec(w.cols(), 0.0), 2 * hub_radius};
                const auto pigeon = volumetric_pigeonhole(shadows, region, cfg.grid_fallback_resolution);
                const KFlat flat{hub_center + matvec(w, pigeon.point), dirs};
                const FlatCoverage cov = evaluate_flat(flat, family, kGeomTol);
                trace.lifted_fraction = cov.fraction;
                if (coverage_beats(cov, best) || best.fraction < 0) best = cov;
            }
        } catch (const std::exception&) {
            recursion_failed = true;
        }
    }
    result.trace.push_back(trace);

    if (best.fraction < 0) {
        best = evaluate_flat(KFlat::point(body_center(family.bodies.front())), family, kGeomTol);
        recursion_failed = true;
    }
    result.degraded = recursion_failed;
    result.flat = best.flat;
    result.hit_indices = best.hits;
    result.fraction = best.fraction;
    result.min_margin = best.min_hit_margin;
    return result;
}

}  // namespace helly
