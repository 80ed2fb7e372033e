#include "helly/transversal.hpp"

#include <algorithm>
#include <cmath>

#include "helly/errors.hpp"
#include "helly/optimize.hpp"
#include "helly/rng.hpp"

namespace helly {

namespace {

// Signed hit margin of a point against a body: how far the point sits
// inside (positive) or outside (negative) the body's hit tolerance.
double point_margin(const Vec& x, const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b)) return ball->radius - dist(x, ball->center);
    const FatBody& k = std::get<FatBody>(b);
    const auto proj = project_to_hull(k.vertices, x);
    return k.offset - proj.distance;
}

double family_scale(const std::vector<Body>& bodies) {
    Vec lo = body_center(bodies.front());
    Vec hi = lo;
    double rmax = 0.0;
    for (const Body& b : bodies) {
        const Vec c = body_center(b);
        for (std::size_t i = 0; i < c.size(); ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
        rmax = std::max(rmax, body_outer_radius(b));
    }
    return std::max(1.0, dist(lo, hi) + 2.0 * rmax);
}

struct PointSearchResult {
    Vec x;
    double margin = -1e300;
};

PointSearchResult best_point(const std::vector<Body>& bodies, const SearchConfig& cfg,
                             int levels, int restarts) {
    const std::size_t d = body_dim(bodies.front());

    // flat buffers make the all-balls case allocation-free in the hot loop
    bool all_balls = true;
    std::vector<double> centers;
    std::vector<double> radii;
    for (const Body& b : bodies) {
        if (const auto* ball = std::get_if<Ball>(&b)) {
            centers.insert(centers.end(), ball->center.begin(), ball->center.end());
            radii.push_back(ball->radius);
        } else {
            all_balls = false;
            break;
        }
    }
    auto f = [&](const Vec& x) {
        double worst = 1e300;
        if (all_balls) {
            for (std::size_t i = 0; i < radii.size(); ++i) {
                double s = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    const double t = x[a] - centers[i * d + a];
                    s += t * t;
                }
                worst = std::min(worst, radii[i] - std::sqrt(s));
            }
        } else {
            for (const Body& b : bodies) worst = std::min(worst, point_margin(x, b));
        }
        return -worst;  // minimize the negated min margin
    };

    Vec centroid(d, 0.0);
    for (const Body& b : bodies) centroid = centroid + body_center(b);
    centroid = (1.0 / bodies.size()) * centroid;
    const double scale = family_scale(bodies);

    Rng rng(mix_seed(cfg.seed, 0x706f696e74ULL));
    PatternOptions opt;
    opt.step0 = scale;
    opt.levels = levels;
    opt.random_dirs = 2;
    opt.max_evals = cfg.max_iter;

    PointSearchResult best;
    auto consider = [&](Vec start) {
        auto [x, v] = pattern_minimize(f, std::move(start), opt, rng);
        if (-v > best.margin) best = PointSearchResult{std::move(x), -v};
    };
    consider(centroid);
    consider(body_center(bodies.front()));
    for (int r = 0; r < restarts; ++r) {
        Vec start = body_center(bodies[r % bodies.size()]);
        Vec dir = rng.unit_vector(d);
        consider(start + (scale * rng.uniform()) * dir);
    }
    return best;
}

}  // namespace

TransversalDecision point_transversal_bodies(const std::vector<Body>& bodies,
                                             const SearchConfig& cfg) {
    if (bodies.empty()) throw input_error("point transversal: empty family");
    const auto res = best_point(bodies, cfg, 40, std::max(1, cfg.restarts / 8));
    TransversalDecision out;
    out.best_margin = res.margin;
    if (res.margin >= -cfg.tol) {
        TransversalWitness w;
        w.kind = WitnessKind::euclidean_flat;
        w.flat = KFlat::point(res.x);
        w.margin = res.margin;
        out.witness = std::move(w);
    }
    return out;
}

TransversalDecision exists_point_transversal(const std::vector<Ball>& balls,
                                             const SearchConfig& cfg) {
    std::vector<Body> bodies(balls.begin(), balls.end());
    return point_transversal_bodies(bodies, cfg);
}

namespace {

struct DirectionEval {
    double margin = -1e300;
    Vec foot;  // complement coordinates of the best offset
};

DirectionEval eval_direction(const Mat& u, const std::vector<Body>& bodies,
                             const SearchConfig& cfg, int levels, int restarts,
                             std::uint64_t salt) {
    const std::size_t d = body_dim(bodies.front());
    KFlat through_origin{Vec(d, 0.0), u};
    const Mat w = complement_basis(through_origin);
    std::vector<Body> projected;
    projected.reserve(bodies.size());
    for (const Body& b : bodies) projected.push_back(project_body_to_complement(b, through_origin, w));
    SearchConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, salt);
    const auto res = best_point(projected, sub, levels, restarts);
    return DirectionEval{res.margin, res.x};
}

KFlat lift_flat(const Mat& u, const Vec& foot, std::size_t d) {
    KFlat through_origin{Vec(d, 0.0), u};
    const Mat w = complement_basis(through_origin);
    return KFlat{matvec(w, foot), u};
}

}  // namespace

double family_min_margin(const KFlat& f, const Family& family) {
    double worst = 1e300;
    for (const Body& b : family.bodies) worst = std::min(worst, flat_hits_body(f, b).margin);
    return worst;
}

double sphere_family_min_margin(const GreatSphere& g, const std::vector<SphericalBody>& bodies) {
    double worst = 1e300;
    for (const SphericalBody& b : bodies) worst = std::min(worst, great_sphere_hits_body(g, b).margin);
    return worst;
}

std::vector<long long> flat_canonical_key(const KFlat& f, double resolution) {
    const std::size_t d = f.dim();
    std::vector<long long> key;
    key.reserve(d * d + d);
    // projector onto the direction subspace is parametrization-invariant
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double p = 0.0;
            for (std::size_t a = 0; a < f.k(); ++a) p += f.dirs(i, a) * f.dirs(j, a);
            key.push_back(std::llround(p / resolution));
        }
    // foot of the flat: the point closest to the origin
    Vec foot = f.base;
    for (std::size_t a = 0; a < f.k(); ++a) {
        const Vec u = f.dirs.col(a);
        const double c = dot(u, f.base);
        for (std::size_t i = 0; i < d; ++i) foot[i] -= c * u[i];
    }
    for (double v : foot) key.push_back(std::llround(v / resolution));
    return key;
}

TransversalDecision exists_k_transversal(const Family& family, std::size_t k,
                                         const SearchConfig& cfg,
                                         const std::vector<KFlat>* warm_starts,
                                         bool stop_at_feasible) {
    family.validate();
    const std::size_t d = family.dim();
    if (k > d) throw input_error("exists_k_transversal: k exceeds dimension");
    if (k == 0) return point_transversal_bodies(family.bodies, cfg);
    if (k == d) {
        TransversalWitness w;
        w.flat = KFlat{Vec(d, 0.0), Mat::identity(d)};
        w.margin = family_min_margin(w.flat, family);
        TransversalDecision out;
        out.best_margin = w.margin;
        out.witness = std::move(w);
        return out;
    }

    Rng rng(mix_seed(cfg.seed, 0x666c6174ULL));
    const int inner_levels = stop_at_feasible ? 10 : 22;
    const int outer_levels = stop_at_feasible ? 10 : 18;
    const int polish_levels = stop_at_feasible ? 18 : 40;

    std::vector<Mat> starts;
    if (warm_starts)
        for (const KFlat& f : *warm_starts)
            if (f.k() == k && f.dim() == d) starts.push_back(f.dirs);
    {
        // principal directions of the center cloud make a strong first guess
        Vec mean(d, 0.0);
        for (const Body& b : family.bodies) mean = mean + body_center(b);
        mean = (1.0 / family.size()) * mean;
        Mat cov(d, d);
        for (const Body& b : family.bodies) {
            const Vec c = body_center(b) - mean;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) cov(i, j) += c[i] * c[j];
        }
        Vec evals;
        Mat evecs;
        symmetric_eigen(cov, evals, evecs);
        Mat top(d, k);
        for (std::size_t j = 0; j < k; ++j) top.set_col(j, evecs.col(j));
        starts.push_back(top);
    }
    const int start_budget = stop_at_feasible ? std::min(std::max(1, cfg.restarts), 3)
                                              : std::max(1, cfg.restarts);
    while (static_cast<int>(starts.size()) < start_budget) {
        Mat g(d, k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) g(i, j) = rng.gaussian();
        try {
            starts.push_back(orthonormalized(g));
        } catch (const numeric_error&) {
        }
    }

    Mat best_u;
    double best_margin = -1e300;
    int restarts_used = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        Mat u = starts[s];
        double cur = eval_direction(u, family.bodies, cfg, inner_levels, 0, s).margin;
        double step = 1.0;
        for (int level = 0; level < outer_levels; ++level) {
            if (stop_at_feasible && cur >= cfg.tol) break;
            bool improved = true;
            while (improved) {
                improved = false;
                const int probes = 3 + static_cast<int>(d * k);
                for (int p = 0; p < probes; ++p) {
                    Mat g = u;
                    for (std::size_t i = 0; i < d; ++i)
                        for (std::size_t j = 0; j < k; ++j) g(i, j) += step * rng.gaussian();
                    Mat cand;
                    try {
                        cand = orthonormalized(g);
                    } catch (const numeric_error&) {
                        continue;
                    }
                    const double m = eval_direction(cand, family.bodies, cfg, inner_levels, 0,
                                                    (s << 8) ^ static_cast<std::uint64_t>(level))
                                         .margin;
                    if (m > cur + 1e-14) {
                        cur = m;
                        u = cand;
                        improved = true;
                    }
                }
            }
            step *= 0.5;
        }
        ++restarts_used;
        if (cur > best_margin) {
            best_margin = cur;
            best_u = u;
        }
        if (best_margin >= cfg.tol && (stop_at_feasible || s + 1 >= 2)) break;  // clear hit found
    }

    TransversalDecision out;
    out.heuristic_no = (k > 0 && k < d - 1);
    if (best_u.empty()) return out;

    const auto polished = eval_direction(best_u, family.bodies, cfg, polish_levels, 2, 0x9999);
    KFlat flat = lift_flat(best_u, polished.foot, d);
    double verified = family_min_margin(flat, family);
    // cached witnesses stay incumbents: reusing one can only improve the margin
    if (warm_starts)
        for (const KFlat& f : *warm_starts) {
            if (f.k() != k || f.dim() != d) continue;
            const double m = family_min_margin(f, family);
            if (m > verified) {
                verified = m;
                flat = f;
            }
        }
    out.best_margin = verified;
    if (verified >= -cfg.tol) {
        TransversalWitness w;
        w.kind = WitnessKind::euclidean_flat;
        w.flat = std::move(flat);
        w.margin = verified;
        w.restarts_used = restarts_used;
        out.witness = std::move(w);
        out.heuristic_no = false;
    }
    return out;
}

TransversalDecision exists_hyperplane_transversal(const std::vector<Ball>& balls,
                                                  const SearchConfig& cfg) {
    if (balls.empty()) throw input_error("exists_hyperplane_transversal: empty family");
    const std::size_t d = balls.front().center.size();
    if (d == 1) {
        // hyperplane is a point; fall back to the convex search
        std::vector<Body> bodies(balls.begin(), balls.end());
        return point_transversal_bodies(bodies, cfg);
    }

    auto slab_margin = [&](const Vec& u) {
        double lo = -1e300, hi = 1e300;
        for (const Ball& b : balls) {
            const double c = dot(u, b.center);
            lo = std::max(lo, c - b.radius);
            hi = std::min(hi, c + b.radius);
        }
        return 0.5 * (hi - lo);
    };

    Rng rng(mix_seed(cfg.seed, 0x68797065ULL));
    Vec best_u;
    double best = -1e300;
    std::vector<Vec> starts;
    for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        starts.push_back(e);
    }
    for (int r = 0; r < std::max(1, cfg.restarts); ++r) starts.push_back(rng.unit_vector(d));
    for (Vec u : starts) {
        double cur = slab_margin(u);
        double step = 0.7;
        for (int level = 0; level < 32; ++level) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (int p = 0; p < 6; ++p) {
                    Vec cand = u + step * rng.unit_vector(d);
                    const double n = norm(cand);
                    if (n < 1e-12) continue;
                    for (auto& x : cand) x /= n;
                    const double m = slab_margin(cand);
                    if (m > cur + 1e-15) {
                        cur = m;
                        u = cand;
                        improved = true;
                    }
                }
            }
            step *= 0.5;
        }
        if (cur > best) {
            best = cur;
            best_u = u;
        }
    }

    TransversalDecision out;
    if (best_u.empty()) return out;
    double lo = -1e300, hi = 1e300;
    for (const Ball& b : balls) {
        const double c = dot(best_u, b.center);
        lo = std::max(lo, c - b.radius);
        hi = std::min(hi, c + b.radius);
    }
    const double offset = 0.5 * (lo + hi);
    Mat ucol(d, 1);
    ucol.set_col(0, best_u);
    KFlat plane{offset * best_u, orthonormal_complement(ucol)};
    double verified = 1e300;
    for (const Ball& b : balls) verified = std::min(verified, flat_hits_ball(plane, b).margin);
    out.best_margin = verified;
    if (verified >= -cfg.tol) {
        TransversalWitness w;
        w.kind = WitnessKind::euclidean_flat;
        w.flat = std::move(plane);
        w.margin = verified;
        out.witness = std::move(w);
    }
    return out;
}

namespace {

// Caps pierced by codimension-1 great spheres: the subspace is its unit
// normal, and the margins are closed-form, so the multistart runs on flat
// buffers. This is the hot path of the spherical tuple scans.
TransversalDecision caps_codim1_transversal(const std::vector<SphericalBody>& bodies,
                                            std::size_t k, const SearchConfig& cfg,
                                            bool stop_at_feasible) {
    const std::size_t amb = bodies.front().ambient_dim();
    const std::size_t n = bodies.size();
    std::vector<double> centers(n * amb);
    std::vector<double> cosr(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < amb; ++a) centers[i * amb + a] = bodies[i].points[0][a];
        cosr[i] = std::cos(bodies[i].offset);
    }
    auto margin_at = [&](const Vec& u) {
        double worst = 1e300;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0;
            for (std::size_t a = 0; a < amb; ++a) c += u[a] * centers[i * amb + a];
            const double pv = std::sqrt(std::max(0.0, 1.0 - c * c));
            worst = std::min(worst, pv - cosr[i]);
        }
        return worst;
    };

    Rng rng(mix_seed(cfg.seed, 0x636f6431ULL));
    std::vector<Vec> starts;
    {
        // least-squares normal of the center cloud
        Mat cov(amb, amb);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < amb; ++a)
                for (std::size_t b = 0; b < amb; ++b)
                    cov(a, b) += centers[i * amb + a] * centers[i * amb + b];
        Vec evals;
        Mat evecs;
        symmetric_eigen(cov, evals, evecs);
        starts.push_back(evecs.col(amb - 1));
    }
    const int max_starts = std::max(2, std::min(cfg.restarts, 8));
    while (static_cast<int>(starts.size()) < max_starts) starts.push_back(rng.unit_vector(amb));

    Vec best_u;
    double best = -1e300;
    int restarts_used = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        Vec u = starts[s];
        double cur = margin_at(u);
        double step = 0.6;
        for (int level = 0; level < 24; ++level) {
            if (stop_at_feasible && cur >= cfg.tol) break;
            bool improved = true;
            while (improved) {
                improved = false;
                for (int p = 0; p < 6; ++p) {
                    Vec cand = u;
                    for (std::size_t a = 0; a < amb; ++a) cand[a] += step * rng.gaussian();
                    const double nn = norm(cand);
                    if (nn < 1e-12) continue;
                    for (auto& x : cand) x /= nn;
                    const double m = margin_at(cand);
                    if (m > cur + 1e-14) {
                        cur = m;
                        u = cand;
                        improved = true;
                    }
                }
            }
            step *= 0.5;
        }
        ++restarts_used;
        if (cur > best) {
            best = cur;
            best_u = u;
        }
        if (best >= cfg.tol && (stop_at_feasible || s + 1 >= 2)) break;
    }

    TransversalDecision out;
    out.heuristic_no = true;
    if (best_u.empty()) return out;
    Mat ncol(amb, 1);
    ncol.set_col(0, best_u);
    GreatSphere sphere{orthonormal_complement(ncol)};
    double verified = 1e300;
    for (std::size_t i = 0; i < n; ++i)
        verified = std::min(verified,
                            great_sphere_hits_cap(sphere, Cap{bodies[i].points[0], bodies[i].offset}).margin);
    out.best_margin = verified;
    if (verified >= -cfg.tol) {
        TransversalWitness w;
        w.kind = WitnessKind::great_sphere;
        w.sphere = std::move(sphere);
        w.margin = verified;
        w.restarts_used = restarts_used;
        out.witness = std::move(w);
        out.heuristic_no = false;
    }
    return out;
}

}  // namespace

TransversalDecision great_sphere_transversal_bodies(const std::vector<SphericalBody>& bodies,
                                                    std::size_t k, const SearchConfig& cfg,
                                                    const std::vector<GreatSphere>* warm_starts,
                                                    bool stop_at_feasible) {
    if (bodies.empty()) throw input_error("great sphere transversal: empty family");
    const std::size_t amb = bodies.front().ambient_dim();
    if (k + 1 > amb) throw input_error("great sphere transversal: k too large");

    if (k + 2 == amb && !warm_starts) {
        bool all_caps = true;
        for (const SphericalBody& b : bodies)
            if (b.full_sphere || b.points.size() != 1) all_caps = false;
        if (all_caps) return caps_codim1_transversal(bodies, k, cfg, stop_at_feasible);
    }

    auto margin_of = [&](const GreatSphere& g) { return sphere_family_min_margin(g, bodies); };

    Rng rng(mix_seed(cfg.seed, 0x73706865ULL));
    std::vector<Mat> starts;
    if (warm_starts)
        for (const GreatSphere& g : *warm_starts)
            if (g.basis.rows() == amb && g.basis.cols() == k + 1) starts.push_back(g.basis);
    {
        Mat cov(amb, amb);
        for (const SphericalBody& b : bodies)
            for (std::size_t i = 0; i < amb; ++i)
                for (std::size_t j = 0; j < amb; ++j) cov(i, j) += b.center[i] * b.center[j];
        Vec evals;
        Mat evecs;
        symmetric_eigen(cov, evals, evecs);
        Mat top(amb, k + 1);
        for (std::size_t j = 0; j <= k; ++j) top.set_col(j, evecs.col(j));
        starts.push_back(top);
    }
    while (static_cast<int>(starts.size()) < std::max(1, cfg.restarts)) {
        Mat g(amb, k + 1);
        for (std::size_t i = 0; i < amb; ++i)
            for (std::size_t j = 0; j <= k; ++j) g(i, j) = rng.gaussian();
        try {
            starts.push_back(orthonormalized(g));
        } catch (const numeric_error&) {
        }
    }

    Mat best_v;
    double best = -1e300;
    int restarts_used = 0;
    for (std::size_t s = 0; s < starts.size(); ++s) {
        Mat v = starts[s];
        double cur = margin_of(GreatSphere{v});
        double step = 0.8;
        for (int level = 0; level < 22; ++level) {
            bool improved = true;
            while (improved) {
                improved = false;
                const int probes = 3 + static_cast<int>(amb * (k + 1));
                for (int p = 0; p < probes; ++p) {
                    Mat g = v;
                    for (std::size_t i = 0; i < amb; ++i)
                        for (std::size_t j = 0; j <= k; ++j) g(i, j) += step * rng.gaussian();
                    Mat cand;
                    try {
                        cand = orthonormalized(g);
                    } catch (const numeric_error&) {
                        continue;
                    }
                    const double m = margin_of(GreatSphere{cand});
                    if (m > cur + 1e-14) {
                        cur = m;
                        v = cand;
                        improved = true;
                    }
                }
            }
            step *= 0.5;
        }
        ++restarts_used;
        if (cur > best) {
            best = cur;
            best_v = v;
        }
        if (best >= cfg.tol && s + 1 >= 2) break;
    }

    TransversalDecision out;
    out.heuristic_no = true;
    if (best_v.empty()) return out;
    if (warm_starts)
        for (const GreatSphere& g : *warm_starts) {
            if (g.basis.rows() != amb || g.basis.cols() != k + 1) continue;
            const double m = margin_of(g);
            if (m > best) {
                best = m;
                best_v = g.basis;
            }
        }
    GreatSphere sphere{best_v};
    out.best_margin = best;
    if (best >= -cfg.tol) {
        TransversalWitness w;
        w.kind = WitnessKind::great_sphere;
        w.sphere = std::move(sphere);
        w.margin = best;
        w.restarts_used = restarts_used;
        out.witness = std::move(w);
        out.heuristic_no = false;
    }
    return out;
}

TransversalDecision exists_great_sphere_transversal(const std::vector<Cap>& caps, std::size_t k,
                                                    const SearchConfig& cfg) {
    std::vector<SphericalBody> bodies;
    bodies.reserve(caps.size());
    for (const Cap& c : caps) bodies.push_back(SphericalBody::from_cap(c));
    return great_sphere_transversal_bodies(bodies, k, cfg, nullptr);
}

HitResult witness_hits_body(const TransversalWitness& w, const Body& b, double tol) {
    if (w.kind != WitnessKind::euclidean_flat)
        throw input_error("witness_hits_body: spherical witness against Euclidean body");
    return flat_hits_body(w.flat, b, tol);
}

// --- grid oracles ------------------------------------------------------------

namespace {

struct BBox {
    Vec lo, hi;
    double max_radius = 0.0;
};

BBox family_bbox(const Family& family) {
    BBox box;
    box.lo = body_center(family.bodies.front());
    box.hi = box.lo;
    for (const Body& b : family.bodies) {
        const Vec c = body_center(b);
        const double r = body_outer_radius(b);
        box.max_radius = std::max(box.max_radius, r);
        for (std::size_t i = 0; i < c.size(); ++i) {
            box.lo[i] = std::min(box.lo[i], c[i]);
            box.hi[i] = std::max(box.hi[i], c[i]);
        }
    }
    return box;
}

}  // namespace

namespace {

// Lat/long-style hemisphere grid of unit directions (antipodes identified).
std::vector<Vec> hemisphere_directions(int resolution) {
    std::vector<Vec> dirs;
    const int mt = std::max(2, resolution / 2);
    for (int i = 0; i <= mt; ++i) {
        const double th = (M_PI / 2) * i / mt;
        const int mp = std::max(1, static_cast<int>(std::ceil(resolution * std::sin(th))));
        for (int j = 0; j < (i == 0 ? 1 : mp); ++j) {
            const double ph = 2 * M_PI * j / std::max(1, mp);
            dirs.push_back(Vec{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
        }
    }
    return dirs;
}

}  // namespace

void enumerate_grid_flats(const Family& family, std::size_t k, int resolution,
                          const std::function<void(const KFlat&)>& fn) {
    family.validate();
    const std::size_t d = family.dim();
    if (resolution < 2) throw input_error("grid enumeration: resolution too small");
    const BBox box = family_bbox(family);
    const double pad = box.max_radius + 1e-9;

    if (k >= d) {
        fn(KFlat{Vec(d, 0.0), Mat::identity(d)});
        return;
    }
    if (k == 0) {
        std::vector<int> idx(d, 0);
        while (true) {
            Vec p(d);
            for (std::size_t a = 0; a < d; ++a) {
                const double lo = box.lo[a] - pad, hi = box.hi[a] + pad;
                p[a] = lo + (idx[a] + 0.5) * (hi - lo) / resolution;
            }
            fn(KFlat::point(p));
            std::size_t a = 0;
            while (a < d && ++idx[a] == resolution) idx[a++] = 0;
            if (a == d) break;
        }
        return;
    }

    std::vector<Mat> directions;
    if (d == 2 && k == 1) {
        for (int i = 0; i < resolution; ++i) {
            const double th = M_PI * i / resolution;
            Mat u(2, 1);
            u(0, 0) = std::cos(th);
            u(1, 0) = std::sin(th);
            directions.push_back(u);
        }
    } else if (d == 3 && k == 1) {
        for (const Vec& v : hemisphere_directions(resolution)) {
            Mat u(3, 1);
            u.set_col(0, v);
            directions.push_back(u);
        }
    } else if (d == 3 && k == 2) {
        for (const Vec& v : hemisphere_directions(resolution)) {
            Mat ncol(3, 1);
            ncol.set_col(0, v);
            directions.push_back(orthonormal_complement(ncol));
        }
    } else {
        throw resource_error("grid enumeration: unsupported (d, k) combination");
    }

    for (const Mat& u : directions) {
        KFlat through_origin{Vec(d, 0.0), u};
        const Mat w = complement_basis(through_origin);
        const std::size_t c = w.cols();
        Vec lo(c, 1e300), hi(c, -1e300);
        for (const Body& b : family.bodies) {
            const Vec pc = matvec_t(w, body_center(b));
            for (std::size_t a = 0; a < c; ++a) {
                lo[a] = std::min(lo[a], pc[a] - pad);
                hi[a] = std::max(hi[a], pc[a] + pad);
            }
        }
        std::vector<int> idx(c, 0);
        while (true) {
            Vec foot(c);
            for (std::size_t a = 0; a < c; ++a)
                foot[a] = lo[a] + (idx[a] + 0.5) * (hi[a] - lo[a]) / resolution;
            fn(KFlat{matvec(w, foot), u});
            std::size_t a = 0;
            while (a < c && ++idx[a] == resolution) idx[a++] = 0;
            if (a == c) break;
        }
    }
}

void enumerate_grid_great_spheres(std::size_t ambient, std::size_t k, int resolution,
                                  const std::function<void(const GreatSphere&)>& fn) {
    if (ambient == 2 && k == 0) {
        for (int i = 0; i < resolution; ++i) {
            const double th = M_PI * i / resolution;
            Mat u(2, 1);
            u(0, 0) = std::cos(th);
            u(1, 0) = std::sin(th);
            fn(GreatSphere{u});
        }
        return;
    }
    if (ambient == 3 && (k == 0 || k == 1)) {
        for (const Vec& v : hemisphere_directions(resolution)) {
            if (k == 0) {
                Mat m(3, 1);
                m.set_col(0, v);
                fn(GreatSphere{m});
            } else {
                Mat ncol(3, 1);
                ncol.set_col(0, v);
                fn(GreatSphere{orthonormal_complement(ncol)});
            }
        }
        return;
    }
    throw resource_error("sphere grid enumeration: only S^1 and S^2 supported");
}

GridOracleResult grid_oracle_k_transversal(const Family& family, std::size_t k, int resolution) {
    family.validate();
    const std::size_t d = family.dim();
    const std::size_t n = family.size();
    if (d > 3 || k > 2 || n > 20) throw resource_error("grid oracle: instance beyond d<=3, k<=2, n<=20");

    GridOracleResult out;
    enumerate_grid_flats(family, k, resolution, [&](const KFlat& f) {
        ++out.flats_scanned;
        if (out.flats_scanned > 20000000) throw resource_error("grid oracle: budget exceeded");
        const double m = family_min_margin(f, family);
        if (m > out.best_margin) {
            out.best_margin = m;
            out.best_flat = f;
        }
    });

    if (out.best_margin >= -kGeomTol) {
        TransversalWitness w;
        w.kind = WitnessKind::euclidean_flat;
        w.flat = out.best_flat;
        w.margin = out.best_margin;
        out.witness = std::move(w);
    }
    return out;
}

SphereGridOracleResult grid_oracle_great_sphere(const std::vector<Cap>& caps, std::size_t k,
                                                int resolution) {
    if (caps.empty()) throw input_error("sphere grid oracle: empty family");
    const std::size_t amb = caps.front().center.size();
    SphereGridOracleResult out;

    enumerate_grid_great_spheres(amb, k, resolution, [&](const GreatSphere& g) {
        ++out.scanned;
        double worst = 1e300;
        for (const Cap& c : caps) worst = std::min(worst, great_sphere_hits_cap(g, c).margin);
        if (worst > out.best_margin) {
            out.best_margin = worst;
            out.best_sphere = g;
        }
    });

    if (out.best_margin >= -kGeomTol) {
        TransversalWitness w;
        w.kind = WitnessKind::great_sphere;
        w.sphere = out.best_sphere;
        w.margin = out.best_margin;
        out.witness = std::move(w);
    }
    return out;
}

}  // namespace helly
