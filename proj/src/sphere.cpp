#include "helly/sphere.hpp"

#include <algorithm>
#include <cmath>

#include "helly/errors.hpp"
#include "helly/rng.hpp"

namespace helly {

namespace {

double clamp1(double x) { return std::max(-1.0, std::min(1.0, x)); }

void require_unit(const Vec& v, const char* what) {
    if (std::fabs(norm(v) - 1.0) > 1e-6) throw input_error(std::string(what) + ": vector is not unit length");
}

// Deterministic tangent directions at p (unit): the orthonormal complement
// columns and their negations.
std::vector<Vec> tangent_directions(const Vec& p) {
    Mat col(p.size(), 1);
    col.set_col(0, p);
    const Mat comp = orthonormal_complement(col);
    std::vector<Vec> dirs;
    dirs.reserve(2 * comp.cols());
    for (std::size_t j = 0; j < comp.cols(); ++j) {
        Vec t = comp.col(j);
        dirs.push_back(t);
        dirs.push_back(-1.0 * t);
    }
    return dirs;
}

}  // namespace

GreatSphere GreatSphere::make(Mat basis) {
    if (basis.cols() < 1) throw input_error("GreatSphere: needs at least one basis column");
    if (basis.cols() > basis.rows()) throw input_error("GreatSphere: subspace dimension too large");
    if (orthonormality_defect(basis) >= 1e-9) throw input_error("GreatSphere: basis not orthonormal");
    return GreatSphere{std::move(basis)};
}

SphericalBody SphericalBody::from_cap(const Cap& c) {
    require_unit(c.center, "Cap");
    if (c.radius < 0 || c.radius > M_PI + 1e-12) throw input_error("Cap: radius outside [0, pi]");
    SphericalBody b;
    b.points = {c.center};
    b.offset = c.radius;
    b.center = c.center;
    b.inner = c.radius;
    b.outer = c.radius;
    return b;
}

SphericalBody SphericalBody::full(std::size_t ambient) {
    SphericalBody b;
    b.full_sphere = true;
    b.center.assign(ambient, 0.0);
    if (ambient > 0) b.center[0] = 1.0;
    b.inner = M_PI;
    b.outer = M_PI;
    return b;
}

double angular_dist(const Vec& u, const Vec& v) {
    require_unit(u, "angular_dist");
    require_unit(v, "angular_dist");
    return std::acos(clamp1(dot(u, v)));
}

Mat rotation_between(const Vec& u, const Vec& v) {
    require_unit(u, "rotation_between");
    require_unit(v, "rotation_between");
    const double c = clamp1(dot(u, v));
    if (c > 1.0 - 1e-14) return Mat::identity(u.size());
    if (c < -1.0 + 1e-14) throw input_error("rotation_between: undefined for antipodal points");
    // orthonormal pair (u, w) spanning the rotation plane
    Vec w = v - c * u;
    w = normalized(w);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const std::size_t n = u.size();
    Mat r = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) += (c - 1.0) * (u[i] * u[j] + w[i] * w[j]) + s * (w[i] * u[j] - u[i] * w[j]);
    return r;
}

Vec proj_cap_boundary(const Cap& cap, const Vec& u) {
    require_unit(cap.center, "proj_cap_boundary");
    require_unit(u, "proj_cap_boundary");
    const double c = dot(u, cap.center);
    Vec s = u - c * cap.center;
    const double sn = norm(s);
    if (sn < 1e-12) throw input_error("proj_cap_boundary: undefined on the cap axis");
    for (auto& x : s) x /= sn;
    return std::cos(cap.radius) * cap.center + std::sin(cap.radius) * s;
}

CapFrame CapFrame::make(const Cap& cap) {
    require_unit(cap.center, "CapFrame");
    Mat col(cap.center.size(), 1);
    col.set_col(0, cap.center);
    return CapFrame{cap, orthonormal_complement(col)};
}

Vec CapFrame::project(const Vec& u) const {
    Vec w = matvec_t(basis, u);
    const double n = norm(w);
    if (n < 1e-12) throw input_error("CapFrame::project: point on the cap axis");
    for (auto& x : w) x /= n;
    return w;
}

Vec CapFrame::embed(const Vec& w) const {
    return std::cos(cap.radius) * cap.center + std::sin(cap.radius) * matvec(basis, w);
}

std::optional<double> projected_cap_radius(double r, double t) {
    if (r < 0) throw input_error("projected_cap_radius: negative radius");
    if (t <= r + 1e-15 || t >= M_PI - r - 1e-15) return std::nullopt;
    const double s = std::sin(r) / std::sin(t);
    return std::asin(clamp1(s));
}

SphericalBody project_body_to_cap_boundary(const Cap& cap, const SphericalBody& k,
                                           int boundary_samples) {
    const std::size_t target_dim = cap.center.size() - 1;
    if (k.full_sphere) return SphericalBody::full(target_dim);
    Vec anti = -1.0 * cap.center;
    if (spherical_body_contains(k, cap.center) || spherical_body_contains(k, anti))
        return SphericalBody::full(target_dim);

    const CapFrame frame = CapFrame::make(cap);
    std::vector<Vec> projected;
    projected.reserve(k.points.size() * (1 + 2 * boundary_samples));
    for (const Vec& p : k.points) {
        projected.push_back(frame.project(p));
        if (k.offset > 1e-15) {
            const auto dirs = tangent_directions(p);
            int used = 0;
            for (const Vec& t : dirs) {
                if (used >= 2 * boundary_samples) break;
                Vec q = std::cos(k.offset) * p + std::sin(k.offset) * t;
                const double axis = std::fabs(dot(q, cap.center));
                if (axis > 1.0 - 1e-12) continue;
                projected.push_back(frame.project(q));
                ++used;
            }
        }
    }

    // pruning to hull generators keeps downstream predicates cheap
    SphericalBody out = spherical_hull(projected);
    if (out.full_sphere) return SphericalBody::full(target_dim);

    const double t = angular_dist(cap.center, k.center);
    out.center = frame.project(k.center);
    if (const auto inner = projected_cap_radius(k.inner, t))
        out.inner = *inner;
    else
        out.inner = 0.0;
    if (const auto outer = projected_cap_radius(k.outer, t))
        out.outer = *outer;
    else
        out.outer = M_PI;  // loose but valid containment certificate
    return out;
}

Vec gnomonic(const Vec& w, const Vec& u) {
    require_unit(w, "gnomonic");
    require_unit(u, "gnomonic");
    const double c = dot(u, w);
    if (c <= 1e-12) throw input_error("gnomonic: point outside the open hemisphere at w");
    Mat col(w.size(), 1);
    col.set_col(0, w);
    const Mat tangent = orthonormal_complement(col);
    return matvec_t(tangent, (1.0 / c) * u);
}

Vec gnomonic_inverse(const Vec& w, const Vec& x) {
    require_unit(w, "gnomonic_inverse");
    Mat col(w.size(), 1);
    col.set_col(0, w);
    const Mat tangent = orthonormal_complement(col);
    return normalized(w + matvec(tangent, x));
}

std::optional<Vec> open_hemisphere_direction(const std::vector<Vec>& points) {
    if (points.empty()) throw input_error("open_hemisphere_direction: empty input");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (dot(points[i], points[j]) < -1.0 + 1e-12) return std::nullopt;

    Vec mean(points[0].size(), 0.0);
    for (const Vec& p : points) mean = mean + p;
    Vec u = norm(mean) > 1e-12 ? normalized(mean) : points[0];
    auto score = [&](const Vec& dir) {
        double worst = 1e300;
        for (const Vec& p : points) worst = std::min(worst, dot(dir, p));
        return worst;
    };
    double best = score(u);
    Rng rng(0x5eedu);
    double step = 0.5;
    for (int level = 0; level < 40 && best <= 1e-9; ++level) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (int probe = 0; probe < 8; ++probe) {
                Vec cand = u + step * rng.unit_vector(u.size());
                const double n = norm(cand);
                if (n < 1e-12) continue;
                for (auto& x : cand) x /= n;
                const double s = score(cand);
                if (s > best + 1e-15) {
                    best = s;
                    u = cand;
                    improved = true;
                }
            }
        }
        step *= 0.5;
    }
    if (best <= 1e-9) return std::nullopt;
    return u;
}

SphericalBody spherical_hull(const std::vector<Vec>& points) {
    if (points.empty()) throw input_error("spherical_hull: empty input");
    for (const Vec& p : points) require_unit(p, "spherical_hull");
    const auto hemi = open_hemisphere_direction(points);
    if (!hemi) return SphericalBody::full(points[0].size());

    // prune generators already inside the hull of the others, to a fixpoint
    std::vector<Vec> kept = points;
    bool changed = true;
    while (changed && kept.size() > 1) {
        changed = false;
        for (std::size_t i = 0; i < kept.size() && kept.size() > 1;) {
            std::vector<Vec> others;
            others.reserve(kept.size() - 1);
            for (std::size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            const auto proj = project_to_cone(others, kept[i]);
            const double cosang =
                norm(proj.point) > 1e-12 ? clamp1(dot(kept[i], normalized(proj.point))) : -1.0;
            if (std::acos(cosang) <= 1e-10) {
                kept.erase(kept.begin() + static_cast<long>(i));
                changed = true;
            } else {
                ++i;
            }
        }
    }

    SphericalBody out;
    out.points = kept;
    Vec mean(kept[0].size(), 0.0);
    for (const Vec& p : kept) mean = mean + p;
    out.center = norm(mean) > 1e-12 ? normalized(mean) : kept[0];
    out.inner = 0.0;
    out.outer = 0.0;
    for (const Vec& p : kept) out.outer = std::max(out.outer, angular_dist(out.center, p));
    return out;
}

SphericalBody epsilon_neighborhood(const SphericalBody& k, double eps) {
    if (eps < 0) throw input_error("epsilon_neighborhood: negative eps");
    if (k.full_sphere) return k;
    if (k.outer + eps >= M_PI) return SphericalBody::full(k.ambient_dim());
    SphericalBody out = k;
    out.offset += eps;
    out.inner += eps;
    out.outer += eps;
    return out;
}

double dist_point_spherical_body(const Vec& u, const SphericalBody& k) {
    require_unit(u, "dist_point_spherical_body");
    if (k.full_sphere) return 0.0;
    const auto proj = project_to_cone(k.points, u);
    double hull_angle;
    if (norm(proj.point) > 1e-12) {
        hull_angle = std::acos(clamp1(dot(u, normalized(proj.point))));
    } else {
        hull_angle = 1e300;
        for (const Vec& p : k.points) hull_angle = std::min(hull_angle, angular_dist(u, p));
    }
    return std::max(0.0, hull_angle - k.offset);
}

bool spherical_body_contains(const SphericalBody& k, const Vec& u, double tol) {
    return dist_point_spherical_body(u, k) <= tol;
}

Vec sample_spherical_body(const SphericalBody& k, Rng& rng) {
    if (k.full_sphere) return rng.unit_vector(k.ambient_dim());
    Vec acc(k.points[0].size(), 0.0);
    for (const Vec& p : k.points) {
        const double w = -std::log(std::max(1e-300, rng.uniform()));
        acc = acc + w * p;
    }
    Vec u = normalized(acc);
    if (k.offset > 1e-15) {
        Vec g = rng.gaussian_vector(u.size());
        Vec t = g - dot(g, u) * u;
        const double tn = norm(t);
        if (tn > 1e-12) {
            const double a = k.offset * rng.uniform();
            u = std::cos(a) * u + (std::sin(a) / tn) * t;
        }
    }
    return u;
}

std::vector<Vec> spherical_body_samples(const SphericalBody& k, int per_point) {
    std::vector<Vec> out;
    if (k.full_sphere) return out;
    out.reserve(k.points.size() * (1 + 2 * per_point));
    for (const Vec& p : k.points) {
        out.push_back(p);
        if (k.offset > 1e-15) {
            const auto dirs = tangent_directions(p);
            int used = 0;
            for (const Vec& t : dirs) {
                if (used >= 2 * per_point) break;
                out.push_back(std::cos(k.offset) * p + std::sin(k.offset) * t);
                ++used;
            }
        }
    }
    return out;
}

void measure_certificates(SphericalBody& k, int n_dirs, std::uint64_t seed) {
    if (k.full_sphere) return;
    Rng rng(seed);
    const std::size_t n = k.ambient_dim();
    // outer: max over generators plus offset
    double outer = 0.0;
    for (const Vec& p : k.points) outer = std::max(outer, angular_dist(k.center, p));
    k.outer = std::min(M_PI, outer + k.offset);
    // inner: bisection along sampled geodesic rays from the center
    double inner = M_PI;
    for (int i = 0; i < n_dirs; ++i) {
        Vec g = rng.gaussian_vector(n);
        Vec t = g - dot(g, k.center) * k.center;
        const double tn = norm(t);
        if (tn < 1e-12) continue;
        for (auto& x : t) x /= tn;
        double lo = 0.0, hi = std::min(M_PI / 2, k.outer + 1e-12);
        if (!spherical_body_contains(k, k.center, 1e-9)) {
            inner = 0.0;
            break;
        }
        for (int it = 0; it < 40; ++it) {
            const double mid = 0.5 * (lo + hi);
            Vec q = std::cos(mid) * k.center + std::sin(mid) * t;
            if (spherical_body_contains(k, q, 1e-9))
                lo = mid;
            else
                hi = mid;
        }
        inner = std::min(inner, lo);
    }
    k.inner = inner == M_PI ? 0.0 : inner;
}

HitResult great_sphere_hits_cap(const GreatSphere& g, const Cap& c, double tol) {
    require_unit(c.center, "great_sphere_hits_cap");
    const double pnorm = norm(matvec_t(g.basis, c.center));
    const double margin = pnorm - std::cos(c.radius);
    return HitResult{margin >= -tol, margin};
}

SubspaceProjectionMax max_subspace_projection(const GreatSphere& g, const SphericalBody& k) {
    if (k.full_sphere) throw input_error("max_subspace_projection: full-sphere body");

    if (k.points[0].size() == 2 && k.points.size() > 1) {
        // hulls on S^1 are arcs: the maximum of |P_V u| over an arc is
        // attained at an endpoint or at an interior critical angle
        const double ref = std::atan2(k.points[0][1], k.points[0][0]);
        double lo = 0.0, hi = 0.0;
        for (const Vec& p : k.points) {
            double th = std::atan2(p[1], p[0]) - ref;
            while (th > M_PI) th -= 2 * M_PI;
            while (th < -M_PI) th += 2 * M_PI;
            lo = std::min(lo, th);
            hi = std::max(hi, th);
        }
        SubspaceProjectionMax out;
        auto try_angle = [&](double th) {
            const Vec u{std::cos(ref + th), std::sin(ref + th)};
            const double v = norm(matvec_t(g.basis, u));
            if (v > out.value) {
                out.value = v;
                out.point = u;
            }
        };
        try_angle(lo);
        try_angle(hi);
        if (g.basis.cols() == 1) {
            const double phi = std::atan2(g.basis(1, 0), g.basis(0, 0));
            for (double crit : {phi, phi + M_PI, phi - M_PI, phi + 2 * M_PI, phi - 2 * M_PI}) {
                const double th = crit - ref;
                if (th >= lo - 1e-15 && th <= hi + 1e-15) try_angle(th);
            }
        }
        return out;
    }

    double best = 0.0;
    std::size_t besti = 0;
    for (std::size_t i = 0; i < k.points.size(); ++i) {
        const double v = norm(matvec_t(g.basis, k.points[i]));
        if (v > best) {
            best = v;
            besti = i;
        }
    }
    Vec w(k.points.size(), 0.0);
    w[besti] = 1.0;
    auto point_of = [&](const Vec& lam) -> std::optional<Vec> {
        Vec acc(k.points[0].size(), 0.0);
        double tot = 0.0;
        for (std::size_t i = 0; i < lam.size(); ++i) {
            const double li = std::max(0.0, lam[i]);
            tot += li;
            acc = acc + li * k.points[i];
        }
        if (tot < 1e-12 || norm(acc) < 1e-12) return std::nullopt;
        return normalized(acc);
    };
    if (k.points.size() > 1) {
        auto value = [&](const Vec& lam) {
            const auto p = point_of(lam);
            return p ? norm(matvec_t(g.basis, *p)) : -1.0;
        };
        Rng rng(0xc0fe);
        double step = 0.5;
        for (int level = 0; level < 24; ++level) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t i = 0; i < w.size(); ++i) {
                    for (double sgn : {1.0, -1.0}) {
                        Vec cand = w;
                        cand[i] = std::max(0.0, cand[i] + sgn * step);
                        const double v = value(cand);
                        if (v > best + 1e-14) {
                            best = v;
                            w = cand;
                            improved = true;
                        }
                    }
                }
                for (int r = 0; r < 4; ++r) {
                    Vec cand = w;
                    for (auto& x : cand) x = std::max(0.0, x + step * rng.gaussian());
                    const double v = value(cand);
                    if (v > best + 1e-14) {
                        best = v;
                        w = cand;
                        improved = true;
                    }
                }
            }
            step *= 0.5;
        }
    }
    SubspaceProjectionMax out;
    out.value = best;
    const auto p = point_of(w);
    out.point = p ? *p : k.points[besti];
    return out;
}

HitResult great_sphere_hits_body(const GreatSphere& g, const SphericalBody& k, double tol) {
    if (k.full_sphere) return HitResult{true, M_PI};
    const auto mx = max_subspace_projection(g, k);
    const double margin = k.offset - std::acos(clamp1(mx.value));
    return HitResult{margin >= -tol, margin};
}

Vec closest_point_on_great_sphere(const GreatSphere& g, const Vec& u) {
    Vec coords = matvec_t(g.basis, u);
    if (norm(coords) < 1e-12) coords = [&] {
        Vec e(g.basis.cols(), 0.0);
        e[0] = 1.0;
        return e;
    }();
    return matvec(g.basis, normalized(coords));
}

namespace {

// delta-net of the unit sphere S^sdim in R^{sdim+1}, recursive lat/long grid
void net_on_unit_sphere(int sdim, double delta, std::vector<Vec>& out) {
    delta = std::max(delta, 1e-3);
    if (sdim == 0) {
        out.push_back(Vec{1.0});
        out.push_back(Vec{-1.0});
        return;
    }
    const double h = delta / std::sqrt(2.0);
    const int m = std::max(1, static_cast<int>(std::ceil(M_PI / h)));
    for (int j = 0; j <= m; ++j) {
        const double theta = M_PI * j / m;
        const double st = std::sin(theta), ct = std::cos(theta);
        if (st < 1e-9) {
            Vec p(sdim + 1, 0.0);
            p[0] = ct > 0 ? 1.0 : -1.0;
            out.push_back(p);
            continue;
        }
        std::vector<Vec> sub;
        net_on_unit_sphere(sdim - 1, std::min(M_PI, h / st), sub);
        for (const Vec& y : sub) {
            Vec p(sdim + 1, 0.0);
            p[0] = ct;
            for (int a = 0; a < sdim; ++a) p[a + 1] = st * y[a];
            out.push_back(p);
        }
    }
}

}  // namespace

std::vector<Vec> metric_net(const GreatSphere& g, double delta) {
    if (delta <= 0) throw input_error("metric_net: delta must be positive");
    std::vector<Vec> local;
    net_on_unit_sphere(static_cast<int>(g.k()), delta, local);
    std::vector<Vec> out;
    out.reserve(local.size());
    for (const Vec& y : local) out.push_back(matvec(g.basis, y));
    return out;
}

std::optional<Vec> MeridianProjection::apply_embedded(const Vec& x) const {
    Vec r = x;
    for (std::size_t j = 0; j < removed.cols(); ++j) {
        const Vec u = removed.col(j);
        const double c = dot(u, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * u[i];
    }
    const double n = norm(r);
    if (n < 1e-12) return std::nullopt;
    for (auto& v : r) v /= n;
    return r;
}

std::optional<Vec> MeridianProjection::apply(const Vec& x) const {
    const auto e = apply_embedded(x);
    if (!e) return std::nullopt;
    return matvec_t(target, *e);
}

GreatSphere MeridianProjection::lift(const Vec& target_coords) const {
    const Vec e = matvec(target, target_coords);
    Mat basis(removed.rows(), removed.cols() + 1);
    for (std::size_t j = 0; j < removed.cols(); ++j) basis.set_col(j, removed.col(j));
    basis.set_col(removed.cols(), normalized(e));
    return GreatSphere::make(orthonormalized(basis));
}

MeridianProjection compose_meridian_projections(const GreatSphere& f, const Vec& u) {
    require_unit(u, "compose_meridian_projections");
    if (std::fabs(norm(matvec_t(f.basis, u)) - 1.0) > 1e-6)
        throw input_error("compose_meridian_projections: u not on the great sphere");
    const std::size_t amb = f.basis.rows();
    const std::size_t k = f.k();
    // orthonormal basis of span(f) starting at u; the remainder are the
    // meridian axes to project out
    std::vector<Vec> cols{u};
    for (std::size_t j = 0; j < f.basis.cols() && cols.size() < k + 1; ++j) {
        Vec v = f.basis.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : cols) {
                const double c = dot(q, v);
                for (std::size_t i = 0; i < amb; ++i) v[i] -= c * q[i];
            }
        const double n = norm(v);
        if (n < 1e-8) continue;
        for (auto& x : v) x /= n;
        cols.push_back(v);
    }
    if (cols.size() != k + 1) throw numeric_error("compose_meridian_projections: basis completion failed");
    Mat removed(amb, k);
    for (std::size_t j = 0; j < k; ++j) removed.set_col(j, cols[j + 1]);
    const Mat target = k == 0 ? Mat::identity(amb) : orthonormal_complement(removed);
    return MeridianProjection{removed, target};
}

SphericalBody central_project_to_unit_sphere(const Body& b, int boundary_samples) {
    const std::size_t d = body_dim(b);
    Vec origin(d, 0.0);
    if (body_contains(b, origin)) return SphericalBody::full(d);

    if (const auto* ball = std::get_if<Ball>(&b)) {
        const double t = norm(ball->center);
        return SphericalBody::from_cap(Cap{normalized(ball->center), std::asin(clamp1(ball->radius / t))});
    }
    const FatBody& k = std::get<FatBody>(b);
    SphericalBody out;
    for (const Vec& v : k.vertices) {
        out.points.push_back(normalized(v));
        if (k.offset > 1e-15) {
            const auto dirs = tangent_directions(normalized(v));
            int used = 0;
            for (const Vec& t : dirs) {
                if (used >= 2 * boundary_samples) break;
                Vec q = v + k.offset * t;
                if (norm(q) < 1e-12) continue;
                out.points.push_back(normalized(q));
                ++used;
            }
        }
    }
    const double t = norm(k.center);
    out.center = normalized(k.center);
    if (t > k.outer + 1e-15) {
        out.inner = std::asin(clamp1(k.inner / t));
        out.outer = std::asin(clamp1(k.outer / t));
    } else {
        out.inner = t > k.inner + 1e-15 ? std::asin(clamp1(k.inner / t)) : 0.0;
        // the body avoids the origin, so a separating direction bounds it
        // inside an open hemisphere; anchor the certificate at the center
        const auto near = project_to_hull(k.vertices, origin);
        double outer = M_PI;
        if (near.distance > k.offset + 1e-12) {
            const Vec sep = normalized(near.point);
            outer = std::min(M_PI, angular_dist(out.center, sep) + M_PI / 2);
        }
        out.outer = outer;
    }
    return out;
}

Vec sample_cap_uniform(const Cap& cap, Rng& rng) {
    const std::size_t n = cap.center.size();
    const int sphere_dim = static_cast<int>(n) - 1;
    // colatitude with density ~ sin^{d-1} by rejection
    double a = 0.0;
    const double env = std::sin(std::min(cap.radius, M_PI / 2));
    for (int tries = 0; tries < 1000; ++tries) {
        a = cap.radius * rng.uniform();
        const double w = std::pow(std::sin(a) / std::max(env, 1e-12), sphere_dim - 1);
        if (rng.uniform() <= w) break;
    }
    while (true) {
        Vec g = rng.gaussian_vector(n);
        Vec t = g - dot(g, cap.center) * cap.center;
        const double tn = norm(t);
        if (tn < 1e-12) continue;
        return normalized(std::cos(a) * cap.center + (std::sin(a) / tn) * t);
    }
}

double spherical_overlap_fraction(const SphericalBody& k, const Cap& probe, int samples,
                                  std::uint64_t seed) {
    Rng rng(seed);
    int inside = 0;
    for (int s = 0; s < samples; ++s)
        if (spherical_body_contains(k, sample_cap_uniform(probe, rng))) ++inside;
    return static_cast<double>(inside) / std::max(1, samples);
}

}  // namespace helly
