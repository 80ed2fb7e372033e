#include "helly/euclid.hpp"

#include <algorithm>
#include <cmath>

#include "helly/errors.hpp"
#include "helly/rng.hpp"

namespace helly {

KFlat KFlat::make(Vec base, Mat dirs) {
    if (dirs.cols() > 0 && dirs.rows() != base.size())
        throw input_error("KFlat: direction rows must match base dimension");
    if (dirs.cols() > base.size()) throw input_error("KFlat: k exceeds ambient dimension");
    if (dirs.cols() > 0 && orthonormality_defect(dirs) >= 1e-9)
        throw input_error("KFlat: directions not orthonormal");
    return KFlat{std::move(base), std::move(dirs)};
}

KFlat KFlat::make_orthonormalized(Vec base, Mat dirs) {
    if (dirs.cols() > 0) dirs = orthonormalized(std::move(dirs));
    return make(std::move(base), std::move(dirs));
}

std::size_t Family::dim() const {
    if (bodies.empty()) throw input_error("Family: empty");
    return body_dim(bodies.front());
}

void Family::validate() const {
    if (bodies.empty()) throw input_error("Family: empty");
    const std::size_t d = body_dim(bodies.front());
    for (const Body& b : bodies)
        if (body_dim(b) != d) throw input_error("Family: mixed dimensions");
    if (!colors.empty() && colors.size() != bodies.size())
        throw input_error("Family: color list length mismatch");
}

std::size_t body_dim(const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b)) return ball->center.size();
    return std::get<FatBody>(b).center.size();
}

Vec body_center(const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b)) return ball->center;
    return std::get<FatBody>(b).center;
}

double body_inner_radius(const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b)) return ball->radius;
    return std::get<FatBody>(b).inner;
}

double body_outer_radius(const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b)) return ball->radius;
    return std::get<FatBody>(b).outer;
}

Body translate_body(const Body& b, const Vec& t) {
    if (const auto* ball = std::get_if<Ball>(&b)) return Ball{ball->center + t, ball->radius};
    FatBody k = std::get<FatBody>(b);
    for (Vec& v : k.vertices) v = v + t;
    k.center = k.center + t;
    return k;
}

double support_function(const Body& b, const Vec& u) {
    if (const auto* ball = std::get_if<Ball>(&b)) return dot(ball->center, u) + ball->radius * norm(u);
    const FatBody& k = std::get<FatBody>(b);
    double best = -1e300;
    for (const Vec& v : k.vertices) best = std::max(best, dot(v, u));
    return best + k.offset * norm(u);
}

double dist_point_body(const Vec& p, const Body& b) {
    if (const auto* ball = std::get_if<Ball>(&b))
        return std::max(0.0, dist(p, ball->center) - ball->radius);
    const FatBody& k = std::get<FatBody>(b);
    const auto proj = project_to_hull(k.vertices, p);
    return std::max(0.0, proj.distance - k.offset);
}

bool body_contains(const Body& b, const Vec& p, double tol) {
    return dist_point_body(p, b) <= tol;
}

double certificate_violation(const FatBody& k, int n_dirs, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t d = k.center.size();
    double worst = -1e300;
    for (int i = 0; i < n_dirs; ++i) {
        const Vec u = rng.unit_vector(d);
        const double h = support_function(k, u) - dot(k.center, u);
        // inner cap must fit: h >= inner; outer must contain: h <= outer
        worst = std::max(worst, k.inner - h);
        worst = std::max(worst, h - k.outer);
    }
    return worst;
}

double dist_point_flat(const Vec& p, const KFlat& f) {
    if (p.size() != f.dim()) throw input_error("dist_point_flat: dimension mismatch");
    Vec r = p - f.base;
    for (std::size_t j = 0; j < f.k(); ++j) {
        const Vec u = f.dirs.col(j);
        const double c = dot(u, r);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * u[i];
    }
    return norm(r);
}

HitResult flat_hits_ball(const KFlat& f, const Ball& b, double tol) {
    const double margin = b.radius - dist_point_flat(b.center, f);
    return HitResult{margin >= -tol, margin};
}

HitResult flat_hits_body(const KFlat& f, const Body& b, double tol) {
    if (const auto* ball = std::get_if<Ball>(&b)) return flat_hits_ball(f, *ball, tol);
    const FatBody& k = std::get<FatBody>(b);
    if (f.k() == f.dim()) return HitResult{true, k.offset};
    const Mat w = complement_basis(f);
    std::vector<Vec> proj;
    proj.reserve(k.vertices.size());
    for (const Vec& v : k.vertices) proj.push_back(matvec_t(w, v - f.base));
    const Vec origin(w.cols(), 0.0);
    const auto res = project_to_hull(proj, origin);
    const double distance = std::max(0.0, res.distance - k.offset);
    return HitResult{distance <= tol, -distance};
}

FatBody minkowski_inflate(const FatBody& k, double delta) {
    if (delta < 0) throw input_error("minkowski_inflate: negative delta");
    FatBody out = k;
    out.offset += delta;
    out.inner += delta;
    out.outer += delta;
    return out;
}

Body inflate_body(const Body& b, double delta) {
    if (delta < 0) throw input_error("inflate_body: negative delta");
    if (const auto* ball = std::get_if<Ball>(&b)) return Ball{ball->center, ball->radius + delta};
    return minkowski_inflate(std::get<FatBody>(b), delta);
}

Mat complement_basis(const KFlat& f) {
    if (f.k() == 0) return Mat::identity(f.dim());
    Mat dirs = f.dirs;
    if (dirs.rows() == 0) dirs = Mat(f.dim(), 0);
    return orthonormal_complement(dirs);
}

Vec project_point_to_complement(const Vec& p, const KFlat& f, const Mat& w) {
    return matvec_t(w, p - f.base);
}

Body project_body_to_complement(const Body& b, const KFlat& f, const Mat& w) {
    if (const auto* ball = std::get_if<Ball>(&b))
        return Ball{project_point_to_complement(ball->center, f, w), ball->radius};
    const FatBody& k = std::get<FatBody>(b);
    FatBody out;
    out.offset = k.offset;
    out.inner = k.inner;
    out.outer = k.outer;
    out.center = project_point_to_complement(k.center, f, w);
    out.vertices.reserve(k.vertices.size());
    for (const Vec& v : k.vertices) out.vertices.push_back(project_point_to_complement(v, f, w));
    return out;
}

PigeonholeResult volumetric_pigeonhole(const std::vector<Body>& bodies, const Ball& region,
                                       int resolution) {
    if (bodies.empty()) throw input_error("volumetric_pigeonhole: empty body list");
    if (resolution < 1) throw input_error("volumetric_pigeonhole: resolution must be >= 1");
    const std::size_t d = region.center.size();

    auto count_at = [&](const Vec& p) {
        int c = 0;
        for (const Body& b : bodies)
            if (body_contains(b, p)) ++c;
        return c;
    };

    PigeonholeResult best{region.center, count_at(region.center)};
    if (region.radius <= 0.0) return best;

    const double cell = 2.0 * region.radius / resolution;
    std::vector<int> idx(d, 0);
    while (true) {
        Vec p(d);
        for (std::size_t a = 0; a < d; ++a)
            p[a] = region.center[a] - region.radius + (idx[a] + 0.5) * cell;
        if (dist(p, region.center) <= region.radius) {
            const int c = count_at(p);
            if (c > best.hit_count) best = PigeonholeResult{p, c};
        }
        std::size_t a = 0;
        while (a < d && ++idx[a] == resolution) idx[a++] = 0;
        if (a == d) break;
    }
    return best;
}

double overlap_fraction(const Body& k, const Ball& probe, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t d = probe.center.size();
    int inside = 0;
    for (int s = 0; s < samples; ++s) {
        // uniform in the probe ball: direction * radius * U^(1/d)
        Vec u = rng.unit_vector(d);
        const double r = probe.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
        Vec p = probe.center + r * u;
        if (body_contains(k, p)) ++inside;
    }
    return static_cast<double>(inside) / std::max(1, samples);
}

}  // namespace helly
