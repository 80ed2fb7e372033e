#pragma once
#include <algorithm>
#include <cstddef>
#include <vector>

#include "helly/linalg.hpp"

namespace helly {

// Result of a projection onto a hull or cone: the point, its squared
// distance to the query, and the barycentric/conic weights on the input
// points (zero outside the active support).
struct ProjectionResult {
    Vec point;
    double distance = 0.0;
    Vec weights;
    int iterations = 0;
};

namespace detail {

// Solves the equality-constrained least squares on a support set:
// minimize |q - sum_i w_i p_i|^2 with sum w_i = 1 (if affine) over i in
// support. Returns weights on the support via the KKT system.
inline bool support_solve(const std::vector<Vec>& pts, const Vec& q,
                          const std::vector<std::size_t>& support, bool affine, Vec& w_out) {
    const std::size_t m = support.size();
    const std::size_t n = affine ? m + 1 : m;
    Mat kkt(n, n);
    Vec rhs(n, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            const double g = dot(pts[support[a]], pts[support[b]]);
            kkt(a, b) = g;
            kkt(b, a) = g;
        }
        rhs[a] = dot(pts[support[a]], q);
    }
    if (affine) {
        for (std::size_t a = 0; a < m; ++a) {
            kkt(a, m) = 1.0;
            kkt(m, a) = 1.0;
        }
        rhs[m] = 1.0;
        // Tiny Tikhonov term keeps the Gram block solvable when support
        // points are affinely dependent.
        for (std::size_t a = 0; a < m; ++a) kkt(a, a) += 1e-13;
    } else {
        for (std::size_t a = 0; a < m; ++a) kkt(a, a) += 1e-13;
    }
    try {
        Vec sol = solve_dense(kkt, rhs);
        w_out.assign(m, 0.0);
        for (std::size_t a = 0; a < m; ++a) w_out[a] = sol[a];
        return true;
    } catch (const numeric_error&) {
        return false;
    }
}

inline Vec combine(const std::vector<Vec>& pts, const std::vector<std::size_t>& support, const Vec& w) {
    Vec y(pts[0].size(), 0.0);
    for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += w[a] * pts[support[a]][i];
    return y;
}

// Shared active-set driver (Wolfe-style min-norm point). affine=true
// projects onto conv(pts); affine=false projects onto cone(pts).
inline ProjectionResult min_norm_point(const std::vector<Vec>& pts, const Vec& q, bool affine) {
    if (pts.empty()) throw input_error("projection: empty point set");
    const std::size_t n = pts.size();

    // start from the closest input point (affine) or the best ray (conic)
    std::size_t start = 0;
    if (affine) {
        double best = dist(pts[0], q);
        for (std::size_t i = 1; i < n; ++i) {
            const double d = dist(pts[i], q);
            if (d < best) {
                best = d;
                start = i;
            }
        }
    } else {
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double nn = norm(pts[i]);
            const double score = nn > 1e-300 ? dot(pts[i], q) / nn : -1.0;
            if (score > best) {
                best = score;
                start = i;
            }
        }
        if (best <= 0.0) {
            // q sees no ray at acute angle; the cone projection is 0
            ProjectionResult r;
            r.point.assign(q.size(), 0.0);
            r.distance = norm(q);
            r.weights.assign(n, 0.0);
            return r;
        }
    }

    std::vector<std::size_t> support{start};
    Vec w{affine ? 1.0 : std::max(0.0, dot(pts[start], q) / std::max(1e-300, dot(pts[start], pts[start])))};
    Vec x = combine(pts, support, w);
    const int max_iter = 64 + static_cast<int>(8 * n);
    int it = 0;
    for (; it < max_iter; ++it) {
        // optimality: gradient of 0.5|x-q|^2 is g = x - q; check all points
        const Vec g = x - q;
        double nu = 0.0;
        if (affine) {
            // on the support, dot(p_i, g) is a common value nu
            nu = dot(pts[support[0]], g);
            for (std::size_t a = 1; a < support.size(); ++a) nu = std::min(nu, dot(pts[support[a]], g));
        }
        std::size_t enter = n;
        double worst = -1e-10 * (1.0 + dot(q, q));
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(support.begin(), support.end(), i) != support.end()) continue;
            const double slack = dot(pts[i], g) - (affine ? nu : 0.0);
            if (slack < worst) {
                worst = slack;
                enter = i;
            }
        }
        if (enter == n) break;
        support.push_back(enter);
        w.push_back(0.0);

        // inner loop: restore feasibility of the support solve
        for (int inner = 0; inner < 64; ++inner) {
            Vec v;
            if (!support_solve(pts, q, support, affine, v)) {
                support.pop_back();
                w.pop_back();
                enter = n;
                break;
            }
            bool feasible = true;
            for (double vi : v)
                if (vi < -1e-12) feasible = false;
            if (feasible) {
                w = v;
                break;
            }
            // step from w toward v, stop at first coordinate hitting zero
            double theta = 1.0;
            std::size_t drop = support.size();
            for (std::size_t a = 0; a < support.size(); ++a) {
                if (v[a] < w[a] - 1e-300 && v[a] < 0.0) {
                    const double t = w[a] / (w[a] - v[a]);
                    if (t < theta) {
                        theta = t;
                        drop = a;
                    }
                }
            }
            for (std::size_t a = 0; a < support.size(); ++a) w[a] += theta * (v[a] - w[a]);
            if (drop < support.size()) {
                support.erase(support.begin() + static_cast<long>(drop));
                w.erase(w.begin() + static_cast<long>(drop));
            }
        }
        if (enter == n) break;
        x = combine(pts, support, w);
    }

    ProjectionResult r;
    r.point = x;
    r.distance = dist(x, q);
    r.weights.assign(n, 0.0);
    for (std::size_t a = 0; a < support.size(); ++a) r.weights[support[a]] = std::max(0.0, w[a]);
    r.iterations = it;
    return r;
}

}  // namespace detail

// Nearest point of conv(pts) to q.
inline ProjectionResult project_to_hull(const std::vector<Vec>& pts, const Vec& q) {
    return detail::min_norm_point(pts, q, /*affine=*/true);
}

// Nearest point of cone(pts) = { sum w_i p_i : w >= 0 } to q.
inline ProjectionResult project_to_cone(const std::vector<Vec>& pts, const Vec& q) {
    return detail::min_norm_point(pts, q, /*affine=*/false);
}

}  // namespace helly
