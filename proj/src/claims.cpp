#include "helly/claims.hpp"

#include <algorithm>
#include <cmath>

#include "helly/errors.hpp"
#include "helly/generate.hpp"
#include "helly/rng.hpp"

namespace helly {

namespace {

ClaimFinding finish(std::string name, long long samples, double worst, double bound_tol,
                    std::map<std::string, double> measured = {}) {
    ClaimFinding f;
    f.name = std::move(name);
    f.samples = samples;
    f.worst_slack = worst;
    f.pass = worst <= bound_tol;
    f.measured = std::move(measured);
    return f;
}

Vec sample_point_in_body(const Body& b, Rng& rng, int max_tries = 200) {
    const Vec c = body_center(b);
    const double r = body_outer_radius(b);
    for (int t = 0; t < max_tries; ++t) {
        Vec p = c + (r * std::pow(rng.uniform(), 1.0 / c.size())) * rng.unit_vector(c.size());
        if (body_contains(b, p)) return p;
    }
    return c;
}

}  // namespace

double projected_cap_radius_oracle(double r, double t, int samples) {
    // canonical configuration on S^2: apex at e3, cap center at colatitude t
    const Vec apex{0.0, 0.0, 1.0};
    const Vec x{std::sin(t), 0.0, std::cos(t)};
    const CapFrame frame = CapFrame::make(Cap{apex, M_PI / 2});
    const Vec wx = frame.project(x);
    // boundary of the cap: rotate around x by psi
    const Vec e1{std::cos(t) * 1.0, 0.0, -std::sin(t)};  // tangent toward the pole
    const Vec e2{0.0, 1.0, 0.0};
    auto boundary = [&](double psi) {
        Vec dir = std::cos(psi) * e1 + std::sin(psi) * e2;
        return std::cos(r) * x + std::sin(r) * dir;
    };
    auto angle_of = [&](double psi) {
        const Vec b = boundary(psi);
        if (std::fabs(dot(b, apex)) > 1.0 - 1e-12) return M_PI;  // hits the axis
        return angular_dist(frame.project(b), wx);
    };
    double best = 0.0, best_psi = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double psi = 2 * M_PI * i / samples;
        const double a = angle_of(psi);
        if (a > best) {
            best = a;
            best_psi = psi;
        }
    }
    // golden-section polish around the best sample
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_psi - 2 * M_PI / samples, hi = best_psi + 2 * M_PI / samples;
    double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
    double f1 = angle_of(c1), f2 = angle_of(c2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = angle_of(c2);
        } else {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = angle_of(c1);
        }
    }
    return std::max(best, std::max(f1, f2));
}

std::vector<ClaimFinding> verify_claims_euclidean(int trials, std::uint64_t seed) {
    std::vector<ClaimFinding> out;
    Rng rng(mix_seed(seed, 0xe0c11dULL));

    {  // overlap lower bound: vol(K ∩ B(y,t)) / vol(B(y,t)) stays positive
        for (const auto& [d, rho] : std::vector<std::pair<int, double>>{{2, 2.0}, {3, 2.0}}) {
            double gamma_min = 1.0, gamma_sum = 0.0;
            const int n = std::max(1, trials);
            for (int i = 0; i < n; ++i) {
                Vec c(d);
                for (auto& x : c) x = rng.uniform(-2, 2);
                const Body k = make_fat_body(rng, c, rho, rng.uniform(0.5, 1.5));
                const Vec y = sample_point_in_body(k, rng);
                const double t = rng.uniform(1e-3, body_outer_radius(k));
                const double frac =
                    overlap_fraction(k, Ball{y, t}, 128, mix_seed(seed, 7000 + i));
                gamma_min = std::min(gamma_min, frac);
                gamma_sum += frac;
            }
            std::map<std::string, double> measured{{"gamma_min", gamma_min},
                                                   {"gamma_mean", gamma_sum / n},
                                                   {"rho", rho},
                                                   {"d", static_cast<double>(d)}};
            out.push_back(finish("fat-overlap-lower-bound-d" + std::to_string(d), n,
                                 gamma_min > 0 ? -gamma_min : 1.0, 0.0, measured));
        }
    }

    {  // support function shifts by exactly delta under inflation
        double worst = 0.0;
        const int n = std::min(std::max(1, trials), 2000);
        for (int i = 0; i < n; ++i) {
            Vec c(3);
            for (auto& x : c) x = rng.uniform(-2, 2);
            const FatBody k = make_fat_body(rng, c, rng.uniform(1.0, 4.0), rng.uniform(0.5, 1.5));
            const double delta = rng.uniform(0.0, 2.0);
            const FatBody grown = minkowski_inflate(k, delta);
            for (int j = 0; j < 16; ++j) {
                const Vec u = rng.unit_vector(3);
                worst = std::max(worst, std::fabs(support_function(grown, u) -
                                                  support_function(k, u) - delta));
            }
        }
        out.push_back(finish("inflation-support-shift", n * 16, worst, 1e-9));
    }

    {  // inflation monotone: support dominance for larger offsets
        double worst = -1.0;
        const int n = std::min(std::max(1, trials), 2000);
        for (int i = 0; i < n; ++i) {
            Vec c(2);
            for (auto& x : c) x = rng.uniform(-2, 2);
            const FatBody k = make_fat_body(rng, c, rng.uniform(1.0, 3.0), rng.uniform(0.5, 1.5));
            const double d1 = rng.uniform(0.0, 1.0);
            const double d2 = d1 + rng.uniform(0.0, 1.0);
            const FatBody k1 = minkowski_inflate(k, d1), k2 = minkowski_inflate(k, d2);
            for (int j = 0; j < 8; ++j) {
                const Vec u = rng.unit_vector(2);
                worst = std::max(worst, support_function(k1, u) - support_function(k2, u));
            }
        }
        out.push_back(finish("inflation-monotone", n * 8, worst, 1e-9));
    }

    {  // fatness ratio never grows under inflation (algebraic)
        double worst = -1.0;
        const int n = std::max(1, trials);
        for (int i = 0; i < n; ++i) {
            const double r = rng.uniform(1e-3, 2.0);
            const double rr = r * rng.uniform(1.0, 8.0);
            const double delta = rng.uniform(0.0, 4.0);
            worst = std::max(worst, (rr + delta) / (r + delta) - rr / r);
        }
        out.push_back(finish("inflation-fatness-ratio", n, worst, 1e-12));
    }

    {  // central projection of a rho-fat body is (pi/2 rho)-fat
        double worst = -1e300, worst_ratio = 0.0;
        const int n = std::max(1, trials / 2);
        for (int i = 0; i < n; ++i) {
            const double rho = rng.uniform(1.0, 4.0);
            const double scale = rng.uniform(0.2, 1.0);
            Vec c = (scale + rng.uniform(1.2, 6.0)) * rng.unit_vector(3);  // outside the body
            const Body k = make_fat_body(rng, c, rho, scale);
            const SphericalBody proj = central_project_to_unit_sphere(k);
            if (proj.full_sphere || proj.inner <= 0) continue;
            const double ratio = proj.outer / proj.inner;
            worst_ratio = std::max(worst_ratio, ratio / rho);
            worst = std::max(worst, ratio - (M_PI / 2) * rho);
        }
        out.push_back(finish("central-projection-fatness", n, worst, 1e-9,
                             {{"worst_ratio_over_rho", worst_ratio}}));
    }

    return out;
}

std::vector<ClaimFinding> verify_claims_spherical(int trials, std::uint64_t seed) {
    std::vector<ClaimFinding> out;
    Rng rng(mix_seed(seed, 0x5fe11eULL));

    {  // gnomonic distortion on S^2 and S^3
        double worst = -1e300;
        long long samples = 0;
        for (int dim : {3, 4}) {
            const int n = std::max(1, trials);
            for (int i = 0; i < n; ++i) {
                const Vec w = rng.unit_vector(dim);
                const Cap cap{w, M_PI / 4};
                const Vec u = sample_cap_uniform(cap, rng);
                const Vec v = sample_cap_uniform(cap, rng);
                const double ang = angular_dist(u, v);
                const double planar = dist(gnomonic(w, u), gnomonic(w, v));
                worst = std::max(worst, ang - planar);
                worst = std::max(worst, planar - 2 * ang);
                ++samples;
            }
        }
        out.push_back(finish("gnomonic-distortion", samples, worst, 1e-9));
    }

    {  // hull containment: conv(K^eps) stays within 2 eps of K
        double worst = -1e300;
        const int n = std::max(1, trials / 10);
        for (int i = 0; i < n; ++i) {
            const Vec w = rng.unit_vector(3);
            const int m = 2 + static_cast<int>(rng.below(5));
            std::vector<Vec> pts;
            for (int j = 0; j < m; ++j) pts.push_back(sample_cap_uniform(Cap{w, M_PI / 8}, rng));
            const SphericalBody k = spherical_hull(pts);
            if (k.full_sphere) continue;
            const double eps = rng.uniform(0.01, M_PI / 8);
            // points of conv(K^eps): hull samples of perturbed body points
            std::vector<Vec> inflated;
            const SphericalBody keps = epsilon_neighborhood(k, eps);
            for (int j = 0; j < 24; ++j) inflated.push_back(sample_spherical_body(keps, rng));
            const SphericalBody hull = spherical_hull(inflated);
            if (hull.full_sphere) continue;
            for (int j = 0; j < 24; ++j) {
                const Vec q = sample_spherical_body(hull, rng);
                worst = std::max(worst, dist_point_spherical_body(q, k) - 2 * eps);
            }
        }
        out.push_back(finish("hull-containment", n * 24, worst, 1e-6));
    }

    {  // neighborhood fatness: (R+eps)/(r+eps) <= R/r
        double worst = -1.0;
        const int n = std::max(1, trials);
        for (int i = 0; i < n; ++i) {
            const double r = rng.uniform(1e-3, 1.0);
            const double rr = std::min(M_PI / 2, r * rng.uniform(1.0, 6.0));
            const double eps = rng.uniform(0.0, 1.0);
            worst = std::max(worst, (rr + eps) / (r + eps) - rr / r);
        }
        out.push_back(finish("neighborhood-fatness-ratio", n, worst, 1e-12));
    }

    {  // rotation stability of transversals under neighborhood growth
        double worst = -1e300;
        const int n = std::max(1, trials / 10);
        long long samples = 0;
        for (int i = 0; i < n; ++i) {
            const std::size_t amb = 3;
            const std::size_t k = rng.below(2);  // great 0- or 1-spheres of S^2
            Mat basis(amb, k + 1);
            for (std::size_t a = 0; a < amb; ++a)
                for (std::size_t b = 0; b <= k; ++b) basis(a, b) = rng.gaussian();
            GreatSphere g{orthonormalized(basis)};
            std::vector<Cap> caps;
            for (int j = 0; j < 8; ++j) {
                Vec on = normalized(matvec(g.basis, rng.gaussian_vector(k + 1)));
                const double eps_j = rng.uniform(0.1, 0.25);
                const Cap jitter{on, 0.9 * eps_j};
                caps.push_back(Cap{sample_cap_uniform(jitter, rng), eps_j});
            }
            // v close to the first cap, with an enclosing radius
            const double b_ang = rng.uniform(0.01, 0.2);
            const Vec v = sample_cap_uniform(Cap{caps[0].center, b_ang}, rng);
            const double eps = b_ang + caps[0].radius + 1e-12;
            const Vec vp = closest_point_on_great_sphere(g, v);
            if (angular_dist(vp, v) < 1e-12 || angular_dist(vp, v) > M_PI - 1e-9) continue;
            const Mat rot = rotation_between(vp, v);
            Mat rotated(amb, k + 1);
            for (std::size_t b = 0; b <= k; ++b) rotated.set_col(b, matvec(rot, g.basis.col(b)));
            GreatSphere g2{orthonormalized(rotated)};
            worst = std::max(worst, 1.0 - norm(matvec_t(g2.basis, v)));  // v on rotated sphere
            for (const Cap& c : caps) {
                const auto hr = great_sphere_hits_cap(g2, Cap{c.center, c.radius + eps});
                worst = std::max(worst, -hr.margin);
                ++samples;
            }
        }
        out.push_back(finish("rotation-stability", samples, worst, 1e-9));
    }

    {  // cap-boundary projection keeps fatness within (pi^3/4) rho^2
        double worst = -1e300, worst_ratio = 0.0;
        long long samples = 0;
        for (double rho : {1.0, 2.0, 4.0}) {
            const int n = std::max(1, trials / 3);
            for (int i = 0; i < n; ++i) {
                const Vec v = rng.unit_vector(4);
                const double scale = rng.uniform(0.05, 0.4);
                // center away from the apex and its antipode
                const double t = rng.uniform(scale + 0.05, M_PI - scale - 0.05);
                Vec g = rng.gaussian_vector(4);
                Vec tan = g - dot(g, v) * v;
                if (norm(tan) < 1e-12) continue;
                tan = normalized(tan);
                const Vec center = std::cos(t) * v + std::sin(t) * tan;
                const SphericalBody body = make_fat_spherical_body(rng, normalized(center), rho, scale);
                const SphericalBody proj =
                    project_body_to_cap_boundary(Cap{v, rng.uniform(0.2, 1.2)}, body);
                if (proj.full_sphere || proj.inner <= 0) continue;
                const double ratio = proj.outer / proj.inner;
                worst_ratio = std::max(worst_ratio, ratio);
                worst = std::max(worst, ratio - (M_PI * M_PI * M_PI / 4) * rho * rho);
                ++samples;
            }
        }
        out.push_back(
            finish("cap-projection-fatness", samples, worst, 1e-9, {{"worst_ratio", worst_ratio}}));
    }

    {  // projected cap radius formula against the boundary-sampling oracle
        double worst = 0.0;
        double worst_sin2 = 0.0, worst_sin1 = 0.0;
        const int n = std::max(1, trials);
        for (int i = 0; i < n; ++i) {
            const double r = rng.uniform(0.02, 0.6);
            const double t = rng.uniform(r + 0.05, M_PI - r - 0.05);
            const auto formula = projected_cap_radius(r, t);
            if (!formula) continue;
            const double oracle = projected_cap_radius_oracle(r, t, 4096);
            worst = std::max(worst, std::fabs(*formula - oracle));
            // the two chord-based candidates, recorded for reference
            const double s2 = std::asin(std::min(1.0, std::pow(std::sin(r / 2) / std::sin(t / 2), 2.0)));
            const double s1 = std::asin(std::min(1.0, std::sin(r / 2) / std::sin(t / 2)));
            worst_sin2 = std::max(worst_sin2, std::fabs(s2 - oracle));
            worst_sin1 = std::max(worst_sin1, std::fabs(s1 - oracle));
        }
        out.push_back(finish("cap-projection-radius-formula", n, worst, 1e-6,
                             {{"max_error_sin_half_squared", worst_sin2},
                              {"max_error_sin_half", worst_sin1}}));
    }

    {  // repeated meridian projections keep bodies fat; c is measured
        double worst_c = 0.0;
        long long samples = 0;
        bool ok = true;
        const int n = std::max(1, trials / 10);
        for (int i = 0; i < n; ++i) {
            const std::size_t amb = 4;  // S^3, project down k=1 or 2
            const std::size_t k = 1 + rng.below(2);
            Mat basis(amb, k + 1);
            for (std::size_t a = 0; a < amb; ++a)
                for (std::size_t b = 0; b <= k; ++b) basis(a, b) = rng.gaussian();
            GreatSphere f{orthonormalized(basis)};
            const Vec u = normalized(matvec(f.basis, rng.gaussian_vector(k + 1)));
            const double rho = rng.uniform(1.0, 3.0);
            Vec center = rng.unit_vector(amb);
            const SphericalBody body = make_fat_spherical_body(rng, center, rho, rng.uniform(0.05, 0.3));
            const MeridianProjection op = compose_meridian_projections(f, u);
            SphericalBody image;
            bool on_axis = false;
            for (const Vec& s : spherical_body_samples(body, 6)) {
                const auto w = op.apply(s);
                if (!w) {
                    on_axis = true;
                    break;
                }
                image.points.push_back(*w);
            }
            if (on_axis || image.points.empty()) continue;
            image.center = image.points.front();
            measure_certificates(image, 24, mix_seed(seed, 4200 + i));
            if (image.inner <= 1e-6 || image.outer <= 0) continue;
            const double ratio = image.outer / image.inner;
            if (!std::isfinite(ratio)) ok = false;
            const double c = std::pow(ratio / std::pow(rho, 2.0 * k), 1.0 / k);
            worst_c = std::max(worst_c, c);
            ++samples;
        }
        out.push_back(finish("meridian-composition-fatness", samples, ok ? -1.0 : 1.0, 0.0,
                             {{"measured_c_max", worst_c}}));
    }

    {  // metric net coverage and cardinality
        double worst = -1e300;
        long long samples = 0;
        for (std::size_t k : {0u, 1u, 2u}) {
            const std::size_t amb = k + 2;
            for (double delta : {M_PI / 2, 0.5, 0.25}) {
                Mat basis(amb, k + 1);
                for (std::size_t a = 0; a < amb; ++a)
                    for (std::size_t b = 0; b <= k; ++b) basis(a, b) = rng.gaussian();
                GreatSphere g{orthonormalized(basis)};
                const auto net = metric_net(g, delta);
                const double bound = std::pow(1.0 + 2 * M_PI / delta, static_cast<double>(k + 1));
                worst = std::max(worst, static_cast<double>(net.size()) / bound - 1.0);
                const int probes = std::max(1, trials / 10);
                for (int i = 0; i < probes; ++i) {
                    const Vec q = normalized(matvec(g.basis, rng.gaussian_vector(k + 1)));
                    double nearest = 1e300;
                    for (const Vec& p : net) nearest = std::min(nearest, angular_dist(q, p));
                    worst = std::max(worst, nearest / delta - 1.0);
                    ++samples;
                }
            }
        }
        out.push_back(finish("net-coverage", samples, worst, 1e-9));
    }

    return out;
}

json findings_to_json(const std::vector<ClaimFinding>& findings) {
    json arr = json::array();
    for (const ClaimFinding& f : findings) {
        json j;
        j["name"] = f.name;
        j["samples"] = f.samples;
        j["worstSlack"] = f.worst_slack;
        j["pass"] = f.pass;
        j["measured"] = f.measured;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace helly
