#pragma once
#include <optional>
#include <vector>

#include "helly/euclid.hpp"
#include "helly/linalg.hpp"

namespace helly {

// Cap of the unit sphere S^m (vectors live in R^{m+1}):
// B(center, radius) = { y : angle(center, y) <= radius }.
struct Cap {
    Vec center;
    double radius = 0.0;  // in [0, pi]
};

// Great k-sphere: intersection of S^m with a (k+1)-dimensional linear
// subspace, stored as an orthonormal basis of that subspace.
struct GreatSphere {
    Mat basis;  // (m+1) x (k+1), orthonormal columns

    std::size_t ambient_dim() const { return basis.rows(); }
    std::size_t k() const { return basis.cols() - 1; }

    static GreatSphere make(Mat basis);
};

// Spherically convex body: the spherical hull of `points` thickened by an
// angular `offset`, with a concentric cap sandwich certificate. The
// full_sphere flag is the sentinel for bodies covering the whole sphere.
struct SphericalBody {
    std::vector<Vec> points;
    double offset = 0.0;
    Vec center;
    double inner = 0.0;
    double outer = 0.0;
    bool full_sphere = false;

    std::size_t ambient_dim() const { return center.size(); }
    double fatness() const {
        if (full_sphere) return 1.0;
        return inner > 0 ? outer / inner : 1.0;
    }

    static SphericalBody from_cap(const Cap& c);
    static SphericalBody full(std::size_t ambient);
};

// --- metric and rotations ---------------------------------------------------

// arccos of the clamped dot product; inputs must be unit length.
double angular_dist(const Vec& u, const Vec& v);

// Rotation R with R(u) = v that fixes span{u,v}^perp. Undefined for u = ±v.
Mat rotation_between(const Vec& u, const Vec& v);

// --- cap-boundary projection -------------------------------------------------

// The point of the boundary circle of `cap` on the great circle through the
// cap center and u, on u's side. Undefined for u = ±center.
Vec proj_cap_boundary(const Cap& cap, const Vec& u);

// Coordinate frame identifying the boundary (m-1)-sphere of a cap with the
// unit sphere of center^perp: a point cos(eps)c + sin(eps)w maps to w.
struct CapFrame {
    Cap cap;
    Mat basis;  // (m+1) x m orthonormal basis of center^perp

    static CapFrame make(const Cap& cap);
    // Longitude coordinates of the projection of u (unit vector in R^m).
    Vec project(const Vec& u) const;
    // Embeds longitude coordinates w back to the boundary point in R^{m+1}.
    Vec embed(const Vec& w) const;
};

// Exact intrinsic radius of the projection of a cap of radius r whose
// center sits at angular distance t from the projection apex:
// sin(radius) = sin(r) / sin(t). Empty when the apex or its antipode lies
// inside the cap (projection covers the whole boundary sphere).
std::optional<double> projected_cap_radius(double r, double t);

// Projects a body onto the boundary sphere of `cap`, in CapFrame longitude
// coordinates. Bodies containing the cap axis poles map to the full-sphere
// sentinel. boundary_samples controls offset-boundary sampling density.
SphericalBody project_body_to_cap_boundary(const Cap& cap, const SphericalBody& k,
                                           int boundary_samples = 8);

// --- gnomonic projection -------------------------------------------------------

// Central projection from the origin onto the tangent hyperplane at w,
// in an orthonormal tangent frame. Requires angle(u, w) < pi/2.
Vec gnomonic(const Vec& w, const Vec& u);
Vec gnomonic_inverse(const Vec& w, const Vec& x);

// --- hulls and neighborhoods -----------------------------------------------------

// Direction u with u . p > 0 for all points, if one exists.
std::optional<Vec> open_hemisphere_direction(const std::vector<Vec>& points);

// Spherical convex hull: prunes generators that already lie in the hull of
// the others. Returns the full-sphere sentinel when the input is not
// contained in an open hemisphere.
SphericalBody spherical_hull(const std::vector<Vec>& points);

// K^eps: angular offset grows by eps, certificates shift accordingly;
// saturates to the full-sphere sentinel when the outer cap reaches pi.
SphericalBody epsilon_neighborhood(const SphericalBody& k, double eps);

// Angular distance from a unit vector to the body (0 if inside).
double dist_point_spherical_body(const Vec& u, const SphericalBody& k);
bool spherical_body_contains(const SphericalBody& k, const Vec& u, double tol = kGeomTol);

// Draws a point of the body (hull sample plus offset push), for tests.
Vec sample_spherical_body(const SphericalBody& k, class Rng& rng);

// Deterministic body samples: hull generators plus tangent rings at the
// offset radius (at most 2*per_point ring points per generator).
std::vector<Vec> spherical_body_samples(const SphericalBody& k, int per_point = 8);

// Measures center/inner/outer certificates empirically by directional probing.
void measure_certificates(SphericalBody& k, int n_dirs, std::uint64_t seed);

// --- great-sphere predicates -----------------------------------------------------

// margin = |P_V x| - cos(radius); hit iff margin >= -tol.
HitResult great_sphere_hits_cap(const GreatSphere& g, const Cap& c, double tol = kGeomTol);

// Angular margin for general bodies: offset - min angular distance from the
// hull to the great sphere (max over the hull of |P_V u| found by ascent).
HitResult great_sphere_hits_body(const GreatSphere& g, const SphericalBody& k,
                                 double tol = kGeomTol);

// Closest point of the great sphere to u (normalized subspace projection).
Vec closest_point_on_great_sphere(const GreatSphere& g, const Vec& u);

// max over the hull of |P_V u| together with an attaining hull point.
struct SubspaceProjectionMax {
    double value = 0.0;
    Vec point;
};
SubspaceProjectionMax max_subspace_projection(const GreatSphere& g, const SphericalBody& k);

// --- nets and meridian compositions ---------------------------------------------

// Deterministic delta-net of a great k-sphere: every point of the sphere is
// within angular distance delta of some net point; size <= (1+2pi/delta)^{k+1}.
std::vector<Vec> metric_net(const GreatSphere& g, double delta);

// Composition of k meridian projections (half-sphere cap boundaries) that
// maps S^m onto the great (m-k)-sphere orthogonal to the removed axes and
// collapses the great sphere spanned by {u, removed axes} to {±u}.
struct MeridianProjection {
    Mat removed;  // (m+1) x k axes u_1..u_k
    Mat target;   // (m+1) x (m+1-k) orthonormal basis of the target subspace

    std::size_t ambient_dim() const { return removed.rows(); }
    std::size_t k() const { return removed.cols(); }

    // normalize((I - sum u_i u_i^T) x); empty when x lies on a removed axis.
    std::optional<Vec> apply_embedded(const Vec& x) const;
    // Same point in target-subspace coordinates (unit vector in R^{m+1-k}).
    std::optional<Vec> apply(const Vec& x) const;

    GreatSphere target_sphere() const { return GreatSphere{target}; }
    // Lifts a point of the target sphere (coordinates) to the great k-sphere
    // of S^m through it and the removed axes.
    GreatSphere lift(const Vec& target_coords) const;
};

// Requires u to lie on the great sphere f. k = 0 yields the identity.
MeridianProjection compose_meridian_projections(const GreatSphere& f, const Vec& u);

// --- bridge from Euclidean space ---------------------------------------------------

// Central projection of a Euclidean body to the unit sphere about the
// origin. Bodies containing the origin map to the full-sphere sentinel.
SphericalBody central_project_to_unit_sphere(const Body& b, int boundary_samples = 8);

// Monte-Carlo estimate of cap overlap vol(K ∩ B(y,t))/vol(B(y,t)) on S^m.
double spherical_overlap_fraction(const SphericalBody& k, const Cap& probe, int samples,
                                  std::uint64_t seed);

// Uniform sample of a cap w.r.t. the spherical measure.
Vec sample_cap_uniform(const Cap& cap, class Rng& rng);

}  // namespace helly
