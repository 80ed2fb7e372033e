#pragma once
#include <optional>
#include <variant>
#include <vector>

#include "helly/linalg.hpp"
#include "helly/minnorm.hpp"

namespace helly {

// Absolute tolerance for geometric predicates. Margins are always exposed
// so callers can apply their own thresholds.
inline constexpr double kGeomTol = 1e-9;

// Affine k-flat: a base point plus k orthonormal direction columns.
// k = 0 encodes a single point (dirs has zero columns).
struct KFlat {
    Vec base;
    Mat dirs;

    std::size_t dim() const { return base.size(); }
    std::size_t k() const { return dirs.cols(); }

    // Validates shape and orthonormality (defect < 1e-9) on construction.
    static KFlat make(Vec base, Mat dirs);
    // Same, but re-orthonormalizes the columns first.
    static KFlat make_orthonormalized(Vec base, Mat dirs);
    static KFlat point(Vec p) { return KFlat{std::move(p), Mat(0, 0)}; }
};

struct Ball {
    Vec center;
    double radius = 0.0;  // radius 0 is a valid degenerate ball
};

// Offset V-polytope with a concentric sandwich certificate:
// body = conv(vertices) + Ball(0, offset), and
// Ball(center, inner) <= body <= Ball(center, outer).
struct FatBody {
    std::vector<Vec> vertices;
    double offset = 0.0;
    Vec center;
    double inner = 0.0;
    double outer = 0.0;

    double fatness() const { return inner > 0 ? outer / inner : 1.0; }
};

using Body = std::variant<Ball, FatBody>;

struct Family {
    std::vector<Body> bodies;
    std::vector<int> colors;  // optional; empty means monochromatic

    std::size_t size() const { return bodies.size(); }
    std::size_t dim() const;
    void validate() const;
};

struct HitResult {
    bool hit = false;
    double margin = 0.0;  // slack: >= 0 means hit, negative is the miss gap
};

// --- basic body accessors -------------------------------------------------

std::size_t body_dim(const Body& b);
Vec body_center(const Body& b);
double body_inner_radius(const Body& b);
double body_outer_radius(const Body& b);
Body translate_body(const Body& b, const Vec& t);

// Support function h_K(u) for unit u, about the origin.
double support_function(const Body& b, const Vec& u);

// Euclidean distance from a point to the body (0 if inside).
double dist_point_body(const Vec& p, const Body& b);
bool body_contains(const Body& b, const Vec& p, double tol = kGeomTol);

// Checks the sandwich certificate by support-function sampling; returns the
// worst violation (<= 0 when the certificate holds within tolerance).
double certificate_violation(const FatBody& k, int n_dirs, std::uint64_t seed);

// --- flats and hits ---------------------------------------------------------

double dist_point_flat(const Vec& p, const KFlat& f);
HitResult flat_hits_ball(const KFlat& f, const Ball& b, double tol = kGeomTol);

// For polytopes the margin is reported as -distance (0 at contact); the
// minimization is exact convex projection in the orthogonal complement.
HitResult flat_hits_body(const KFlat& f, const Body& b, double tol = kGeomTol);

// Minkowski inflation K + Ball(0, delta); certificates shift by delta.
FatBody minkowski_inflate(const FatBody& k, double delta);
Body inflate_body(const Body& b, double delta);

// --- orthogonal complement projection ---------------------------------------

// Orthonormal basis of F^perp (d x (d-k)); deterministic completion.
Mat complement_basis(const KFlat& f);

Vec project_point_to_complement(const Vec& p, const KFlat& f, const Mat& w);
Body project_body_to_complement(const Body& b, const KFlat& f, const Mat& w);

// --- volumetric pigeonhole ----------------------------------------------------

struct PigeonholeResult {
    Vec point;
    int hit_count = 0;
};

// Deterministic axis-aligned grid scan over the region ball; returns the
// grid point covered by the most bodies (first in scan order on ties).
PigeonholeResult volumetric_pigeonhole(const std::vector<Body>& bodies, const Ball& region,
                                       int resolution = 32);

// Monte-Carlo estimate of vol(K ∩ B(y,t)) / vol(B(y,t)).
double overlap_fraction(const Body& k, const Ball& probe, int samples, std::uint64_t seed);

}  // namespace helly
