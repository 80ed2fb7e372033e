#include <cmath>

#include "doctest.h"
#include "helly/euclid.hpp"
#include "helly/generate.hpp"
#include "helly/rng.hpp"

using namespace helly;

namespace {

KFlat axis_flat(std::size_t d, std::size_t axis) {
    Mat dirs(d, 1);
    dirs(axis, 0) = 1.0;
    return KFlat::make(Vec(d, 0.0), dirs);
}

FatBody unit_square_at(const Vec& c) {
    FatBody k;
    k.vertices = {Vec{c[0] - 0.5, c[1] - 0.5}, Vec{c[0] + 0.5, c[1] - 0.5},
                  Vec{c[0] + 0.5, c[1] + 0.5}, Vec{c[0] - 0.5, c[1] + 0.5}};
    k.offset = 0.0;
    k.center = c;
    k.inner = 0.5;
    k.outer = std::sqrt(0.5);
    return k;
}

}  // namespace

TEST_CASE("dist_point_flat basics") {
    CHECK(dist_point_flat(Vec{0, 1}, axis_flat(2, 0)) == doctest::Approx(1.0));
    CHECK(dist_point_flat(Vec{3.5, 0}, axis_flat(2, 0)) == doctest::Approx(0.0));
    CHECK(dist_point_flat(Vec{3, 4, 0}, axis_flat(3, 2)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(dist_point_flat(Vec{1, 2, 3}, axis_flat(2, 0)), input_error);
}

TEST_CASE("flat_hits_ball tangency and miss") {
    const auto tangent = flat_hits_ball(axis_flat(2, 0), Ball{Vec{0, 2}, 2.0});
    CHECK(tangent.hit);
    CHECK(tangent.margin == doctest::Approx(0.0));
    const auto miss = flat_hits_ball(axis_flat(2, 0), Ball{Vec{0, 3}, 2.0});
    CHECK_FALSE(miss.hit);
    CHECK(miss.margin == doctest::Approx(-1.0));
}

TEST_CASE("flat_hits_ball on planted flats") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 2 + rng.below(2);
        const std::size_t k = 1 + rng.below(d - 1);
        Mat g(d, k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) g(i, j) = rng.gaussian();
        const KFlat f = KFlat::make_orthonormalized(rng.gaussian_vector(d), g);
        Vec p = f.base;
        for (std::size_t j = 0; j < k; ++j) p = p + rng.uniform(-3, 3) * f.dirs.col(j);
        CHECK(flat_hits_ball(f, Ball{p, 0.1}).hit);
    }
}

TEST_CASE("flat_hits_body on squares") {
    Mat vert(2, 1);
    vert(1, 0) = 1.0;  // vertical line direction
    const KFlat at_half{Vec{0.5, 0.0}, vert};
    const FatBody square = unit_square_at(Vec{0.5, 0.5});
    const auto hit = flat_hits_body(at_half, square);
    CHECK(hit.hit);
    CHECK(hit.margin == doctest::Approx(0.0).epsilon(1e-9));

    const KFlat at_ten{Vec{10.0, 0.0}, vert};
    const auto miss = flat_hits_body(at_ten, unit_square_at(Vec{0.0, 0.0}));
    CHECK_FALSE(miss.hit);
    CHECK(-miss.margin == doctest::Approx(9.5).epsilon(1e-9));
}

TEST_CASE("flat through a polytope vertex hits it") {
    Rng rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 3;
        FatBody k = make_fat_body(rng, rng.gaussian_vector(d), rng.uniform(1.2, 3.0), rng.uniform(0.5, 1.5));
        const Vec& v = k.vertices[rng.below(k.vertices.size())];
        Mat dir(d, 1);
        const Vec u = rng.unit_vector(d);
        for (std::size_t i = 0; i < d; ++i) dir(i, 0) = u[i];
        const KFlat f{v, dir};
        CHECK(flat_hits_body(f, k).hit);
    }
}

TEST_CASE("minkowski_inflate identity, ball case and support shift") {
    Rng rng(9);
    FatBody ballish;
    ballish.vertices = {Vec{1.0, -2.0}};
    ballish.offset = 0.75;
    ballish.center = Vec{1.0, -2.0};
    ballish.inner = 0.75;
    ballish.outer = 0.75;

    const FatBody same = minkowski_inflate(ballish, 0.0);
    CHECK(same.offset == ballish.offset);
    CHECK(same.inner == ballish.inner);

    const double delta = 0.4;
    const FatBody grown = minkowski_inflate(ballish, delta);
    CHECK(grown.offset == doctest::Approx(1.15));
    for (int i = 0; i < 100; ++i) {
        const Vec u = rng.unit_vector(2);
        CHECK(support_function(grown, u) ==
              doctest::Approx(support_function(ballish, u) + delta).epsilon(1e-12));
    }
    CHECK_THROWS_AS(minkowski_inflate(ballish, -0.1), input_error);
}

TEST_CASE("fatness ratio never increases under inflation") {
    Rng rng(10);
    for (int i = 0; i < 1000; ++i) {
        const double r = rng.uniform(1e-3, 2.0);
        const double big = r * rng.uniform(1.0, 6.0);
        const double delta = rng.uniform(0.0, 3.0);
        CHECK((big + delta) / (r + delta) <= big / r + 1e-12);
    }
}

TEST_CASE("project_to_complement maps balls to equal-radius balls") {
    const KFlat zaxis = axis_flat(3, 2);
    const Mat w = complement_basis(zaxis);
    const Body b = Ball{Vec{1, 2, 3}, 0.7};
    const Body proj = project_body_to_complement(b, zaxis, w);
    const Ball& pb = std::get<Ball>(proj);
    CHECK(pb.radius == doctest::Approx(0.7));
    CHECK(pb.center.size() == 2);
    CHECK(pb.center[0] == doctest::Approx(1.0));
    CHECK(pb.center[1] == doctest::Approx(2.0));

    // a point on the flat lands at the complement origin
    const Vec on_flat{0.0, 0.0, 5.5};
    const Vec p = project_point_to_complement(on_flat, zaxis, w);
    CHECK(norm(p) == doctest::Approx(0.0));
}

TEST_CASE("projection commutes with inflation") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 3;
        const std::size_t k = 1 + rng.below(2);
        Mat g(d, k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) g(i, j) = rng.gaussian();
        const KFlat f = KFlat::make_orthonormalized(rng.gaussian_vector(d), g);
        const Mat w = complement_basis(f);
        const FatBody body = make_fat_body(rng, rng.gaussian_vector(d), 2.0, 1.0);
        const double delta = rng.uniform(0.0, 1.0);
        const Body a = project_body_to_complement(minkowski_inflate(body, delta), f, w);
        const Body b = inflate_body(project_body_to_complement(body, f, w), delta);
        for (int s = 0; s < 20; ++s) {
            const Vec u = rng.unit_vector(d - k);
            CHECK(support_function(a, u) == doctest::Approx(support_function(b, u)).epsilon(1e-9));
        }
    }
}

TEST_CASE("volumetric pigeonhole favors the common point") {
    std::vector<Body> bodies;
    for (int i = 0; i < 5; ++i) bodies.push_back(Ball{Vec{0.1 * i, 0.0}, 2.0});
    const auto res = volumetric_pigeonhole(bodies, Ball{Vec{0.0, 0.0}, 1.0}, 16);
    CHECK(res.hit_count == 5);

    CHECK_THROWS_AS(volumetric_pigeonhole({}, Ball{Vec{0.0, 0.0}, 1.0}, 8), input_error);

    // two half-plane-ish slabs filling opposite halves still yield a point
    std::vector<Body> halves;
    halves.push_back(Ball{Vec{-0.9, 0.0}, 0.9});
    halves.push_back(Ball{Vec{0.9, 0.0}, 0.9});
    const auto partial = volumetric_pigeonhole(halves, Ball{Vec{0.0, 0.0}, 1.0}, 16);
    CHECK(partial.hit_count >= 1);
}

TEST_CASE("generated fat bodies carry valid certificates") {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 2 + rng.below(2);
        const double rho = rng.uniform(1.0, 5.0);
        const FatBody k = make_fat_body(rng, rng.gaussian_vector(d), rho, rng.uniform(0.4, 2.0));
        CHECK(certificate_violation(k, 64, 1000 + trial) <= 1e-9);
        CHECK(k.outer / k.inner == doctest::Approx(rho).epsilon(1e-9));
    }
}

TEST_CASE("KFlat validation") {
    Mat skewed(2, 1);
    skewed(0, 0) = 1.0;
    skewed(1, 0) = 1.0;
    CHECK_THROWS_AS(KFlat::make(Vec{0, 0}, skewed), input_error);
    CHECK_NOTHROW(KFlat::make_orthonormalized(Vec{0, 0}, skewed));
    Family mixed;
    mixed.bodies.push_back(Ball{Vec{0, 0}, 1});
    mixed.bodies.push_back(Ball{Vec{0, 0, 0}, 1});
    CHECK_THROWS_AS(mixed.validate(), input_error);
}
