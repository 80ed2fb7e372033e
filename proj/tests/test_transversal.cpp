#include <cmath>

#include "doctest.h"
#include "helly/generate.hpp"
#include "helly/rng.hpp"
#include "helly/scene.hpp"
#include "helly/transversal.hpp"

using namespace helly;

namespace {

SearchConfig quick_cfg(std::uint64_t seed, int restarts = 16) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    return cfg;
}

}  // namespace

TEST_CASE("point transversal: disjoint, common, tangent") {
    const auto none = exists_point_transversal(
        {Ball{Vec{0.0, 0.0}, 1.0}, Ball{Vec{5.0, 0.0}, 1.0}}, quick_cfg(1));
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.best_margin < -1.0);

    std::vector<Ball> around;
    Rng rng(2);
    for (int i = 0; i < 6; ++i) {
        const Vec c = rng.gaussian_vector(3);
        around.push_back(Ball{c, norm(c) + 0.25});
    }
    const auto common = exists_point_transversal(around, quick_cfg(2));
    REQUIRE(common.witness.has_value());
    CHECK(common.witness->margin >= 0.0);

    // three unit balls through a single shared boundary point
    std::vector<Ball> tangent;
    for (int i = 0; i < 3; ++i) {
        const double th = 2 * M_PI * i / 3;
        tangent.push_back(Ball{Vec{std::cos(th), std::sin(th)}, 1.0});
    }
    const auto touch = exists_point_transversal(tangent, quick_cfg(3));
    REQUIRE(touch.witness.has_value());
    CHECK(std::fabs(touch.witness->margin) <= 1e-6);
    CHECK(norm(touch.witness->flat.base) <= 1e-4);
}

TEST_CASE("k transversal: collinear centers give the center line") {
    Family fam;
    std::vector<double> radii{0.5, 1.5, 0.8, 1.1};
    for (int i = 0; i < 4; ++i) fam.bodies.push_back(Ball{Vec{2.0 * i, 1.0, -0.5}, radii[i]});
    const auto dec = exists_k_transversal(fam, 1, quick_cfg(4));
    REQUIRE(dec.witness.has_value());
    CHECK(dec.witness->margin == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(orthonormality_defect(dec.witness->flat.dirs) < 1e-9);
    // the line passes near every center
    for (const Body& b : fam.bodies)
        CHECK(dist_point_flat(body_center(b), dec.witness->flat) <= 1e-4);
}

TEST_CASE("k transversal: two far balls in R^3") {
    Family fam;
    fam.bodies.push_back(Ball{Vec{0.0, 0.0, 0.0}, 1.0});
    fam.bodies.push_back(Ball{Vec{10.0, 0.0, 0.0}, 1.0});
    const auto dec = exists_k_transversal(fam, 1, quick_cfg(5));
    REQUIRE(dec.witness.has_value());
    CHECK(dec.witness->margin == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("k transversal agrees with the grid oracle on planted instances") {
    Rng rng(6);
    for (int trial = 0; trial < 6; ++trial) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::planted_flat;
        spec.n = 8;
        spec.d = 3;
        spec.k = 1;
        spec.seed = 100 + trial;
        const Scene scene = generate(spec);
        const auto dec = exists_k_transversal(scene.family, 1, quick_cfg(7 + trial));
        REQUIRE(dec.witness.has_value());
        CHECK(dec.witness->margin > 0.0);
        const auto oracle = grid_oracle_k_transversal(scene.family, 1, 24);
        CHECK(oracle.witness.has_value());
    }
}

TEST_CASE("k = d returns the whole space; k > d is rejected") {
    Family fam;
    fam.bodies.push_back(Ball{Vec{1.0, 2.0}, 0.5});
    const auto dec = exists_k_transversal(fam, 2, quick_cfg(8));
    REQUIRE(dec.witness.has_value());
    CHECK_THROWS_AS(exists_k_transversal(fam, 3, quick_cfg(8)), input_error);
}

TEST_CASE("hyperplane transversal: centered, single, oracle comparison") {
    std::vector<Ball> on_plane;
    Rng rng(9);
    for (int i = 0; i < 5; ++i) {
        Vec c = rng.gaussian_vector(3);
        c[2] = 0.0;
        on_plane.push_back(Ball{c, rng.uniform(0.3, 1.0)});
    }
    const auto dec = exists_hyperplane_transversal(on_plane, quick_cfg(10));
    REQUIRE(dec.witness.has_value());
    CHECK(dec.witness->margin > 0.0);

    const auto single = exists_hyperplane_transversal({Ball{Vec{1.0, 1.0, 1.0}, 0.4}}, quick_cfg(11));
    REQUIRE(single.witness.has_value());
    CHECK(single.witness->margin == doctest::Approx(0.4).epsilon(1e-6));

    // the separated trio from the slab-feasibility rule, against the oracle
    std::vector<Ball> trio{Ball{Vec{0.0, 0.0}, 1.0}, Ball{Vec{10.0, 10.0}, 1.0},
                           Ball{Vec{10.0, 0.0}, 1.0}};
    const auto fast = exists_hyperplane_transversal(trio, quick_cfg(12));
    Family trio_fam;
    for (const Ball& b : trio) trio_fam.bodies.push_back(b);
    const auto oracle = grid_oracle_k_transversal(trio_fam, 1, 180);
    CHECK(fast.witness.has_value() == oracle.witness.has_value());
    if (fast.witness)
        CHECK(fast.witness->margin >= oracle.best_margin - 0.05);
}

TEST_CASE("great sphere transversal: common circle, antipodal pair, planted") {
    // caps centered on the equator, k = 1
    std::vector<Cap> caps;
    Rng rng(13);
    for (int i = 0; i < 5; ++i) {
        const double th = rng.uniform(0.0, 2 * M_PI);
        caps.push_back(Cap{Vec{std::cos(th), std::sin(th), 0.0}, rng.uniform(0.2, 0.5)});
    }
    const auto circle = exists_great_sphere_transversal(caps, 1, quick_cfg(14));
    REQUIRE(circle.witness.has_value());
    CHECK(circle.witness->margin > 0.0);

    // antipodal pair pierced by a great 0-sphere
    const auto pair = exists_great_sphere_transversal(
        {Cap{Vec{1.0, 0.0, 0.0}, 0.1}, Cap{Vec{-1.0, 0.0, 0.0}, 0.1}}, 0, quick_cfg(15));
    REQUIRE(pair.witness.has_value());

    // planted subspace instances
    for (int trial = 0; trial < 4; ++trial) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::spherical_planted;
        spec.n = 7;
        spec.d = 2;
        spec.k = 1;
        spec.seed = 300 + trial;
        const Scene scene = generate(spec);
        const auto dec = exists_great_sphere_transversal(scene.caps, 1, quick_cfg(16 + trial));
        REQUIRE(dec.witness.has_value());
        CHECK(dec.witness->margin > 0.0);
    }
}

TEST_CASE("grid oracle handles trivial cases") {
    Family single;
    single.bodies.push_back(Ball{Vec{0.3, -0.2, 0.9}, 0.6});
    for (std::size_t k : {0u, 1u, 2u}) {
        const auto res = grid_oracle_k_transversal(single, k, 12);
        CHECK(res.witness.has_value());
    }
    Family pair;
    pair.bodies.push_back(Ball{Vec{0.0, 0.0}, 0.5});
    pair.bodies.push_back(Ball{Vec{9.0, 0.0}, 0.5});
    const auto none = grid_oracle_k_transversal(pair, 0, 24);
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.best_margin < -2.0);

    Family big;
    for (int i = 0; i < 21; ++i) big.bodies.push_back(Ball{Vec{1.0 * i, 0.0}, 0.1});
    CHECK_THROWS_AS(grid_oracle_k_transversal(big, 1, 8), resource_error);
}

TEST_CASE("search is deterministic for a fixed config") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::planted_flat;
    spec.n = 9;
    spec.d = 3;
    spec.k = 1;
    spec.noise_fraction = 0.3;
    spec.seed = 77;
    const Scene scene = generate(spec);
    const auto a = exists_k_transversal(scene.family, 1, quick_cfg(99));
    const auto b = exists_k_transversal(scene.family, 1, quick_cfg(99));
    REQUIRE(a.witness.has_value() == b.witness.has_value());
    if (a.witness) {
        CHECK(canonical_dump(flat_to_json(a.witness->flat, a.witness->margin)) ==
              canonical_dump(flat_to_json(b.witness->flat, b.witness->margin)));
    }
}

TEST_CASE("removing a body never worsens the found margin") {
    // warm-starting the subfamily search with the full-family witness makes
    // the monotonicity of the found margin exact, not just statistical
    for (int trial = 0; trial < 4; ++trial) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::planted_flat;
        spec.n = 7;
        spec.d = 3;
        spec.k = 1;
        spec.seed = 500 + trial;
        const Scene scene = generate(spec);
        const auto full = exists_k_transversal(scene.family, 1, quick_cfg(1000 + trial, 24));
        REQUIRE(full.witness.has_value());
        Family sub = scene.family;
        sub.bodies.pop_back();
        const std::vector<KFlat> warm{full.witness->flat};
        const auto smaller = exists_k_transversal(sub, 1, quick_cfg(1000 + trial, 24), &warm);
        REQUIRE(smaller.witness.has_value());
        CHECK(smaller.witness->margin >= full.witness->margin - 1e-9);
    }
}

TEST_CASE("rigid motions preserve hits and margins") {
    Rng rng(44);
    GeneratorSpec spec;
    spec.kind = GeneratorKind::planted_flat;
    spec.n = 6;
    spec.d = 3;
    spec.k = 1;
    spec.seed = 31;
    const Scene scene = generate(spec);
    const auto dec = exists_k_transversal(scene.family, 1, quick_cfg(32));
    REQUIRE(dec.witness.has_value());

    // random rotation + translation applied to bodies and witness alike
    Mat g(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = rng.gaussian();
    const Mat rot = orthonormalized(g);
    const Vec shift = rng.gaussian_vector(3);

    KFlat moved{matvec(rot, dec.witness->flat.base) + shift, matmul(rot, dec.witness->flat.dirs)};
    for (const Body& b : scene.family.bodies) {
        const Ball& ball = std::get<Ball>(b);
        const Ball moved_ball{matvec(rot, ball.center) + shift, ball.radius};
        const double before = flat_hits_ball(dec.witness->flat, ball).margin;
        const double after = flat_hits_ball(moved, moved_ball).margin;
        CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
}
