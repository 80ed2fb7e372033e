#include "doctest.h"
#include "helly/generate.hpp"
#include "helly/report.hpp"
#include "helly/rng.hpp"

using namespace helly;

TEST_CASE("generators are deterministic and validate input") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::planted_flat;
    spec.n = 8;
    spec.d = 3;
    spec.k = 1;
    spec.noise_fraction = 0.25;
    spec.seed = 5;
    const Scene a = generate(spec);
    const Scene b = generate(spec);
    CHECK(canonical_dump(scene_to_json(a)) == canonical_dump(scene_to_json(b)));

    spec.n = 0;
    CHECK_THROWS_AS(generate(spec), input_error);
    spec.n = 8;
    spec.noise_fraction = 2.0;
    CHECK_THROWS_AS(generate(spec), input_error);
}

TEST_CASE("planted scenes are actually pierced by their ground truth") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::planted_flat;
        spec.n = 10;
        spec.d = 3;
        spec.k = 1;
        spec.seed = seed;
        const Scene scene = generate(spec);
        const json meta_flat = scene.meta.at("flat");
        Vec base = meta_flat.at("base").get<Vec>();
        Mat dirs(3, 1);
        dirs.set_col(0, meta_flat.at("dirs")[0].get<Vec>());
        const KFlat truth{base, dirs};
        const int planted = scene.meta.at("planted").get<int>();
        for (int i = 0; i < planted; ++i) CHECK(flat_hits_body(truth, scene.family.bodies[i]).hit);
    }
}

TEST_CASE("cluster scenes split their mass across the planted flats") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::planted_clusters;
    spec.n = 12;
    spec.d = 2;
    spec.k = 0;
    spec.clusters = 2;
    spec.seed = 9;
    const Scene scene = generate(spec);
    const auto best = brute_force_best_flat(scene.family, 0, 48);
    CHECK(best.fraction == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("scene JSON round trip is the identity") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::spherical_planted;
    spec.n = 6;
    spec.d = 2;
    spec.k = 1;
    spec.seed = 11;
    const Scene scene = generate(spec);
    const json j = scene_to_json(scene);
    const Scene back = scene_from_json(j);
    CHECK(canonical_dump(scene_to_json(back)) == canonical_dump(j));
    CHECK(scene_hash(back) == scene_hash(scene));

    // rejected inputs
    json bad = j;
    bad["bodies"][0]["center"][0] = 2.0;  // no longer unit
    CHECK_THROWS_AS(scene_from_json(bad), input_error);
    json unknown = j;
    unknown["bodies"][0]["type"] = "torus";
    CHECK_THROWS_AS(scene_from_json(unknown), input_error);
}

TEST_CASE("full-scale overlap invariant: measured lower bound stays positive") {
    const auto findings = verify_claims_euclidean(10000, 99);
    for (const auto& f : findings) {
        CHECK(f.pass);
        if (f.name.rfind("fat-overlap", 0) == 0) {
            CHECK(f.samples == 10000);
            CHECK(f.measured.at("gamma_min") > 0.0);
        }
    }
}

TEST_CASE("verify-claims reports pass and is byte-stable") {
    const RunReport a = run_verify_claims(false, 40, 123);
    const RunReport b = run_verify_claims(false, 40, 123);
    CHECK(canonical_dump(report_to_json(a)) == canonical_dump(report_to_json(b)));
    CHECK(a.metrics.at("failed").get<int>() == 0);

    const RunReport s = run_verify_claims(true, 40, 123);
    const RunReport s2 = run_verify_claims(true, 40, 123);
    CHECK(canonical_dump(report_to_json(s)) == canonical_dump(report_to_json(s2)));
    CHECK(s.metrics.at("failed").get<int>() == 0);
}

TEST_CASE("pipeline on a fully planted scene: alpha 1, betaHat 1, tau 1") {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::planted_flat;
    spec.n = 7;
    spec.d = 3;
    spec.k = 1;
    spec.seed = 21;
    const Scene scene = generate(spec);
    SearchConfig cfg;
    cfg.seed = 22;
    cfg.restarts = 8;
    const RunReport r = run_pipeline(scene, 1, 3, cfg);
    CHECK(r.metrics.at("alpha").get<double>() == doctest::Approx(1.0));
    CHECK(r.metrics.at("betaHat").get<double>() == doctest::Approx(1.0));
    CHECK(r.metrics.at("tau").get<int>() == 1);
    CHECK(r.metrics.at("tauStar").get<double>() == doctest::Approx(1.0).epsilon(1e-6));

    // byte-identical rerun
    const RunReport r2 = run_pipeline(scene, 1, 3, cfg);
    CHECK(canonical_dump(report_to_json(r)) == canonical_dump(report_to_json(r2)));
}

TEST_CASE("pipeline on a two-cluster scene bounds tau by the LP value") {
    Rng gen(71);
    Scene scene;
    scene.dimension = 3;
    for (int c = 0; c < 2; ++c) {
        Vec base{c * 25.0, 0.0, 0.0};
        const Vec dir = gen.unit_vector(3);
        for (int i = 0; i < 5; ++i) {
            const double radius = gen.uniform(0.5, 1.0);
            Vec anchor = base + gen.uniform(-3.0, 3.0) * dir;
            scene.family.bodies.push_back(
                Ball{anchor + (0.5 * radius * gen.uniform()) * gen.unit_vector(3), radius});
        }
    }
    SearchConfig cfg;
    cfg.seed = 72;
    cfg.restarts = 8;
    const RunReport r = run_pipeline(scene, 1, 5, cfg);
    REQUIRE(r.metrics.contains("tau"));
    const int tau = r.metrics.at("tau").get<int>();
    const double tau_star = r.metrics.at("tauStar").get<double>();
    CHECK(tau_star <= tau + 1e-9);
    CHECK(tau <= 4);
    CHECK(r.metrics.at("pqCondition").get<bool>());
}

TEST_CASE("pipeline notes a skipped LP when no tuple is hit") {
    Scene scene;
    scene.dimension = 3;
    scene.family.bodies.push_back(Ball{Vec{0.0, 0.0, 0.0}, 0.01});
    scene.family.bodies.push_back(Ball{Vec{9.0, 4.0, -7.0}, 0.01});
    scene.family.bodies.push_back(Ball{Vec{-6.0, 8.0, 3.0}, 0.01});
    SearchConfig cfg;
    cfg.seed = 23;
    cfg.restarts = 6;
    const RunReport r = run_pipeline(scene, 1, 3, cfg);
    CHECK(r.metrics.value("lpSkipped", false));
}

TEST_CASE("csv twin flattens the metrics") {
    RunReport r;
    r.command = "demo";
    r.params = json{{"k", 1}};
    r.scene_hash = "00";
    r.metrics = json{{"alpha", 0.5}, {"nested", json{{"x", 1}}}};
    r.findings = json::array();
    const std::string csv = report_to_csv(r);
    CHECK(csv.find("metrics.alpha,0.5") != std::string::npos);
    CHECK(csv.find("metrics.nested.x,1") != std::string::npos);
}
