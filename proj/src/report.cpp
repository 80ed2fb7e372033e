#include "helly/report.hpp"

#include <cmath>
#include <sstream>

#include "helly/errors.hpp"

namespace helly {

json report_to_json(const RunReport& r) {
    json j;
    j["command"] = r.command;
    j["params"] = r.params;
    j["sceneHash"] = r.scene_hash;
    j["metrics"] = r.metrics;
    j["findings"] = r.findings;
    return j;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        int i = 0;
        for (const json& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

}  // namespace

std::string report_to_csv(const RunReport& r) {
    std::ostringstream out;
    out << "key,value\n";
    out << "command," << r.command << "\n";
    out << "sceneHash," << r.scene_hash << "\n";
    flatten(r.params, "params", out);
    flatten(r.metrics, "metrics", out);
    flatten(r.findings, "findings", out);
    return out.str();
}

RunReport run_verify_claims(bool spherical, int trials, std::uint64_t seed) {
    if (trials < 1) throw input_error("verify-claims: trials must be >= 1");
    RunReport r;
    r.command = "verify-claims";
    r.params = json{{"space", spherical ? "spherical" : "euclidean"}, {"trials", trials}, {"seed", seed}};
    r.scene_hash = "";
    const auto findings = spherical ? verify_claims_spherical(trials, seed)
                                    : verify_claims_euclidean(trials, seed);
    r.findings = findings_to_json(findings);
    int failed = 0;
    for (const auto& f : findings)
        if (!f.pass) ++failed;
    r.metrics = json{{"suites", findings.size()}, {"failed", failed}};
    return r;
}

RunReport run_pipeline(const Scene& scene, std::size_t k, std::size_t p, const SearchConfig& cfg) {
    RunReport r;
    r.command = "pipeline";
    r.params = json{{"k", k}, {"p", p}, {"seed", cfg.seed}, {"restarts", cfg.restarts}, {"tol", cfg.tol}};
    r.scene_hash = scene_hash(scene);
    json metrics;

    auto stage = [&](const char* name, auto&& fn) {
        try {
            fn();
        } catch (const input_error& e) {
            throw input_error(std::string(name) + ": " + e.what());
        } catch (const resource_error& e) {
            throw resource_error(std::string(name) + ": " + e.what());
        } catch (const numeric_error& e) {
            throw numeric_error(std::string(name) + ": " + e.what());
        }
    };

    if (scene.spherical) {
        const auto bodies = scene.cap_bodies();
        TupleAlphaResult stats;
        stage("tuple-alpha", [&] { stats = spherical_tuple_alpha(bodies, k, cfg); });
        metrics["alpha"] = stats.alpha;
        HeavyFlatResult heavy;
        stage("heavy-search", [&] { heavy = heavy_great_sphere_search(bodies, k, cfg); });
        metrics["betaHat"] = heavy.fraction;
        metrics["heavyDegraded"] = heavy.degraded;

        CandidateSet cands;
        stage("candidates", [&] { cands = witness_candidates_spherical(bodies, k, cfg); });
        if (cands.size() == 0) {
            metrics["lpSkipped"] = true;
        } else {
            LPSolution lp;
            bool feasible = true;
            try {
                lp = fractional_transversal_lp(cands);
            } catch (const input_error&) {
                feasible = false;  // candidates from hit tuples need not cover scattered bodies
                metrics["lpInfeasible"] = true;
            }
            if (feasible) {
                PiercingResult pierced;
                stage("rounding", [&] {
                    pierced = round_piercing(cands, lp, RoundingMethod::greedy, cfg.seed);
                });
                // re-verify every cover against the hit predicate
                for (std::size_t j = 0; j < bodies.size(); ++j) {
                    bool covered = false;
                    for (const GreatSphere& g : pierced.spheres)
                        if (great_sphere_hits_body(g, bodies[j]).hit) covered = true;
                    if (!covered)
                        throw numeric_error("rounding: verification failed for body " + std::to_string(j));
                }
                metrics["tauStar"] = lp.value;
                metrics["tau"] = pierced.tau;
                metrics["gap"] = lp.gap;
            }
        }
    } else {
        TupleAlphaResult stats;
        stage("tuple-alpha", [&] { stats = tuple_alpha(scene.family, k, cfg); });
        metrics["alpha"] = stats.alpha;
        HeavyFlatResult heavy;
        stage("heavy-search", [&] { heavy = heavy_flat_search(scene.family, k, cfg); });
        metrics["betaHat"] = heavy.fraction;
        metrics["heavyDegraded"] = heavy.degraded;
        json trace = json::array();
        for (const LevelTrace& t : heavy.trace)
            trace.push_back(json{{"k0", t.k0},
                                 {"epsilon", t.epsilon},
                                 {"projectionKind", t.projection_kind},
                                 {"recursedFraction", t.recursed_fraction},
                                 {"liftedFraction", t.lifted_fraction}});
        metrics["heavyTrace"] = trace;

        if (p >= k + 2 && scene.size() >= p) {
            bool pq = false;
            stage("pq-check", [&] { pq = check_pq_condition(scene.family, p, k, cfg); });
            metrics["pqCondition"] = pq;
        }

        CandidateSet cands;
        stage("candidates", [&] { cands = witness_candidates(scene.family, k, cfg); });
        if (cands.size() == 0) {
            metrics["lpSkipped"] = true;
        } else {
            LPSolution lp;
            bool feasible = true;
            try {
                lp = fractional_transversal_lp(cands);
            } catch (const input_error&) {
                feasible = false;
                metrics["lpInfeasible"] = true;
            }
            if (feasible) {
                PiercingResult pierced;
                stage("rounding", [&] {
                    pierced = round_piercing(cands, lp, RoundingMethod::greedy, cfg.seed);
                });
                for (std::size_t j = 0; j < scene.family.size(); ++j) {
                    bool covered = false;
                    for (const KFlat& f : pierced.flats)
                        if (flat_hits_body(f, scene.family.bodies[j]).hit) covered = true;
                    if (!covered)
                        throw numeric_error("rounding: verification failed for body " + std::to_string(j));
                }
                metrics["tauStar"] = lp.value;
                metrics["tau"] = pierced.tau;
                metrics["gap"] = lp.gap;
            }
        }
    }

    r.metrics = metrics;
    r.findings = json::array();
    return r;
}

}  // namespace helly
