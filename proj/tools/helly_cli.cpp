#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "helly/errors.hpp"
#include "helly/generate.hpp"
#include "helly/report.hpp"

namespace {

using namespace helly;

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw input_error("cannot write output file: " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
}

void emit_report(const RunReport& report, const std::string& format, const std::string& path) {
    if (format == "csv")
        write_output(report_to_csv(report), path);
    else
        write_output(report_to_json(report).dump(2), path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric transversal engine: fat-body k-flat piercing toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    double tol = 1e-9;
    int restarts = 64;
    int k = 1;
    int p = 3;
    std::string out_path;
    std::string format = "json";
    app.add_option("--seed", seed, "random seed (uint64)");
    app.add_option("--tol", tol, "geometric tolerance");
    app.add_option("--restarts", restarts, "multistart restarts");
    app.add_option("--k", k, "flat dimension k");
    app.add_option("--p", p, "p for the (p, k+2) condition");
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    // gen
    auto* gen = app.add_subcommand("gen", "generate a scene");
    std::string gen_kind = "planted-flat";
    int gen_n = 10, gen_d = 3, gen_clusters = 2;
    double gen_rho = 1.0, gen_noise = 0.0;
    gen->add_option("--kind", gen_kind, "planted-flat|planted-clusters|uniform-random|spherical-planted");
    gen->add_option("--n", gen_n, "number of bodies");
    gen->add_option("--d", gen_d, "dimension");
    gen->add_option("--rho", gen_rho, "fatness parameter (>= 1)");
    gen->add_option("--noise", gen_noise, "noise fraction in [0,1]");
    gen->add_option("--clusters", gen_clusters, "cluster count (planted-clusters)");

    // check-tuples
    auto* tuples = app.add_subcommand("check-tuples", "tuple transversal statistics");
    std::string tuples_scene;
    tuples->add_option("--scene", tuples_scene, "scene JSON path")->required();

    // heavy-flat
    auto* heavy = app.add_subcommand("heavy-flat", "recursive heavy-flat search");
    std::string heavy_scene;
    heavy->add_option("--scene", heavy_scene, "scene JSON path")->required();

    // pierce
    auto* pierce = app.add_subcommand("pierce", "LP + rounding piercing pipeline");
    std::string pierce_scene, pierce_method = "greedy", incidence_path;
    pierce->add_option("--scene", pierce_scene, "scene JSON path")->required();
    pierce->add_option("--method", pierce_method, "greedy|lp-sampling")
        ->check(CLI::IsMember({"greedy", "lp-sampling"}));
    pierce->add_option("--incidence", incidence_path, "write the coverage matrix as CSV");

    // verify-claims
    auto* claims = app.add_subcommand("verify-claims", "run the property suites");
    std::string claims_space = "euclidean";
    int claims_trials = 1000;
    claims->add_option("--space", claims_space, "euclidean|spherical")
        ->check(CLI::IsMember({"euclidean", "spherical"}));
    claims->add_option("--trials", claims_trials, "samples per suite");

    // run (full pipeline report)
    auto* run = app.add_subcommand("report", "re-format a report (json <-> csv)");
    std::string report_in;
    run->add_option("--in", report_in, "report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    SearchConfig cfg;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.restarts = restarts;

    try {
        if (gen->parsed()) {
            GeneratorSpec spec;
            spec.kind = generator_kind_from_string(gen_kind);
            spec.n = gen_n;
            spec.d = gen_d;
            spec.k = k;
            spec.rho = gen_rho;
            spec.noise_fraction = gen_noise;
            spec.seed = seed;
            spec.clusters = gen_clusters;
            const Scene scene = generate(spec);
            write_output(scene_to_json(scene).dump(2), out_path);
        } else if (tuples->parsed()) {
            const Scene scene = load_scene(tuples_scene);
            RunReport r;
            r.command = "check-tuples";
            r.params = json{{"k", k}, {"seed", seed}, {"restarts", restarts}};
            r.scene_hash = scene_hash(scene);
            TupleAlphaResult stats = scene.spherical
                                         ? spherical_tuple_alpha(scene.cap_bodies(), k, cfg)
                                         : tuple_alpha(scene.family, k, cfg);
            r.metrics = json{{"alpha", stats.alpha},
                             {"hitTuples", stats.table.total_hits},
                             {"tuples", stats.table.tuples.size()},
                             {"chargedBody", stats.table.k0},
                             {"chargedRadius", stats.table.epsilon}};
            if (!scene.spherical && p >= k + 2 && static_cast<std::size_t>(p) <= scene.size())
                r.metrics["pqCondition"] = check_pq_condition(scene.family, p, k, cfg);
            r.findings = json::array();
            emit_report(r, format, out_path);
        } else if (heavy->parsed()) {
            const Scene scene = load_scene(heavy_scene);
            RunReport r;
            r.command = "heavy-flat";
            r.params = json{{"k", k}, {"seed", seed}, {"restarts", restarts}};
            r.scene_hash = scene_hash(scene);
            json witness;
            HeavyFlatResult res;
            if (scene.spherical) {
                res = heavy_great_sphere_search(scene.cap_bodies(), k, cfg);
                witness = sphere_to_json(res.sphere, res.min_margin);
            } else {
                res = heavy_flat_search(scene.family, k, cfg);
                witness = flat_to_json(res.flat, res.min_margin);
            }
            json trace = json::array();
            for (const LevelTrace& t : res.trace)
                trace.push_back(json{{"k0", t.k0},
                                     {"epsilon", t.epsilon},
                                     {"projectionKind", t.projection_kind},
                                     {"recursedFraction", t.recursed_fraction},
                                     {"liftedFraction", t.lifted_fraction}});
            r.metrics = json{{"alpha", res.alpha},
                             {"betaHat", res.fraction},
                             {"hitCount", res.hit_indices.size()},
                             {"degraded", res.degraded},
                             {"witness", witness},
                             {"trace", trace}};
            r.findings = json::array();
            emit_report(r, format, out_path);
        } else if (pierce->parsed()) {
            const Scene scene = load_scene(pierce_scene);
            const auto method =
                pierce_method == "greedy" ? RoundingMethod::greedy : RoundingMethod::lp_sampling;
            CandidateSet cands = scene.spherical
                                     ? witness_candidates_spherical(scene.cap_bodies(), k, cfg)
                                     : witness_candidates(scene.family, k, cfg);
            json j;
            j["seed"] = seed;
            j["method"] = pierce_method;
            if (cands.size() == 0) {
                j["note"] = "no hit tuples: candidate set empty, LP skipped";
            } else {
                const LPSolution lp = fractional_transversal_lp(cands);
                const PiercingResult res = round_piercing(cands, lp, method, seed);
                // re-verify the cover with the hit predicates, never the matrix
                for (std::size_t b = 0; b < scene.size(); ++b) {
                    bool covered = false;
                    for (const KFlat& f : res.flats)
                        if (flat_hits_body(f, scene.family.bodies[b]).hit) covered = true;
                    for (const GreatSphere& g : res.spheres)
                        if (great_sphere_hits_cap(g, scene.caps[b]).hit) covered = true;
                    if (!covered)
                        throw numeric_error("pierce: verification failed for body " + std::to_string(b));
                }
                j["tauStar"] = lp.value;
                j["tau"] = res.tau;
                j["gap"] = lp.gap;
                json flats = json::array();
                for (const KFlat& f : res.flats) flats.push_back(flat_to_json(f, 0.0));
                for (const GreatSphere& g : res.spheres) flats.push_back(sphere_to_json(g, 0.0));
                j["flats"] = flats;
                if (res.fell_back_to_greedy) j["fellBackToGreedy"] = true;
                if (!incidence_path.empty()) {
                    std::ostringstream csv;
                    csv << "candidate,body,covers\n";
                    for (std::size_t i = 0; i < cands.size(); ++i)
                        for (std::size_t b = 0; b < cands.n_bodies; ++b)
                            csv << i << "," << b << "," << (cands.coverage[i][b] ? 1 : 0) << "\n";
                    write_output(csv.str(), incidence_path);
                }
            }
            write_output(j.dump(2), out_path);
        } else if (claims->parsed()) {
            const RunReport r = run_verify_claims(claims_space == "spherical", claims_trials, seed);
            emit_report(r, format, out_path);
            int failed = r.metrics.at("failed").get<int>();
            if (failed > 0) std::cerr << failed << " claim suite(s) reported findings\n";
        } else if (run->parsed()) {
            std::ifstream in(report_in);
            if (!in) throw input_error("cannot open report: " + report_in);
            json j;
            in >> j;
            RunReport r;
            r.command = j.value("command", "");
            r.params = j.value("params", json::object());
            r.scene_hash = j.value("sceneHash", "");
            r.metrics = j.value("metrics", json::object());
            r.findings = j.value("findings", json::array());
            emit_report(r, format, out_path);
        }
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
