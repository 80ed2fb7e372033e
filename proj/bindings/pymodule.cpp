#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helly/claims.hpp"
#include "helly/generate.hpp"
#include "helly/report.hpp"

namespace py = pybind11;
using namespace helly;

namespace {

std::vector<std::vector<double>> mat_cols(const Mat& m) {
    std::vector<std::vector<double>> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
    return cols;
}

Mat mat_from_cols(const std::vector<std::vector<double>>& cols, std::size_t rows) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw input_error("direction columns must share the dimension");
        m.set_col(j, cols[j]);
    }
    return m;
}

SearchConfig cfg_from_kwargs(std::uint64_t seed, int restarts, double tol) {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.tol = tol;
    return cfg;
}

py::dict witness_dict(const TransversalWitness& w) {
    py::dict d;
    if (w.kind == WitnessKind::euclidean_flat) {
        d["kind"] = "euclidean-flat";
        d["base"] = w.flat.base;
        d["dirs"] = mat_cols(w.flat.dirs);
    } else {
        d["kind"] = "great-sphere";
        d["basis"] = mat_cols(w.sphere.basis);
    }
    d["margin"] = w.margin;
    return d;
}

py::object decision_obj(const TransversalDecision& dec) {
    py::dict d;
    d["best_margin"] = dec.best_margin;
    d["heuristic_no"] = dec.heuristic_no;
    d["witness"] = dec.witness ? py::object(witness_dict(*dec.witness)) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "geometric transversal engine: fat-body k-flat piercing toolkit";

    py::register_exception<input_error>(m, "InputError");
    py::register_exception<resource_error>(m, "ResourceError");
    py::register_exception<numeric_error>(m, "NumericError");

    py::class_<Ball>(m, "Ball")
        .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Ball::center)
        .def_readonly("radius", &Ball::radius);

    py::class_<FatBody>(m, "FatBody")
        .def(py::init([](std::vector<Vec> vertices, double offset, Vec center, double inner,
                         double outer) {
                 FatBody k;
                 k.vertices = std::move(vertices);
                 k.offset = offset;
                 k.center = std::move(center);
                 k.inner = inner;
                 k.outer = outer;
                 return k;
             }),
             py::arg("vertices"), py::arg("offset"), py::arg("center"), py::arg("inner"),
             py::arg("outer"))
        .def_readonly("vertices", &FatBody::vertices)
        .def_readonly("offset", &FatBody::offset)
        .def_readonly("center", &FatBody::center)
        .def_readonly("inner", &FatBody::inner)
        .def_readonly("outer", &FatBody::outer)
        .def("fatness", &FatBody::fatness);

    py::class_<KFlat>(m, "KFlat")
        .def(py::init([](Vec base, std::vector<std::vector<double>> dirs) {
                 const std::size_t d = base.size();
                 return KFlat::make_orthonormalized(std::move(base), mat_from_cols(dirs, d));
             }),
             py::arg("base"), py::arg("dirs"))
        .def_static("point", &KFlat::point, py::arg("p"))
        .def_property_readonly("base", [](const KFlat& f) { return f.base; })
        .def_property_readonly("dirs", [](const KFlat& f) { return mat_cols(f.dirs); })
        .def_property_readonly("k", [](const KFlat& f) { return f.k(); });

    py::class_<Cap>(m, "Cap")
        .def(py::init<Vec, double>(), py::arg("center"), py::arg("radius"))
        .def_readonly("center", &Cap::center)
        .def_readonly("radius", &Cap::radius);

    py::class_<GreatSphere>(m, "GreatSphere")
        .def(py::init([](std::vector<std::vector<double>> basis) {
                 if (basis.empty()) throw input_error("GreatSphere: empty basis");
                 return GreatSphere::make(mat_from_cols(basis, basis[0].size()));
             }),
             py::arg("basis"))
        .def_property_readonly("basis", [](const GreatSphere& g) { return mat_cols(g.basis); })
        .def_property_readonly("k", [](const GreatSphere& g) { return g.k(); });

    // predicates
    m.def("dist_point_flat", &dist_point_flat, py::arg("p"), py::arg("flat"));
    m.def(
        "flat_hits_ball",
        [](const KFlat& f, const Ball& b) {
            const auto r = flat_hits_ball(f, b);
            return py::make_tuple(r.hit, r.margin);
        },
        py::arg("flat"), py::arg("ball"));
    m.def(
        "flat_hits_body",
        [](const KFlat& f, const FatBody& b) {
            const auto r = flat_hits_body(f, Body{b});
            return py::make_tuple(r.hit, r.margin);
        },
        py::arg("flat"), py::arg("body"));
    m.def(
        "great_sphere_hits_cap",
        [](const GreatSphere& g, const Cap& c) {
            const auto r = great_sphere_hits_cap(g, c);
            return py::make_tuple(r.hit, r.margin);
        },
        py::arg("sphere"), py::arg("cap"));
    m.def("angular_dist", &angular_dist, py::arg("u"), py::arg("v"));
    m.def("gnomonic", &gnomonic, py::arg("w"), py::arg("u"));
    m.def(
        "minkowski_inflate",
        [](const FatBody& k, double delta) { return minkowski_inflate(k, delta); },
        py::arg("body"), py::arg("delta"));
    m.def(
        "projected_cap_radius",
        [](double r, double t) -> py::object {
            const auto v = projected_cap_radius(r, t);
            return v ? py::cast(*v) : py::none();
        },
        py::arg("r"), py::arg("t"));

    // searches
    m.def(
        "exists_point_transversal",
        [](const std::vector<Ball>& balls, std::uint64_t seed, int restarts, double tol) {
            return decision_obj(exists_point_transversal(balls, cfg_from_kwargs(seed, restarts, tol)));
        },
        py::arg("balls"), py::arg("seed") = 0, py::arg("restarts") = 32, py::arg("tol") = 1e-9);
    m.def(
        "exists_k_transversal_balls",
        [](const std::vector<Ball>& balls, std::size_t k, std::uint64_t seed, int restarts,
           double tol) {
            Family fam;
            fam.bodies.assign(balls.begin(), balls.end());
            return decision_obj(exists_k_transversal(fam, k, cfg_from_kwargs(seed, restarts, tol)));
        },
        py::arg("balls"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 32,
        py::arg("tol") = 1e-9);
    m.def(
        "exists_hyperplane_transversal",
        [](const std::vector<Ball>& balls, std::uint64_t seed, int restarts, double tol) {
            return decision_obj(
                exists_hyperplane_transversal(balls, cfg_from_kwargs(seed, restarts, tol)));
        },
        py::arg("balls"), py::arg("seed") = 0, py::arg("restarts") = 32, py::arg("tol") = 1e-9);
    m.def(
        "exists_great_sphere_transversal",
        [](const std::vector<Cap>& caps, std::size_t k, std::uint64_t seed, int restarts,
           double tol) {
            return decision_obj(
                exists_great_sphere_transversal(caps, k, cfg_from_kwargs(seed, restarts, tol)));
        },
        py::arg("caps"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 32,
        py::arg("tol") = 1e-9);

    // scene-level operations exchange canonical JSON strings
    m.def(
        "generate_scene",
        [](const std::string& kind, int n, int d, int k, double rho, double noise,
           std::uint64_t seed) {
            GeneratorSpec spec;
            spec.kind = generator_kind_from_string(kind);
            spec.n = n;
            spec.d = d;
            spec.k = k;
            spec.rho = rho;
            spec.noise_fraction = noise;
            spec.seed = seed;
            return scene_to_json(generate(spec)).dump();
        },
        py::arg("kind"), py::arg("n"), py::arg("d"), py::arg("k") = 1, py::arg("rho") = 1.0,
        py::arg("noise") = 0.0, py::arg("seed") = 0);
    m.def(
        "scene_hash",
        [](const std::string& scene_json) { return scene_hash(scene_from_json(json::parse(scene_json))); },
        py::arg("scene_json"));
    m.def(
        "tuple_alpha",
        [](const std::string& scene_json, std::size_t k, std::uint64_t seed, int restarts) {
            const Scene scene = scene_from_json(json::parse(scene_json));
            const auto cfg = cfg_from_kwargs(seed, restarts, 1e-9);
            const auto res = scene.spherical ? spherical_tuple_alpha(scene.cap_bodies(), k, cfg)
                                             : tuple_alpha(scene.family, k, cfg);
            py::dict d;
            d["alpha"] = res.alpha;
            d["hit_tuples"] = res.table.total_hits;
            d["charged_body"] = res.table.k0;
            d["charged_radius"] = res.table.epsilon;
            return d;
        },
        py::arg("scene_json"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 8);
    m.def(
        "heavy_flat_search",
        [](const std::string& scene_json, std::size_t k, std::uint64_t seed, int restarts) {
            const Scene scene = scene_from_json(json::parse(scene_json));
            const auto cfg = cfg_from_kwargs(seed, restarts, 1e-9);
            py::dict d;
            if (scene.spherical) {
                const auto res = heavy_great_sphere_search(scene.cap_bodies(), k, cfg);
                d["fraction"] = res.fraction;
                d["alpha"] = res.alpha;
                d["hit_indices"] = res.hit_indices;
                d["witness"] = sphere_to_json(res.sphere, res.min_margin).dump();
            } else {
                const auto res = heavy_flat_search(scene.family, k, cfg);
                d["fraction"] = res.fraction;
                d["alpha"] = res.alpha;
                d["hit_indices"] = res.hit_indices;
                d["witness"] = flat_to_json(res.flat, res.min_margin).dump();
            }
            return d;
        },
        py::arg("scene_json"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 8);
    m.def(
        "pierce",
        [](const std::string& scene_json, std::size_t k, const std::string& method,
           std::uint64_t seed, int restarts) {
            const Scene scene = scene_from_json(json::parse(scene_json));
            const auto cfg = cfg_from_kwargs(seed, restarts, 1e-9);
            const auto cands = scene.spherical
                                   ? witness_candidates_spherical(scene.cap_bodies(), k, cfg)
                                   : witness_candidates(scene.family, k, cfg);
            py::dict d;
            if (cands.size() == 0) {
                d["note"] = "no hit tuples: candidate set empty";
                return d;
            }
            const auto lp = fractional_transversal_lp(cands);
            const auto rounded = round_piercing(
                cands, lp, method == "lp-sampling" ? RoundingMethod::lp_sampling : RoundingMethod::greedy,
                seed);
            d["tau_star"] = lp.value;
            d["tau"] = rounded.tau;
            d["gap"] = lp.gap;
            return d;
        },
        py::arg("scene_json"), py::arg("k"), py::arg("method") = "greedy", py::arg("seed") = 0,
        py::arg("restarts") = 8);
    m.def(
        "check_pq_condition",
        [](const std::string& scene_json, std::size_t p, std::size_t k, std::uint64_t seed,
           int restarts) {
            const Scene scene = scene_from_json(json::parse(scene_json));
            return check_pq_condition(scene.family, p, k, cfg_from_kwargs(seed, restarts, 1e-9));
        },
        py::arg("scene_json"), py::arg("p"), py::arg("k"), py::arg("seed") = 0,
        py::arg("restarts") = 8);
    m.def(
        "run_verify_claims",
        [](const std::string& space, int trials, std::uint64_t seed) {
            return report_to_json(run_verify_claims(space == "spherical", trials, seed)).dump();
        },
        py::arg("space"), py::arg("trials") = 200, py::arg("seed") = 0);
    m.def(
        "run_pipeline",
        [](const std::string& scene_json, std::size_t k, std::size_t p, std::uint64_t seed,
           int restarts) {
            const Scene scene = scene_from_json(json::parse(scene_json));
            return report_to_json(run_pipeline(scene, k, p, cfg_from_kwargs(seed, restarts, 1e-9)))
                .dump();
        },
        py::arg("scene_json"), py::arg("k"), py::arg("p") = 3, py::arg("seed") = 0,
        py::arg("restarts") = 8);

    m.attr("__version__") = "0.1.0";
}
