#include "zipcert/certify.hpp"
#include "zipcert/fixtures.hpp"
#include "zipcert/homology.hpp"
#include "zipcert/io.hpp"
#include "zipcert/iso.hpp"
#include "zipcert/ops.hpp"
#include "zipcert/recognize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace zipcert;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

py::tuple verdict(const Verdict& v) { return py::make_tuple(to_string(v.value), v.witness); }

SearchOptions options(std::size_t budget, unsigned jobs) {
    SearchOptions o;
    o.node_budget = budget;
    o.jobs = jobs;
    return o;
}

// {"status": ..., "nodes": ..., "certificate": dict or None}
py::dict search_result(SearchStatus s, const SearchStats& stats, const std::optional<Json>& cert) {
    py::dict d;
    d["status"] = to_string(s);
    d["nodes"] = stats.nodes;
    d["certificate"] = cert ? to_py(*cert) : py::none();
    return d;
}

Poset poset_from(std::vector<std::string> labels, const std::vector<std::pair<std::string, std::string>>& covers) {
    return Poset::from_labeled_relation(std::move(labels), covers);
}

}  // namespace

PYBIND11_MODULE(zipcert, m) {
    m.doc() = "Finite poset constructions with certified zipping, constructibility, shelling and collapse searches";

    py::register_exception<PosetError>(m, "PosetError", PyExc_ValueError);

    py::class_<Poset>(m, "Poset")
        .def(py::init(&poset_from), py::arg("labels"), py::arg("relation"),
             "Poset generated by (lower, upper) label pairs")
        .def_static("parse", &parse_poset, py::arg("text"))
        .def("__len__", &Poset::size)
        .def_property_readonly("labels", &Poset::labels)
        .def("covers",
             [](const Poset& p) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (auto [a, b] : p.covers()) out.emplace_back(p.label(a), p.label(b));
                 return out;
             })
        .def("less", [](const Poset& p, const std::string& a, const std::string& b) { return p.less(p.at(a), p.at(b)); })
        .def("dual", &Poset::dual)
        .def("to_text", &write_poset, py::arg("name") = "")
        .def("isomorphic", [](const Poset& p, const Poset& q) { return isomorphic(p, q); })
        .def("__repr__", [](const Poset& p) { return "<Poset with " + std::to_string(p.size()) + " elements>"; });

    py::class_<FacetComplex>(m, "FacetComplex")
        .def(py::init(&FacetComplex::from_facets), py::arg("facets"))
        .def_static("parse", &parse_facets, py::arg("text"))
        .def_static("from_strings", &complex_from_strings, py::arg("facets"))
        .def_property_readonly("vertices", &FacetComplex::vertices)
        .def("face_poset", &FacetComplex::face_poset)
        .def("to_text", &write_facets, py::arg("name") = "");

    m.def("simplex", py::overload_cast<std::size_t>(&simplex), py::arg("vertices"));
    m.def("boundary_simplex", &boundary_simplex, py::arg("n"));
    m.def("cube", &cube, py::arg("n"));
    m.def("octahedron", &octahedron);
    m.def("dunce_hat", &dunce_hat);
    m.def("cone", &cone);
    m.def("dual_cone", &dual_cone);
    m.def("join", &join);
    m.def("product", &product);
    m.def("prejoin", &prejoin);
    m.def("barycentric", py::overload_cast<const Poset&>(&barycentric));
    m.def("canonical", &canonical);
    m.def("handles", &handles);
    m.def("mirror", &mirror);

    m.def(
        "betti",
        [](const Poset& p, bool reduced) {
            HomologyProfile h = homology(p, reduced);
            std::map<int, std::size_t> out;
            for (std::size_t i = 0; i < h.betti.size(); ++i) out[h.first_degree + static_cast<int>(i)] = h.betti[i];
            return out;
        },
        py::arg("poset"), py::arg("reduced") = false, "Betti numbers keyed by degree");
    m.def("is_z_acyclic", &is_z_acyclic);
    m.def("euler_characteristic", &euler_characteristic);

    m.def("is_simplicial", [](const Poset& p) { return verdict(is_simplicial(p)); });
    m.def("is_cubical", [](const Poset& p) { return verdict(is_cubical(p)); });
    m.def("is_sphere", [](const Poset& p) { return verdict(is_sphere(p)); });
    m.def("is_ball", [](const Poset& p) { return verdict(is_ball(p)); });
    m.def("is_collapsible", [](const Poset& p, std::size_t budget) { return verdict(is_collapsible_poset(p, options(budget, 1))); },
          py::arg("poset"), py::arg("budget") = SearchOptions{}.node_budget);

    const std::size_t default_budget = SearchOptions{}.node_budget;
    m.def(
        "find_construction",
        [](const Poset& p, std::size_t budget, unsigned jobs) {
            auto r = find_construction(p, options(budget, jobs));
            std::optional<Json> cert;
            if (r.tree) cert = certificate_json(p, *r.tree);
            return search_result(r.status, r.stats, cert);
        },
        py::arg("poset"), py::arg("budget") = default_budget, py::arg("jobs") = 1u);
    m.def(
        "find_zipping",
        [](const Poset& p, const std::string& goal, std::size_t budget) {
            if (goal != "singleton" && goal != "dual-cone") throw PosetError("goal is singleton or dual-cone");
            ZipGoal g = goal == "singleton" ? ZipGoal::singleton : ZipGoal::dual_cone;
            auto r = find_zipping(p, g, options(budget, 1));
            std::optional<Json> cert;
            if (r.status == SearchStatus::found) cert = certificate_json(p, r.steps, g);
            return search_result(r.status, r.stats, cert);
        },
        py::arg("poset"), py::arg("goal") = "singleton", py::arg("budget") = default_budget);
    m.def(
        "find_edge_zipping",
        [](const FacetComplex& k, const FacetComplex& target, std::size_t budget) {
            auto r = find_edge_zipping(k, target, options(budget, 1));
            std::optional<Json> cert;
            if (r.status == SearchStatus::found) cert = certificate_json(k.face_poset(), r.steps, target);
            return search_result(r.status, r.stats, cert);
        },
        py::arg("complex"), py::arg("target"), py::arg("budget") = default_budget);
    m.def(
        "find_shelling",
        [](const Poset& p, const std::string& goal, std::size_t budget) {
            if (goal != "cone" && goal != "empty") throw PosetError("goal is cone or empty");
            ShellGoal g = goal == "cone" ? ShellGoal::cone : ShellGoal::empty;
            auto r = find_shelling(p, g, options(budget, 1));
            std::optional<Json> cert;
            if (r.status == SearchStatus::found) cert = certificate_json(p, r.steps, g);
            return search_result(r.status, r.stats, cert);
        },
        py::arg("poset"), py::arg("goal") = "cone", py::arg("budget") = default_budget);
    m.def(
        "find_collapse",
        [](const Poset& p, std::size_t budget) {
            auto r = find_collapse(p, std::nullopt, options(budget, 1));
            std::optional<Json> cert;
            if (r.status == SearchStatus::found) cert = certificate_json(p, std::nullopt, r.steps);
            return search_result(r.status, r.stats, cert);
        },
        py::arg("poset"), py::arg("budget") = default_budget);
    m.def(
        "hochster_constructible",
        [](const FacetComplex& k, std::size_t budget) {
            auto r = hochster_construction(k, options(budget, 1));
            return to_string(r.status);
        },
        py::arg("complex"), py::arg("budget") = default_budget);

    m.def(
        "verify_certificate",
        [](const py::object& cert, const Poset& p, const std::optional<FacetComplex>& k) {
            Subject s{"", k ? k->face_poset() : p, k};
            CheckResult r = verify_certificate(from_py(cert), s);
            return py::make_tuple(r.ok, r.reason);
        },
        py::arg("certificate"), py::arg("poset"), py::arg("complex") = py::none(),
        "Replays a certificate dict; with a complex the subject is its face poset");
    m.def("subject_hash", &subject_hash);
    m.attr("__version__") = engine_version;
}
