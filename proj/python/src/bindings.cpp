#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bslimits/canonical.hpp"
#include "bslimits/classes.hpp"
#include "bslimits/family.hpp"
#include "bslimits/limits.hpp"
#include "bslimits/metric.hpp"
#include "bslimits/sampling.hpp"
#include "bslimits/solve.hpp"

namespace py = pybind11;
using namespace bslimits;

namespace {

// Graphs cross the boundary as {"n": int, "root": int, "edges": [(u, v), ...]}.
py::dict to_py(const RootedGraph &g) {
    py::dict d;
    d["n"] = g.size();
    d["root"] = g.root();
    d["edges"] = g.edges();
    return d;
}

RootedGraph from_py(const py::dict &d) {
    const auto edges = d["edges"].cast<std::vector<Edge>>();
    const int n = d["n"].cast<int>();
    const int root = d.contains("root") ? d["root"].cast<int>() : 0;
    if (n < 1 || root < 0 || root >= n) {
        throw std::invalid_argument("graph needs n >= 1 and 0 <= root < n");
    }
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
            throw std::invalid_argument("edge endpoints must be distinct vertices below n");
        }
    }
    return RootedGraph::from_edges(n, edges, root);
}

py::dict link_to_py(const Link &l, const SingularityData &sing) {
    py::dict d;
    d["size"] = l.size();
    d["graph"] = to_py(l.graph());
    d["sink"] = l.sink();
    d["automorphisms"] = l.automorphisms();
    d["p"] = p_link(l, sing);
    d["q"] = q_link(l, sing);
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Local limits of subcritical block-stable graph classes";

    py::class_<SingularityData>(m, "SingularityData")
        .def_readonly("rho", &SingularityData::rho)
        .def_readonly("tau", &SingularityData::tau)
        .def_readonly("b", &SingularityData::b)
        .def_readonly("A", &SingularityData::A)
        .def_readonly("truncation_order", &SingularityData::truncation_order)
        .def("__repr__", [](const SingularityData &s) {
            return "SingularityData(rho=" + std::to_string(s.rho) + ", tau=" + std::to_string(s.tau) + ")";
        });

    m.def("builtin_names", &builtin_names);
    m.def(
        "singularity", [](const std::string &name, std::size_t order) { return find_singularity(builtin(name), 1e-12, order); },
        py::arg("class_name"), py::arg("order") = 0);
    m.def(
        "counts",
        [](const std::string &name, std::size_t n) {
            const auto c = solve_class(builtin(name), n);
            std::vector<std::string> out;
            for (std::size_t i = 0; i <= n; ++i) {
                out.push_back(c[i].get_str());
            }
            return out;
        },
        py::arg("class_name"), py::arg("n"), "Exact coefficients as strings p/q.");
    m.def(
        "links",
        [](const std::string &name, int max_size) {
            const auto cls = builtin(name);
            const auto sing = find_singularity(cls);
            py::list out;
            for (const auto &l : enumerate_links(cls, max_size)) {
                out.append(link_to_py(l, sing));
            }
            return out;
        },
        py::arg("class_name"), py::arg("max_size") = 3);
    m.def(
        "link_mass_by_size",
        [](const std::string &name, int max_size) {
            const auto cls = builtin(name);
            return link_mass_by_size(cls, find_singularity(cls), max_size);
        },
        py::arg("class_name"), py::arg("max_size"));
    m.def(
        "bs_leaf_probability",
        [](const std::string &name, std::size_t order) {
            const auto cls = builtin(name);
            return bs_chain_probability(cls, enumerate_links(cls, 1), order);
        },
        py::arg("class_name"), py::arg("order") = 0);
    m.def(
        "sample_uniform", [](const std::string &name, int n, std::uint64_t seed) {
            return to_py(sample_uniform_rooted(builtin(name), n, seed));
        },
        py::arg("class_name"), py::arg("n"), py::arg("seed"));
    m.def(
        "sample_limit_chain",
        [](const std::string &name, int k, std::uint64_t seed, double epsilon) {
            const auto cls = builtin(name);
            const auto c = sample_limit_chain(cls, find_singularity(cls), k, default_chain_mode(cls), seed, epsilon);
            py::dict d;
            std::vector<int> sizes;
            for (const auto &l : c.links) {
                sizes.push_back(l.size());
            }
            d["sizes"] = sizes;
            d["sinks"] = c.sinks;
            d["graph"] = to_py(c.assembled);
            return d;
        },
        py::arg("class_name"), py::arg("k"), py::arg("seed"), py::arg("epsilon") = 1e-3);

    m.def("normalise_family", [](const std::string &text) { return parse_family(text).to_string(); });
    m.def(
        "profile_size",
        [](const std::string &family, int r) { return rcis_profile(parse_family(family), r).codes.size(); },
        py::arg("family"), py::arg("r"));
    m.def(
        "radius",
        [](const std::string &a, const std::string &b, int r_max) {
            const auto rad = radius_similarity(parse_family(a), parse_family(b), r_max);
            return py::make_tuple(rad.r, rad.at_least);
        },
        py::arg("a"), py::arg("b"), py::arg("r_max") = kDefaultRMax, "(r, at_least)");
    m.def(
        "distance",
        [](const std::string &a, const std::string &b, int r_max) {
            const auto d = d_value(parse_family(a), parse_family(b), r_max);
            return py::make_tuple(d.value, d.upper_bound);
        },
        py::arg("a"), py::arg("b"), py::arg("r_max") = kDefaultRMax, "(d, upper_bound)");
    m.def(
        "census",
        [](const std::vector<py::dict> &graphs, int k) {
            std::vector<GraphFamily> fs;
            for (const auto &g : graphs) {
                fs.push_back(GraphFamily::finite(from_py(g)));
            }
            const auto c = ball_census(fs, k);
            py::dict d;
            d["types"] = c.types;
            d["parts"] = c.parts;
            return d;
        },
        py::arg("graphs"), py::arg("k"));
    m.def(
        "core",
        [](const py::dict &graph, const std::vector<int> &marked) {
            const auto c = core({from_py(graph), marked});
            py::dict d;
            d["graph"] = to_py(c.graph);
            d["vertices"] = c.vertices;
            d["ground"] = c.ground;
            d["first"] = c.first;
            return d;
        },
        py::arg("graph"), py::arg("marked"));
    m.def("isomorphic", [](const py::dict &a, const py::dict &b) {
        return canonical_rooted(from_py(a)) == canonical_rooted(from_py(b));
    });

    py::register_exception<FamilyParseError>(m, "FamilyParseError", PyExc_ValueError);
    py::register_exception<UndefinedGroundFloor>(m, "UndefinedGroundFloor", PyExc_ValueError);
}
