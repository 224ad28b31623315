// Python bindings. Graphs, grammars and parameters cross the boundary as
// JSON text in the same formats the command-line tool reads.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ficsl/boundary.hpp"
#include "ficsl/canonical.hpp"
#include "ficsl/error.hpp"
#include "ficsl/experiment.hpp"
#include "ficsl/grammar_io.hpp"
#include "ficsl/learner.hpp"
#include "ficsl/membership.hpp"
#include "ficsl/teacher.hpp"

namespace py = pybind11;
using namespace ficsl;
using io::json;

namespace {

std::vector<LabeledGraph> closed_graphs(const std::string& text) {
    std::vector<LabeledGraph> out;
    for (auto& g : io::graphs_from_json(json::parse(text)))
        out.push_back(std::move(g.graph));
    return out;
}

LabeledGraph one_graph(const std::string& text) { return io::graph_from_json(json::parse(text)).graph; }

ClauseSystem grammar(const std::string& text) { return io::grammar_from_json(json::parse(text)); }
ParamTuple params(const std::string& text) { return io::params_from_json(json::parse(text)); }

std::string canonical_key_hex(const std::string& graph) {
    return canonical_key(io::graph_from_json(json::parse(graph))).hex();
}

bool isomorphic(const std::string& a, const std::string& b) {
    return iso_check(io::graph_from_json(json::parse(a)), io::graph_from_json(json::parse(b)));
}

std::optional<std::string> compose_json(const std::string& a, const std::string& b) {
    auto g = compose(io::graph_from_json(json::parse(a)), io::graph_from_json(json::parse(b)));
    if (!g)
        return std::nullopt;
    return io::to_json(*g).dump();
}

std::string brep_json(const std::string& sample, std::size_t w, std::size_t delta) {
    json out = json::array();
    for (const auto& rep : enumerate_brep(closed_graphs(sample), w, delta))
        out.push_back({{"source", rep.spec.source},
                       {"beta", rep.spec.beta},
                       {"boundary_edges", rep.spec.boundary_edges},
                       {"key", canonical_key(rep.fragment).hex()},
                       {"fragment", io::to_json(rep.fragment)}});
    return out.dump();
}

std::vector<std::string> check_json(const std::string& g, const std::string& p) {
    std::vector<std::string> out;
    for (const auto& v : check_bounded(grammar(g), params(p)))
        out.push_back(v.describe());
    return out;
}

bool member_json(const std::string& g, const std::string& graph, const std::string& p) {
    auto gamma = grammar(g);
    return member(gamma, gamma.start(), one_graph(graph), params(p));
}

std::string generate_json(const std::string& g, const std::string& p, std::size_t cap) {
    json out = json::array();
    for (const auto& graph : generate_language(grammar(g), params(p), cap))
        out.push_back(io::to_json(graph));
    return out.dump();
}

std::string learn_json(const std::string& g, const std::string& p, std::size_t cap, std::size_t stages,
                       std::size_t check_cap, std::optional<std::uint64_t> seed) {
    RunConfig rc{cap, stages, check_cap, seed};
    auto run = run_learning(grammar(g), params(p), rc);
    json stages_out = json::array();
    for (std::size_t i = 0; i < run.records.size(); ++i) {
        const auto& r = run.records[i];
        stages_out.push_back({{"stage", r.stage},
                              {"update", r.update},
                              {"basis_size", r.basis_size},
                              {"residual_size", r.residual_size},
                              {"clauses", r.clauses},
                              {"queries", r.queries},
                              {"digest", r.digest},
                              {"disagreements", run.disagreements[i]}});
    }
    return json{{"presentation_length", run.presentation_length},
                {"converged_at", run.converged_at ? json(*run.converged_at) : json(nullptr)},
                {"hypothesis", io::to_json(run.final_hypothesis)},
                {"stages", stages_out}}
        .dump();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of the ficsl package; use the wrappers in ficsl.";
    py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<json::exception>(m, "FormatError", PyExc_ValueError);

    m.def("canonical_key", &canonical_key_hex, py::arg("graph"));
    m.def("isomorphic", &isomorphic, py::arg("a"), py::arg("b"));
    m.def("compose", &compose_json, py::arg("a"), py::arg("b"));
    m.def("enumerate_brep", &brep_json, py::arg("sample"), py::arg("w"), py::arg("delta"));
    m.def("check", &check_json, py::arg("grammar"), py::arg("params"));
    m.def("member", &member_json, py::arg("grammar"), py::arg("graph"), py::arg("params"));
    m.def("generate_language", &generate_json, py::arg("grammar"), py::arg("params"), py::arg("cap"));
    m.def("learn", &learn_json, py::arg("target"), py::arg("params"), py::arg("cap"), py::arg("stages"),
          py::arg("check_cap"), py::arg("seed") = std::nullopt, py::call_guard<py::gil_scoped_release>());
}
