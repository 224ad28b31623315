#pragma once

#include <string>

#include "ficsl/grammar_io.hpp"

namespace ficsl::testing {

inline std::string grammar_path(const std::string& name) { return std::string(FICSL_GRAMMAR_DIR) + "/" + name + ".json"; }

inline ClauseSystem grammar(const std::string& name) { return io::read_grammar(grammar_path(name)); }

inline ParamTuple params(const std::string& name) {
    return io::read_params(std::string(FICSL_GRAMMAR_DIR) + "/" + name + ".params.json");
}

inline io::json params_json(const std::string& name) {
    return io::read_json(std::string(FICSL_GRAMMAR_DIR) + "/" + name + ".params.json");
}

/// Path a-e-a-...-a on n vertices.
inline LabeledGraph path_graph(std::size_t n, const char* vl = "a", const char* el = "e") {
    LabeledGraph g;
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex(Label::of(vl));
    for (VertexId i = 0; i + 1 < n; ++i)
        g.add_edge(i, i + 1, Label::of(el));
    return g;
}

inline LabeledGraph cycle_graph(std::size_t n) {
    auto g = path_graph(n);
    g.add_edge(0, static_cast<VertexId>(n - 1), Label::of("e"));
    return g;
}

} // namespace ficsl::testing
