#include "ficsl/graph_io.hpp"

#include <fstream>
#include <unordered_map>

#include "ficsl/error.hpp"

namespace ficsl::io {

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
    if (!j.is_object())
        throw FormatError(where + ": expected an object");
    auto it = j.find(name);
    if (it == j.end())
        throw FormatError(where + ": missing field '" + name + "'");
    return *it;
}

std::string string_field(const json& j, const char* name, const std::string& where) {
    const auto& f = field(j, name, where);
    if (!f.is_string())
        throw FormatError(where + ": field '" + name + "' must be a string");
    return f.get<std::string>();
}

std::int64_t int_field(const json& j, const char* name, const std::string& where) {
    const auto& f = field(j, name, where);
    if (!f.is_number_integer())
        throw FormatError(where + ": field '" + name + "' must be an integer");
    return f.get<std::int64_t>();
}

struct IdMap {
    std::unordered_map<std::int64_t, VertexId> ids;

    VertexId at(std::int64_t id, const std::string& where) const {
        auto it = ids.find(id);
        if (it == ids.end())
            throw FormatError(where + ": unknown vertex id " + std::to_string(id));
        return it->second;
    }
};

std::vector<VertexId> id_list(const json& j, const IdMap& m, const std::string& where) {
    if (!j.is_array())
        throw FormatError(where + ": expected an array of vertex ids");
    std::vector<VertexId> out;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw FormatError(where + ": vertex ids must be integers");
        out.push_back(m.at(x.get<std::int64_t>(), where));
    }
    return out;
}

GraphWithInterface parse_base(const json& j, IdMap& ids) {
    GraphWithInterface g;
    const auto& vertices = field(j, "vertices", "graph");
    if (!vertices.is_array())
        throw FormatError("graph: 'vertices' must be an array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string where = "vertices[" + std::to_string(i) + "]";
        const auto id = int_field(vertices[i], "id", where);
        if (id < 0)
            throw FormatError(where + ": vertex id must be non-negative");
        const auto label = string_field(vertices[i], "label", where);
        if (!ids.ids.emplace(id, g.graph.add_vertex(Label::of(label))).second)
            throw FormatError(where + ": duplicate vertex id " + std::to_string(id));
    }
    if (auto it = j.find("edges"); it != j.end()) {
        if (!it->is_array())
            throw FormatError("graph: 'edges' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "edges[" + std::to_string(i) + "]";
            const auto& e = (*it)[i];
            const VertexId u = ids.at(int_field(e, "u", where), where);
            const VertexId v = ids.at(int_field(e, "v", where), where);
            try {
                g.graph.add_edge(u, v, Label::of(string_field(e, "label", where)));
            } catch (const StructureError& err) {
                throw FormatError(where + ": " + err.what());
            }
        }
    }
    if (auto it = j.find("interface"); it != j.end())
        g.interface = id_list(*it, ids, "interface");
    try {
        g.validate();
    } catch (const StructureError& err) {
        throw FormatError(std::string("interface: ") + err.what());
    }
    return g;
}

} // namespace

GraphWithInterface graph_from_json(const json& j) {
    IdMap ids;
    return parse_base(j, ids);
}

GraphPattern pattern_from_json(const json& j) {
    IdMap ids;
    GraphPattern p(parse_base(j, ids));
    if (auto it = j.find("hyperedges"); it != j.end()) {
        if (!it->is_array())
            throw FormatError("pattern: 'hyperedges' must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string where = "hyperedges[" + std::to_string(i) + "]";
            const auto& h = (*it)[i];
            VariableHyperedge he{Variable::of(string_field(h, "variable", where)),
                                 id_list(field(h, "ports", where), ids, where + ".ports")};
            if (h.contains("rank") && int_field(h, "rank", where) != static_cast<std::int64_t>(he.rank()))
                throw FormatError(where + ": rank does not match the number of ports");
            p.hyperedges.push_back(std::move(he));
        }
    }
    try {
        p.validate();
    } catch (const StructureError& err) {
        throw FormatError(std::string("pattern: ") + err.what());
    }
    return p;
}

json to_json(const LabeledGraph& g) {
    json vertices = json::array();
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        vertices.push_back({{"id", v}, {"label", g.vertex_label(v).name()}});
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"label", e.label.name()}});
    return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}, {"interface", json::array()}};
}

json to_json(const GraphWithInterface& g) {
    json j = to_json(g.graph);
    j["interface"] = g.interface;
    return j;
}

json to_json(const GraphPattern& p) {
    json j = to_json(p.base);
    json hs = json::array();
    for (const auto& h : p.hyperedges)
        hs.push_back({{"variable", h.variable.name()}, {"rank", h.rank()}, {"ports", h.ports}});
    j["hyperedges"] = std::move(hs);
    return j;
}

std::vector<GraphWithInterface> graphs_from_json(const json& j) {
    std::vector<GraphWithInterface> out;
    const json* list = &j;
    if (j.is_object() && j.contains("graphs"))
        list = &j["graphs"];
    if (list->is_array()) {
        for (const auto& g : *list)
            out.push_back(graph_from_json(g));
    } else {
        out.push_back(graph_from_json(*list));
    }
    return out;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace ficsl::io
