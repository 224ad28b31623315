#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ficsl/graph.hpp"

namespace ficsl::io {

using json = nlohmann::json;

// Graph objects look like
//   {"vertices": [{"id": 0, "label": "a"}, ...],
//    "edges": [{"u": 0, "v": 1, "label": "e"}, ...],
//    "interface": [0, 1],
//    "hyperedges": [{"variable": "x", "rank": 2, "ports": [0, 1]}]}
// "interface" defaults to [] and "hyperedges" is only read for patterns.
// Vertex ids in files are arbitrary non-negative ints; they are renumbered
// densely on parse, in order of appearance.

GraphWithInterface graph_from_json(const json& j);
GraphPattern pattern_from_json(const json& j);
json to_json(const GraphWithInterface& g);
json to_json(const GraphPattern& p);
json to_json(const LabeledGraph& g);

/// A graph file holds one graph object, an array of them, or
/// {"graphs": [...]}.
std::vector<GraphWithInterface> graphs_from_json(const json& j);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

} // namespace ficsl::io
