#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ficsl/graph.hpp"

namespace ficsl {

/// One representative per isomorphism class of closed graphs with at most
/// `max_vertices` vertices over the given alphabets and with maximum degree
/// at most `max_degree`. Includes the empty graph. Ordered by vertex count,
/// then canonical key.
///
/// Built level by level: every class on n+1 vertices is some class on n
/// vertices plus one new vertex, so extending each representative in all
/// ways and deduplicating is complete.
std::vector<LabeledGraph> enumerate_graphs(std::size_t max_vertices, const std::vector<Label>& vertex_labels,
                                           const std::vector<Label>& edge_labels, std::size_t max_degree);

/// Same classes as enumerate_graphs, passed to `visit` one at a time. Only
/// graphs below `max_vertices` and the keys of the top level are kept in
/// memory; top-level graphs arrive in generation order rather than key
/// order. Returns the number of graphs visited.
std::size_t for_each_graph(std::size_t max_vertices, const std::vector<Label>& vertex_labels,
                           const std::vector<Label>& edge_labels, std::size_t max_degree,
                           const std::function<void(const LabeledGraph&)>& visit);

} // namespace ficsl
