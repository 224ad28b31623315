#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ficsl/symbol.hpp"

namespace ficsl {

/// Vertex ids are dense indices 0..n-1, meaningful within one graph only.
using VertexId = std::uint32_t;

struct Edge {
    VertexId u;  ///< smaller endpoint
    VertexId v;  ///< larger endpoint
    Label label;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
    VertexId vertex;
    Label label;
    std::uint32_t edge;  ///< index into LabeledGraph::edges()
};

/// Finite, simple, undirected graph with one label per vertex and per edge.
class LabeledGraph {
public:
    enum class EdgeInsert { added, merged, conflict };

    LabeledGraph() = default;
    /// Bulk construction with adjacency lists sized up front. Same checks
    /// as add_edge.
    LabeledGraph(std::vector<Label> vertex_labels, const std::vector<Edge>& edges);

    struct known_simple_t {};
    static constexpr known_simple_t known_simple{};
    /// Bulk construction for edge lists already known to be simple, with
    /// u < v and endpoints in range (e.g. images of a simple graph under an
    /// injective map). Parallel edges are not detected.
    LabeledGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges, known_simple_t);

    VertexId add_vertex(Label label);

    /// Throws StructureError on self-loops, unknown endpoints or an existing
    /// edge on the same pair.
    void add_edge(VertexId u, VertexId v, Label label);

    /// Like add_edge, but an existing edge with the same label is merged and
    /// one with a different label is reported instead of thrown.
    EdgeInsert insert_edge(VertexId u, VertexId v, Label label);

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

    Label vertex_label(VertexId v) const { return labels_[v]; }
    const std::vector<Label>& vertex_labels() const noexcept { return labels_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_[v]; }

    std::optional<std::size_t> edge_index(VertexId u, VertexId v) const;
    std::optional<Label> edge_label(VertexId u, VertexId v) const;
    bool has_vertex(VertexId v) const noexcept { return v < labels_.size(); }

    std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
    std::size_t max_degree() const;

    void reserve(std::size_t vertices, std::size_t edges);

private:
    std::vector<Label> labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Graph together with an ordered tuple of distinct interface vertices.
struct GraphWithInterface {
    LabeledGraph graph;
    std::vector<VertexId> interface;

    std::size_t rank() const noexcept { return interface.size(); }
    bool closed() const noexcept { return interface.empty(); }

    /// Throws StructureError unless every interface vertex exists and the
    /// tuple has no repeats.
    void validate() const;
};

struct VariableHyperedge {
    Variable variable;
    std::vector<VertexId> ports;

    std::size_t rank() const noexcept { return ports.size(); }
};

/// Graph with interface plus variable hyperedges with ordered ports.
struct GraphPattern {
    GraphWithInterface base;
    std::vector<VariableHyperedge> hyperedges;

    GraphPattern() = default;
    explicit GraphPattern(GraphWithInterface g) : base(std::move(g)) {}

    bool ground() const noexcept { return hyperedges.empty(); }
    std::size_t rank() const noexcept { return base.rank(); }

    /// Distinct variables in order of first occurrence.
    std::vector<Variable> variables() const;

    /// Throws StructureError on bad ports, repeated ports, or a variable used
    /// with two different ranks.
    void validate() const;
};

using Substitution = std::map<Variable, GraphWithInterface>;

/// Glue `g` and `h` along their interfaces. Returns nullopt ("undefined")
/// when the ranks differ, identified vertices disagree on their label, or two
/// glued edges on one vertex pair carry different labels. The glued interface
/// is discarded.
std::optional<LabeledGraph> compose(const GraphWithInterface& g, const GraphWithInterface& h);

/// Replace every hyperedge by a fresh copy of its binding. Throws
/// StructureError for unbound variables or rank mismatches; returns nullopt
/// under the same conflicts as compose.
std::optional<GraphWithInterface> realize(const GraphPattern& h, const Substitution& theta);

/// Hot-path form of realize: `bound[i]` is the graph substituted for
/// hyperedge i. Ranks must already agree.
std::optional<GraphWithInterface> realize_bound(const GraphPattern& h,
                                                std::span<const GraphWithInterface* const> bound);

/// Interface-preserving isomorphism test by direct backtracking.
bool iso_check(const GraphWithInterface& g, const GraphWithInterface& h);
bool iso_check(const GraphPattern& g, const GraphPattern& h);

/// Disjoint-copy helpers used by tests and tools.
GraphWithInterface closed(LabeledGraph g);

} // namespace ficsl
