#pragma once

#include <compare>
#include <functional>
#include <cstddef>
#include <span>
#include <vector>

#include "ficsl/graph.hpp"

namespace ficsl {

/// Ordered boundary specification (beta, E_B) inside sample graph `source`.
/// `boundary_edges` holds edge indices of the source graph, sorted.
struct BoundarySpec {
    std::size_t source = 0;
    std::vector<VertexId> beta;
    std::vector<std::size_t> boundary_edges;

    std::size_t rank() const noexcept { return beta.size(); }

    friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;
    friend auto operator<=>(const BoundarySpec&, const BoundarySpec&) = default;
};

/// A valid spec together with the fragment it determines.
struct BoundaryRep {
    BoundarySpec spec;
    GraphWithInterface fragment;

    std::size_t rank() const noexcept { return spec.rank(); }
};

/// beta holds distinct vertices of g, eb holds distinct edge indices of g,
/// and every edge of eb meets beta. Linear in |V| + |E|.
bool validate_spec(const LabeledGraph& g, std::span<const VertexId> beta, std::span<const std::size_t> eb);

/// The fragment K_G(beta, E_B): boundary vertices, plus every vertex of
/// G - B reachable from the far endpoints of E_B, with E_B and all edges
/// among the reached vertices. Boundary vertices come first, in beta order,
/// then reached vertices in increasing source id. Throws StructureError on
/// an invalid spec.
GraphWithInterface build_fragment(const LabeledGraph& g, const BoundarySpec& spec);

/// The empty graph with empty interface.
GraphWithInterface empty_fragment();

/// All valid specs of rank 0..w over the sample, in deterministic order:
/// graphs in sample order, ranks ascending, beta tuples lexicographic, E_B
/// subsets in binary-counter order over the incident edges. Throws
/// DegreeBoundError for a graph with degree above delta.
std::vector<BoundaryRep> enumerate_brep(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta);

/// Visits the same sequence as enumerate_brep without materializing it.
/// The callback receives each spec and its fragment.
template <typename Visit>
void for_each_brep(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta, Visit&& visit);

/// n^r * 2^(r*delta), saturating.
std::size_t brep_count_bound(std::size_t n, std::size_t r, std::size_t delta);

/// Throws DegreeBoundError if g has a vertex of degree above delta.
void check_degree(const LabeledGraph& g, std::size_t delta, std::size_t graph_index);

namespace detail {
void brep_for_graph(const LabeledGraph& g, std::size_t index, std::size_t w,
                    const std::function<void(BoundarySpec&&, GraphWithInterface&&)>& visit);
} // namespace detail

template <typename Visit>
void for_each_brep(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta, Visit&& visit) {
    for (std::size_t i = 0; i < sample.size(); ++i)
        check_degree(sample[i], delta, i);
    for (std::size_t i = 0; i < sample.size(); ++i)
        detail::brep_for_graph(sample[i], i, w, [&](BoundarySpec&& s, GraphWithInterface&& f) {
            visit(std::move(s), std::move(f));
        });
}

} // namespace ficsl
