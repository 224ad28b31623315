#include "ficsl/boundary.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ficsl/error.hpp"

namespace ficsl {

bool validate_spec(const LabeledGraph& g, std::span<const VertexId> beta, std::span<const std::size_t> eb) {
    const std::size_t n = g.vertex_count();
    std::vector<char> in_b(n, 0);
    for (VertexId b : beta) {
        if (b >= n || in_b[b])
            return false;
        in_b[b] = 1;
    }
    std::vector<char> used(g.edge_count(), 0);
    for (std::size_t e : eb) {
        if (e >= g.edge_count() || used[e])
            return false;
        used[e] = 1;
        const auto& edge = g.edges()[e];
        if (!in_b[edge.u] && !in_b[edge.v])
            return false;
    }
    return true;
}

GraphWithInterface build_fragment(const LabeledGraph& g, const BoundarySpec& spec) {
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    constexpr VertexId none = std::numeric_limits<VertexId>::max();
    const auto invalid = [] { return StructureError("invalid ordered boundary specification"); };

    // map doubles as the membership mask: B gets interface ids first, then
    // reached vertices are marked and numbered in id order.
    constexpr VertexId reached = none - 1;
    std::vector<VertexId> map(n, none);
    std::vector<Label> labels;
    labels.reserve(spec.beta.size());
    GraphWithInterface out;
    out.interface.reserve(spec.beta.size());
    for (VertexId b : spec.beta) {
        if (b >= n || map[b] != none)
            throw invalid();
        map[b] = static_cast<VertexId>(labels.size());
        out.interface.push_back(map[b]);
        labels.push_back(g.vertex_label(b));
    }
    const auto in_b = [&](VertexId v) { return map[v] < spec.beta.size(); };

    // S: far endpoints of boundary edges; then flood G - B from S.
    // eb is short (at most w * delta entries), so sort a copy rather than mark.
    std::vector<std::size_t> chosen(spec.boundary_edges.begin(), spec.boundary_edges.end());
    std::sort(chosen.begin(), chosen.end());
    if (std::adjacent_find(chosen.begin(), chosen.end()) != chosen.end() || (!chosen.empty() && chosen.back() >= m))
        throw invalid();
    std::vector<VertexId> stack;
    for (std::size_t e : chosen) {
        const auto& edge = g.edges()[e];
        if (!in_b(edge.u) && !in_b(edge.v))
            throw invalid();
        for (VertexId x : {edge.u, edge.v})
            if (map[x] == none) {
                map[x] = reached;
                stack.push_back(x);
            }
    }
    std::size_t count = spec.beta.size();
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& nb : g.neighbors(v))
            if (map[nb.vertex] == none) {
                map[nb.vertex] = reached;
                stack.push_back(nb.vertex);
            }
    }

    labels.reserve(count);
    for (VertexId v = 0; v < n; ++v)
        if (map[v] == reached) {
            map[v] = static_cast<VertexId>(labels.size());
            labels.push_back(g.vertex_label(v));
        }
    std::vector<Edge> edges;
    auto next_chosen = chosen.begin();
    for (std::size_t e = 0; e < m; ++e) {
        const auto& edge = g.edges()[e];
        const bool is_chosen = next_chosen != chosen.end() && *next_chosen == e;
        next_chosen += is_chosen;
        if (is_chosen || (map[edge.u] != none && map[edge.v] != none && !in_b(edge.u) && !in_b(edge.v))) {
            VertexId u = map[edge.u], v = map[edge.v];
            if (u > v)
                std::swap(u, v);
            edges.push_back({u, v, edge.label});
        }
    }
    out.graph = LabeledGraph(std::move(labels), std::move(edges), LabeledGraph::known_simple);
    return out;
}

GraphWithInterface empty_fragment() { return {}; }

std::size_t brep_count_bound(std::size_t n, std::size_t r, std::size_t delta) {
    constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
    std::size_t out = 1;
    auto mul = [&](std::size_t f) {
        if (f != 0 && out > cap / f)
            out = cap;
        else
            out *= f;
    };
    for (std::size_t i = 0; i < r; ++i)
        mul(n);
    for (std::size_t i = 0; i < r * delta; ++i)
        mul(2);
    return out;
}

void check_degree(const LabeledGraph& g, std::size_t delta, std::size_t graph_index) {
    const std::size_t d = g.max_degree();
    if (d > delta)
        throw DegreeBoundError("sample graph " + std::to_string(graph_index) + " has degree " + std::to_string(d) +
                                   " above the bound " + std::to_string(delta),
                               graph_index, d);
}

namespace detail {

void brep_for_graph(const LabeledGraph& g, std::size_t index, std::size_t w,
                    const std::function<void(BoundarySpec&&, GraphWithInterface&&)>& visit) {
    const std::size_t n = g.vertex_count();
    std::vector<VertexId> beta;
    std::vector<char> in_b(n, 0);
    std::vector<std::size_t> incident;

    auto emit_all_subsets = [&] {
        incident.clear();
        for (VertexId b : beta)
            for (const auto& nb : g.neighbors(b))
                incident.push_back(nb.edge);
        std::sort(incident.begin(), incident.end());
        incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
        const std::size_t k = incident.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            BoundarySpec spec{index, beta, {}};
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1u)
                    spec.boundary_edges.push_back(incident[i]);
            if (!validate_spec(g, spec.beta, spec.boundary_edges))
                continue;
            auto fragment = build_fragment(g, spec);
            visit(std::move(spec), std::move(fragment));
        }
    };

    // Injective tuples of length r in lexicographic order.
    auto tuples = [&](auto&& self, std::size_t r) -> void {
        if (beta.size() == r) {
            emit_all_subsets();
            return;
        }
        for (VertexId v = 0; v < n; ++v) {
            if (in_b[v])
                continue;
            in_b[v] = 1;
            beta.push_back(v);
            self(self, r);
            beta.pop_back();
            in_b[v] = 0;
        }
    };
    for (std::size_t r = 0; r <= w && r <= n; ++r)
        tuples(tuples, r);
}

} // namespace detail

std::vector<BoundaryRep> enumerate_brep(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta) {
    std::vector<BoundaryRep> out;
    for_each_brep(sample, w, delta, [&](BoundarySpec&& s, GraphWithInterface&& f) {
        out.push_back({std::move(s), std::move(f)});
    });
    return out;
}

} // namespace ficsl
