#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "ficsl/graph.hpp"

namespace ficsl::testing {

inline std::vector<Label> labels(std::initializer_list<const char*> names) {
    std::vector<Label> out;
    for (auto n : names)
        out.push_back(Label::of(n));
    return out;
}

/// Random connected graph: a random spanning tree respecting max_degree,
/// then extra edges while the degree bound allows.
inline LabeledGraph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t max_degree,
                                     const std::vector<Label>& vlabels, const std::vector<Label>& elabels,
                                     double extra_edge_prob = 0.3) {
    LabeledGraph g;
    auto pick = [&](const std::vector<Label>& ls) {
        return ls[std::uniform_int_distribution<std::size_t>(0, ls.size() - 1)(rng)];
    };
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex(pick(vlabels));
    for (VertexId v = 1; v < n; ++v) {
        std::vector<VertexId> open;
        for (VertexId u = 0; u < v; ++u)
            if (g.degree(u) < max_degree)
                open.push_back(u);
        if (open.empty())
            break;  // degree bound too tight to stay connected; caller tolerates
        VertexId u = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
        g.add_edge(u, v, pick(elabels));
    }
    std::bernoulli_distribution extra(extra_edge_prob);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (!g.edge_index(u, v) && g.degree(u) < max_degree && g.degree(v) < max_degree && extra(rng))
                g.add_edge(u, v, pick(elabels));
    return g;
}

inline LabeledGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, const std::vector<Label>& vlabels,
                                 const std::vector<Label>& elabels) {
    LabeledGraph g;
    auto pick = [&](const std::vector<Label>& ls) {
        return ls[std::uniform_int_distribution<std::size_t>(0, ls.size() - 1)(rng)];
    };
    for (std::size_t i = 0; i < n; ++i)
        g.add_vertex(pick(vlabels));
    std::bernoulli_distribution coin(p);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v, pick(elabels));
    return g;
}

inline std::vector<VertexId> random_tuple(std::mt19937_64& rng, std::size_t n, std::size_t r) {
    std::vector<VertexId> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(r, n));
    return all;
}

/// Copy of g with vertices renamed by perm (old id -> new id) and edges
/// inserted in a shuffled order.
inline GraphWithInterface permuted(const GraphWithInterface& g, const std::vector<VertexId>& perm,
                                   std::mt19937_64& rng) {
    const std::size_t n = g.graph.vertex_count();
    std::vector<Label> lab(n);
    for (VertexId v = 0; v < n; ++v)
        lab[perm[v]] = g.graph.vertex_label(v);
    GraphWithInterface out;
    for (auto l : lab)
        out.graph.add_vertex(l);
    auto edges = g.graph.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (const auto& e : edges)
        out.graph.add_edge(perm[e.v], perm[e.u], e.label);
    for (VertexId v : g.interface)
        out.interface.push_back(perm[v]);
    return out;
}

inline GraphWithInterface shuffled(const GraphWithInterface& g, std::mt19937_64& rng) {
    std::vector<VertexId> perm(g.graph.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return permuted(g, perm, rng);
}

} // namespace ficsl::testing
