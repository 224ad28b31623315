#include "ficsl/graph_enum.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "ficsl/canonical.hpp"

namespace ficsl {

namespace {

/// Calls emit(key, graph) for every extension of a level graph by one vertex
/// whose class has not been seen yet.
template <typename Emit>
void extend_level(const std::vector<LabeledGraph>& level, const std::vector<Label>& vertex_labels,
                  const std::vector<Label>& edge_labels, std::size_t max_degree, std::unordered_set<CanonKey>& seen,
                  Emit&& emit) {
    for (const auto& g : level) {
        std::vector<VertexId> open;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) < max_degree)
                open.push_back(v);
        const std::size_t k = open.size();
        // Mixed-radix counter: digit i is 0 (no edge) or 1 + edge label index.
        const std::size_t radix = edge_labels.size() + 1;
        std::vector<std::size_t> digit(k, 0);
        while (true) {
            std::size_t deg = 0;
            for (auto d : digit)
                deg += d != 0;
            if (deg <= max_degree) {
                for (auto vl : vertex_labels) {
                    LabeledGraph h = g;
                    const VertexId fresh = h.add_vertex(vl);
                    for (std::size_t i = 0; i < k; ++i)
                        if (digit[i])
                            h.add_edge(open[i], fresh, edge_labels[digit[i] - 1]);
                    auto key = canonical_key(h);
                    if (seen.insert(key).second)
                        emit(std::move(key), std::move(h));
                }
            }
            std::size_t i = 0;
            while (i < k && ++digit[i] == radix)
                digit[i++] = 0;
            if (i == k)
                break;
        }
    }
}

} // namespace

std::vector<LabeledGraph> enumerate_graphs(std::size_t max_vertices, const std::vector<Label>& vertex_labels,
                                           const std::vector<Label>& edge_labels, std::size_t max_degree) {
    std::vector<LabeledGraph> all{LabeledGraph{}};
    std::vector<LabeledGraph> level{LabeledGraph{}};
    for (std::size_t n = 0; n < max_vertices && !vertex_labels.empty(); ++n) {
        std::unordered_set<CanonKey> seen;
        std::vector<std::pair<CanonKey, LabeledGraph>> next;
        extend_level(level, vertex_labels, edge_labels, max_degree, seen,
                     [&](CanonKey&& key, LabeledGraph&& h) { next.emplace_back(std::move(key), std::move(h)); });
        std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        level.clear();
        for (auto& [key, g] : next)
            level.push_back(std::move(g));
        all.insert(all.end(), level.begin(), level.end());
    }
    return all;
}

std::size_t for_each_graph(std::size_t max_vertices, const std::vector<Label>& vertex_labels,
                           const std::vector<Label>& edge_labels, std::size_t max_degree,
                           const std::function<void(const LabeledGraph&)>& visit) {
    if (max_vertices == 0 || vertex_labels.empty()) {
        visit(LabeledGraph{});
        return 1;
    }
    auto smaller = enumerate_graphs(max_vertices - 1, vertex_labels, edge_labels, max_degree);
    for (const auto& g : smaller)
        visit(g);
    std::size_t count = smaller.size();
    std::vector<LabeledGraph> level;
    for (const auto& g : smaller)
        if (g.vertex_count() == max_vertices - 1)
            level.push_back(g);
    smaller = {};
    std::unordered_set<CanonKey> seen;
    extend_level(level, vertex_labels, edge_labels, max_degree, seen, [&](CanonKey&&, LabeledGraph&& h) {
        visit(h);
        ++count;
    });
    return count;
}

} // namespace ficsl
