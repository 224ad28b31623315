#include <cassert>
#include "ficsl/graph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "ficsl/error.hpp"

namespace ficsl {

namespace {

struct SymbolTable {
    std::shared_mutex mutex;
    std::deque<std::string> names{std::string{}};
    std::unordered_map<std::string_view, std::uint32_t> ids{{std::string_view(names.front()), 0}};
};

SymbolTable& symbols() {
    static SymbolTable table;
    return table;
}

} // namespace

Symbol Symbol::of(std::string_view name) {
    auto& t = symbols();
    {
        std::shared_lock lock(t.mutex);
        if (auto it = t.ids.find(name); it != t.ids.end())
            return Symbol(it->second);
    }
    std::unique_lock lock(t.mutex);
    if (auto it = t.ids.find(name); it != t.ids.end())
        return Symbol(it->second);
    auto id = static_cast<std::uint32_t>(t.names.size());
    t.names.emplace_back(name);
    t.ids.emplace(std::string_view(t.names.back()), id);
    return Symbol(id);
}

const std::string& Symbol::name() const {
    auto& t = symbols();
    std::shared_lock lock(t.mutex);
    return t.names[id_];
}

// ---------------------------------------------------------------------------
// LabeledGraph

LabeledGraph::LabeledGraph(std::vector<Label> vertex_labels, const std::vector<Edge>& edges)
    : labels_(std::move(vertex_labels)), adjacency_(labels_.size()) {
    std::vector<std::uint32_t> degree(labels_.size(), 0);
    for (const auto& e : edges) {
        if (e.u < degree.size())
            ++degree[e.u];
        if (e.v < degree.size())
            ++degree[e.v];
    }
    for (std::size_t v = 0; v < labels_.size(); ++v)
        adjacency_[v].reserve(degree[v]);
    edges_.reserve(edges.size());
    for (const auto& e : edges)
        add_edge(e.u, e.v, e.label);
}

LabeledGraph::LabeledGraph(std::vector<Label> vertex_labels, std::vector<Edge> edges, known_simple_t)
    : labels_(std::move(vertex_labels)), edges_(std::move(edges)), adjacency_(labels_.size()) {
    std::vector<std::uint32_t> degree(labels_.size(), 0);
    for (const auto& e : edges_) {
        assert(e.u < e.v && e.v < labels_.size());
        ++degree[e.u];
        ++degree[e.v];
    }
    for (std::size_t v = 0; v < labels_.size(); ++v)
        adjacency_[v].reserve(degree[v]);
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        adjacency_[e.u].push_back({e.v, e.label, i});
        adjacency_[e.v].push_back({e.u, e.label, i});
    }
}

VertexId LabeledGraph::add_vertex(Label label) {
    labels_.push_back(label);
    adjacency_.emplace_back();
    return static_cast<VertexId>(labels_.size() - 1);
}

void LabeledGraph::reserve(std::size_t vertices, std::size_t edges) {
    labels_.reserve(vertices);
    adjacency_.reserve(vertices);
    edges_.reserve(edges);
}

LabeledGraph::EdgeInsert LabeledGraph::insert_edge(VertexId u, VertexId v, Label label) {
    if (!has_vertex(u) || !has_vertex(v))
        throw StructureError("edge endpoint " + std::to_string(has_vertex(u) ? v : u) +
                             " is not a vertex");
    if (u == v)
        throw StructureError("self-loop on vertex " + std::to_string(u));
    if (u > v)
        std::swap(u, v);
    const auto& smaller = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    const VertexId other = &smaller == &adjacency_[u] ? v : u;
    for (const auto& n : smaller) {
        if (n.vertex == other)
            return n.label == label ? EdgeInsert::merged : EdgeInsert::conflict;
    }
    const auto index = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({u, v, label});
    adjacency_[u].push_back({v, label, index});
    adjacency_[v].push_back({u, label, index});
    return EdgeInsert::added;
}

void LabeledGraph::add_edge(VertexId u, VertexId v, Label label) {
    if (insert_edge(u, v, label) != EdgeInsert::added)
        throw StructureError("parallel edge between " + std::to_string(u) + " and " + std::to_string(v));
}

std::optional<std::size_t> LabeledGraph::edge_index(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v))
        return std::nullopt;
    for (const auto& n : adjacency_[u])
        if (n.vertex == v)
            return n.edge;
    return std::nullopt;
}

std::optional<Label> LabeledGraph::edge_label(VertexId u, VertexId v) const {
    if (!has_vertex(u) || !has_vertex(v))
        return std::nullopt;
    for (const auto& n : adjacency_[u])
        if (n.vertex == v)
            return n.label;
    return std::nullopt;
}

std::size_t LabeledGraph::max_degree() const {
    std::size_t best = 0;
    for (const auto& a : adjacency_)
        best = std::max(best, a.size());
    return best;
}

// ---------------------------------------------------------------------------
// Interfaces and patterns

namespace {

void check_distinct_vertices(const LabeledGraph& g, std::span<const VertexId> tuple, const char* what) {
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (!g.has_vertex(tuple[i]))
            throw StructureError(std::string(what) + " vertex " + std::to_string(tuple[i]) +
                                 " is not in the graph");
        for (std::size_t j = 0; j < i; ++j)
            if (tuple[j] == tuple[i])
                throw StructureError(std::string(what) + " repeats vertex " + std::to_string(tuple[i]));
    }
}

} // namespace

void GraphWithInterface::validate() const {
    check_distinct_vertices(graph, interface, "interface");
}

std::vector<Variable> GraphPattern::variables() const {
    std::vector<Variable> out;
    for (const auto& h : hyperedges)
        if (std::find(out.begin(), out.end(), h.variable) == out.end())
            out.push_back(h.variable);
    return out;
}

void GraphPattern::validate() const {
    base.validate();
    std::map<Variable, std::size_t> ranks;
    for (const auto& h : hyperedges) {
        check_distinct_vertices(base.graph, h.ports, "hyperedge port");
        auto [it, inserted] = ranks.emplace(h.variable, h.rank());
        if (!inserted && it->second != h.rank())
            throw StructureError("variable " + h.variable.name() + " used with ranks " +
                                 std::to_string(it->second) + " and " + std::to_string(h.rank()));
    }
}

GraphWithInterface closed(LabeledGraph g) { return GraphWithInterface{std::move(g), {}}; }

// ---------------------------------------------------------------------------
// Gluing

namespace {

/// Copy `part` into `target`, identifying part.interface[j] with anchors[j].
/// Returns false on a label conflict.
bool glue_into(LabeledGraph& target, const GraphWithInterface& part, std::span<const VertexId> anchors,
               std::vector<VertexId>& scratch) {
    const auto& g = part.graph;
    constexpr VertexId unmapped = static_cast<VertexId>(-1);
    scratch.assign(g.vertex_count(), unmapped);
    for (std::size_t j = 0; j < part.interface.size(); ++j) {
        const VertexId src = part.interface[j];
        if (g.vertex_label(src) != target.vertex_label(anchors[j]))
            return false;
        scratch[src] = anchors[j];
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (scratch[v] == unmapped)
            scratch[v] = target.add_vertex(g.vertex_label(v));
    for (const auto& e : g.edges()) {
        if (target.insert_edge(scratch[e.u], scratch[e.v], e.label) == LabeledGraph::EdgeInsert::conflict)
            return false;
    }
    return true;
}

} // namespace

std::optional<LabeledGraph> compose(const GraphWithInterface& g, const GraphWithInterface& h) {
    g.validate();
    h.validate();
    if (g.rank() != h.rank())
        return std::nullopt;
    LabeledGraph out = g.graph;
    out.reserve(g.graph.vertex_count() + h.graph.vertex_count(), g.graph.edge_count() + h.graph.edge_count());
    std::vector<VertexId> scratch;
    if (!glue_into(out, h, g.interface, scratch))
        return std::nullopt;
    return out;
}

std::optional<GraphWithInterface> realize_bound(const GraphPattern& h,
                                                std::span<const GraphWithInterface* const> bound) {
    GraphWithInterface out{h.base.graph, h.base.interface};
    std::size_t extra_v = 0, extra_e = 0;
    for (const auto* k : bound) {
        extra_v += k->graph.vertex_count();
        extra_e += k->graph.edge_count();
    }
    out.graph.reserve(out.graph.vertex_count() + extra_v, out.graph.edge_count() + extra_e);
    std::vector<VertexId> scratch;
    for (std::size_t i = 0; i < h.hyperedges.size(); ++i) {
        if (!glue_into(out.graph, *bound[i], h.hyperedges[i].ports, scratch))
            return std::nullopt;
    }
    return out;
}

std::optional<GraphWithInterface> realize(const GraphPattern& h, const Substitution& theta) {
    h.validate();
    std::vector<const GraphWithInterface*> bound;
    bound.reserve(h.hyperedges.size());
    for (const auto& he : h.hyperedges) {
        auto it = theta.find(he.variable);
        if (it == theta.end())
            throw StructureError("variable " + he.variable.name() + " is not bound");
        it->second.validate();
        if (it->second.rank() != he.rank())
            throw StructureError("variable " + he.variable.name() + " has rank " + std::to_string(he.rank()) +
                                 " but its binding has interface rank " + std::to_string(it->second.rank()));
        bound.push_back(&it->second);
    }
    return realize_bound(h, bound);
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

class IsoSearch {
public:
    IsoSearch(const GraphWithInterface& g, const GraphWithInterface& h) : g_(g), h_(h) {}

    template <typename Accept>
    bool run(Accept&& accept) {
        const auto& G = g_.graph;
        const auto& H = h_.graph;
        const std::size_t n = G.vertex_count();
        if (n != H.vertex_count() || G.edge_count() != H.edge_count() || g_.rank() != h_.rank())
            return false;
        if (!same_invariants())
            return false;
        fwd_.assign(n, none);
        bwd_.assign(n, none);
        iface_pos_g_.assign(n, none);
        iface_pos_h_.assign(n, none);
        for (std::size_t i = 0; i < g_.rank(); ++i) {
            iface_pos_g_[g_.interface[i]] = static_cast<VertexId>(i);
            iface_pos_h_[h_.interface[i]] = static_cast<VertexId>(i);
        }
        build_order();
        return extend(0, accept);
    }

    const std::vector<VertexId>& mapping() const { return fwd_; }

private:
    static constexpr VertexId none = static_cast<VertexId>(-1);

    bool same_invariants() const {
        auto profile = [](const LabeledGraph& x) {
            std::vector<std::pair<std::uint32_t, std::size_t>> p;
            for (VertexId v = 0; v < x.vertex_count(); ++v)
                p.emplace_back(x.vertex_label(v).id(), x.degree(v));
            std::sort(p.begin(), p.end());
            return p;
        };
        return profile(g_.graph) == profile(h_.graph);
    }

    void build_order() {
        const auto& G = g_.graph;
        const std::size_t n = G.vertex_count();
        std::vector<char> seen(n, 0);
        order_.clear();
        std::deque<VertexId> queue;
        auto push = [&](VertexId v) {
            if (!seen[v]) {
                seen[v] = 1;
                queue.push_back(v);
            }
        };
        auto drain = [&] {
            while (!queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                order_.push_back(v);
                for (const auto& nb : G.neighbors(v))
                    push(nb.vertex);
            }
        };
        for (VertexId v : g_.interface)
            push(v);
        drain();
        for (VertexId v = 0; v < n; ++v) {
            push(v);
            drain();
        }
    }

    bool feasible(VertexId v, VertexId u) const {
        const auto& G = g_.graph;
        const auto& H = h_.graph;
        if (bwd_[u] != none || G.vertex_label(v) != H.vertex_label(u) || G.degree(v) != H.degree(u))
            return false;
        if (iface_pos_g_[v] != iface_pos_h_[u])
            return false;
        std::size_t mapped_g = 0, mapped_h = 0;
        for (const auto& nb : G.neighbors(v)) {
            if (fwd_[nb.vertex] == none)
                continue;
            ++mapped_g;
            auto l = H.edge_label(u, fwd_[nb.vertex]);
            if (!l || *l != nb.label)
                return false;
        }
        for (const auto& nb : H.neighbors(u))
            if (bwd_[nb.vertex] != none)
                ++mapped_h;
        return mapped_g == mapped_h;
    }

    template <typename Accept>
    bool extend(std::size_t k, Accept& accept) {
        if (k == order_.size())
            return accept(fwd_);
        const VertexId v = order_[k];
        const auto& H = h_.graph;
        auto attempt = [&](VertexId u) {
            if (!feasible(v, u))
                return false;
            fwd_[v] = u;
            bwd_[u] = v;
            if (extend(k + 1, accept))
                return true;
            fwd_[v] = none;
            bwd_[u] = none;
            return false;
        };
        if (iface_pos_g_[v] != none)
            return attempt(h_.interface[iface_pos_g_[v]]);
        for (const auto& nb : g_.graph.neighbors(v)) {
            if (fwd_[nb.vertex] != none) {
                for (const auto& cand : H.neighbors(fwd_[nb.vertex]))
                    if (attempt(cand.vertex))
                        return true;
                return false;
            }
        }
        for (VertexId u = 0; u < H.vertex_count(); ++u)
            if (attempt(u))
                return true;
        return false;
    }

    const GraphWithInterface& g_;
    const GraphWithInterface& h_;
    std::vector<VertexId> fwd_, bwd_, iface_pos_g_, iface_pos_h_, order_;
};

} // namespace

bool iso_check(const GraphWithInterface& g, const GraphWithInterface& h) {
    IsoSearch search(g, h);
    return search.run([](const std::vector<VertexId>&) { return true; });
}

bool iso_check(const GraphPattern& g, const GraphPattern& h) {
    if (g.hyperedges.size() != h.hyperedges.size())
        return false;
    using Key = std::pair<std::uint32_t, std::vector<VertexId>>;
    std::vector<Key> target;
    for (const auto& e : h.hyperedges)
        target.emplace_back(e.variable.id(), e.ports);
    std::sort(target.begin(), target.end());
    IsoSearch search(g.base, h.base);
    return search.run([&](const std::vector<VertexId>& fwd) {
        std::vector<Key> mapped;
        for (const auto& e : g.hyperedges) {
            Key k{e.variable.id(), {}};
            for (VertexId p : e.ports)
                k.second.push_back(fwd[p]);
            mapped.push_back(std::move(k));
        }
        std::sort(mapped.begin(), mapped.end());
        return mapped == target;
    });
}

} // namespace ficsl
