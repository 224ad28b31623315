#pragma once

// Goal-directed derivation search, used only as a reference for the
// bottom-up membership procedure. For a goal q(K) it tries every clause with
// head q, every embedding of the head pattern into K, every way to hand the
// leftover components and port-to-port edges to the head's hyperedges, and
// recurses on the pieces. It never looks at boundary specs or degree bounds.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ficsl/canonical.hpp"
#include "ficsl/clause.hpp"
#include "ficsl/graph.hpp"

namespace ficsl::brute {

class TopDown {
public:
    explicit TopDown(const ClauseSystem& gamma) : gamma_(gamma) {}

    bool member(const LabeledGraph& g) { return derives(gamma_.start(), closed(g)); }

    bool derives(const std::string& pred, const GraphWithInterface& k) {
        const std::size_t budget = gamma_.predicates().size() * 4 + 2;
        return derives(pred, k, budget);
    }

    std::size_t calls() const { return calls_; }

private:
    // `same_size_budget` bounds chains of steps that do not shrink K.
    bool derives(const std::string& pred, const GraphWithInterface& k, std::size_t same_size_budget) {
        ++calls_;
        auto memo_key = std::make_tuple(pred, canonical_key(k), same_size_budget);
        if (auto it = memo_.find(memo_key); it != memo_.end())
            return it->second;
        bool found = false;
        for (const auto& c : gamma_.clauses()) {
            if (c.head.predicate != pred || c.head.pattern.rank() != k.rank())
                continue;
            if (try_clause(c, k, same_size_budget)) {
                found = true;
                break;
            }
        }
        memo_.emplace(std::move(memo_key), found);
        return found;
    }

    bool try_clause(const Clause& c, const GraphWithInterface& k, std::size_t budget) {
        const auto& h = c.head.pattern;
        const auto& hg = h.base.graph;
        const std::size_t nh = hg.vertex_count(), nk = k.graph.vertex_count();
        if (nh > nk)
            return false;
        std::vector<int> pi(nh, -1);
        std::vector<bool> used(nk, false);
        std::vector<int> forced(nh, -1);
        for (std::size_t i = 0; i < h.base.interface.size(); ++i)
            forced[h.base.interface[i]] = static_cast<int>(k.interface[i]);
        std::vector<bool> is_port(nh, false);
        for (const auto& he : h.hyperedges)
            for (auto v : he.ports)
                is_port[v] = true;

        std::function<bool(VertexId)> place = [&](VertexId v) -> bool {
            if (v == nh)
                return split(c, k, pi, is_port, budget);
            for (VertexId x = 0; x < nk; ++x) {
                if (used[x] || (forced[v] >= 0 && forced[v] != static_cast<int>(x)))
                    continue;
                if (k.graph.vertex_label(x) != hg.vertex_label(v))
                    continue;
                // Head edges to already placed vertices must exist with the same label.
                bool ok = true;
                for (const auto& nb : hg.neighbors(v))
                    if (nb.vertex < v && (!k.graph.edge_label(pi[nb.vertex], x) ||
                                          *k.graph.edge_label(pi[nb.vertex], x) != nb.label))
                        ok = false;
                // A non-port head vertex keeps exactly its head edges.
                if (!is_port[v] && k.graph.degree(x) != hg.degree(v))
                    ok = false;
                if (!ok)
                    continue;
                pi[v] = static_cast<int>(x);
                used[x] = true;
                if (place(v + 1))
                    return true;
                used[x] = false;
                pi[v] = -1;
            }
            return false;
        };
        return place(0);
    }

    bool split(const Clause& c, const GraphWithInterface& k, const std::vector<int>& pi,
               const std::vector<bool>& is_port, std::size_t budget) {
        const auto& h = c.head.pattern;
        const std::size_t nk = k.graph.vertex_count();
        std::vector<int> head_of(nk, -1);
        for (std::size_t v = 0; v < pi.size(); ++v)
            head_of[pi[v]] = static_cast<int>(v);

        // Components of K minus the image of the head.
        std::vector<int> comp(nk, -1);
        std::vector<std::vector<VertexId>> comps;
        for (VertexId s = 0; s < nk; ++s) {
            if (head_of[s] >= 0 || comp[s] >= 0)
                continue;
            comps.emplace_back();
            std::vector<VertexId> stack{s};
            comp[s] = static_cast<int>(comps.size() - 1);
            while (!stack.empty()) {
                auto x = stack.back();
                stack.pop_back();
                comps.back().push_back(x);
                for (const auto& nb : k.graph.neighbors(x))
                    if (head_of[nb.vertex] < 0 && comp[nb.vertex] < 0) {
                        comp[nb.vertex] = comp[s];
                        stack.push_back(nb.vertex);
                    }
            }
        }
        const std::size_t nhe = h.hyperedges.size();
        std::vector<std::set<VertexId>> port_img(nhe);
        for (std::size_t i = 0; i < nhe; ++i)
            for (auto v : h.hyperedges[i].ports)
                port_img[i].insert(static_cast<VertexId>(pi[v]));

        std::vector<std::vector<std::size_t>> comp_options(comps.size());
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            std::set<VertexId> touch;
            for (auto x : comps[ci])
                for (const auto& nb : k.graph.neighbors(x))
                    if (head_of[nb.vertex] >= 0)
                        touch.insert(nb.vertex);
            for (std::size_t i = 0; i < nhe; ++i)
                if (std::includes(port_img[i].begin(), port_img[i].end(), touch.begin(), touch.end()))
                    comp_options[ci].push_back(i);
            if (comp_options[ci].empty())
                return false;
        }

        // Edges between two head-image vertices.
        struct PortEdge {
            std::size_t edge;
            bool head;
            std::vector<std::size_t> holders;
        };
        std::vector<PortEdge> pes;
        for (std::size_t e = 0; e < k.graph.edge_count(); ++e) {
            const auto& ed = k.graph.edges()[e];
            if (head_of[ed.u] < 0 || head_of[ed.v] < 0)
                continue;
            const bool in_head = h.base.graph.edge_index(head_of[ed.u], head_of[ed.v]).has_value();
            PortEdge pe{e, in_head, {}};
            for (std::size_t i = 0; i < nhe; ++i)
                if (port_img[i].count(ed.u) && port_img[i].count(ed.v))
                    pe.holders.push_back(i);
            if (!in_head && pe.holders.empty())
                return false;
            pes.push_back(std::move(pe));
        }

        std::vector<std::size_t> comp_choice(comps.size());
        std::vector<std::size_t> edge_mask(pes.size());
        std::function<bool(std::size_t)> choose_edges;
        std::function<bool(std::size_t)> choose_comps = [&](std::size_t ci) -> bool {
            if (ci == comps.size())
                return choose_edges(0);
            for (auto i : comp_options[ci]) {
                comp_choice[ci] = i;
                if (choose_comps(ci + 1))
                    return true;
            }
            return false;
        };
        choose_edges = [&](std::size_t pi_edge) -> bool {
            if (pi_edge == pes.size())
                return check_pieces(c, k, pi, comps, comp_choice, pes.size(), [&](std::size_t j) {
                    return std::make_pair(pes[j].edge, std::make_pair(pes[j].holders, edge_mask[j]));
                }, budget);
            const auto& pe = pes[pi_edge];
            for (std::size_t mask = pe.head ? 0 : 1; mask < (std::size_t{1} << pe.holders.size()); ++mask) {
                edge_mask[pi_edge] = mask;
                if (choose_edges(pi_edge + 1))
                    return true;
            }
            return false;
        };
        return choose_comps(0);
    }

    template <typename EdgeInfo>
    bool check_pieces(const Clause& c, const GraphWithInterface& k, const std::vector<int>& pi,
                      const std::vector<std::vector<VertexId>>& comps, const std::vector<std::size_t>& comp_choice,
                      std::size_t n_port_edges, EdgeInfo edge_info, std::size_t budget) {
        const auto& h = c.head.pattern;
        const std::size_t nhe = h.hyperedges.size();
        std::vector<GraphWithInterface> piece(nhe);
        for (std::size_t i = 0; i < nhe; ++i) {
            std::map<VertexId, VertexId> id;
            auto& p = piece[i];
            for (auto v : h.hyperedges[i].ports) {
                VertexId x = static_cast<VertexId>(pi[v]);
                id[x] = p.graph.add_vertex(k.graph.vertex_label(x));
                p.interface.push_back(id[x]);
            }
            for (std::size_t ci = 0; ci < comps.size(); ++ci)
                if (comp_choice[ci] == i)
                    for (auto x : comps[ci])
                        id[x] = p.graph.add_vertex(k.graph.vertex_label(x));
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
                if (comp_choice[ci] != i)
                    continue;
                std::set<std::size_t> done;
                for (auto x : comps[ci])
                    for (const auto& nb : k.graph.neighbors(x))
                        if (done.insert(nb.edge).second)
                            p.graph.add_edge(id.at(x), id.at(nb.vertex), nb.label);
            }
            for (std::size_t j = 0; j < n_port_edges; ++j) {
                auto [e, holders_mask] = edge_info(j);
                const auto& [holders, mask] = holders_mask;
                for (std::size_t b = 0; b < holders.size(); ++b)
                    if ((mask >> b & 1u) && holders[b] == i) {
                        const auto& ed = k.graph.edges()[e];
                        p.graph.add_edge(id.at(ed.u), id.at(ed.v), ed.label);
                    }
            }
        }
        // Equal variables need isomorphic pieces; each body atom's star
        // must accept its piece; then recurse.
        const std::size_t size_k = k.graph.vertex_count() + k.graph.edge_count();
        for (const auto& atom : c.body) {
            const auto x = atom.pattern.hyperedges.front().variable;
            std::optional<std::size_t> first;
            for (std::size_t i = 0; i < nhe; ++i) {
                if (h.hyperedges[i].variable != x)
                    continue;
                if (!first)
                    first = i;
                else if (!iso_check(piece[*first], piece[i]))
                    return false;
            }
            const auto& kp = piece[*first];
            for (std::size_t j = 0; j < kp.rank(); ++j)
                if (kp.graph.vertex_label(kp.interface[j]) !=
                    atom.pattern.base.graph.vertex_label(atom.pattern.base.interface[j]))
                    return false;
            const std::size_t size_p = kp.graph.vertex_count() + kp.graph.edge_count();
            std::size_t next_budget = budget;
            if (size_p >= size_k) {
                if (budget == 0)
                    return false;
                next_budget = budget - 1;
            } else {
                next_budget = gamma_.predicates().size() * 4 + 2;
            }
            if (!derives(atom.predicate, kp, next_budget))
                return false;
        }
        return true;
    }

    const ClauseSystem& gamma_;
    std::map<std::tuple<std::string, CanonKey, std::size_t>, bool> memo_;
    std::size_t calls_ = 0;
};

} // namespace ficsl::brute
