#include "ficsl/membership.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

#include "ficsl/boundary.hpp"
#include "ficsl/error.hpp"

namespace ficsl {

std::optional<std::size_t> FragmentUniverse::find(const CanonKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::span<const std::size_t> FragmentUniverse::of_rank(std::size_t r) const {
    if (r >= by_rank_.size())
        return {};
    return by_rank_[r];
}

std::size_t FragmentUniverse::add(GraphWithInterface fragment, CanonKey key) {
    auto [it, fresh] = index_.emplace(std::move(key), fragments_.size());
    if (!fresh)
        return it->second;
    const std::size_t r = fragment.rank();
    if (by_rank_.size() <= r)
        by_rank_.resize(r + 1);
    by_rank_[r].push_back(fragments_.size());
    max_vertices_ = std::max(max_vertices_, fragment.graph.vertex_count());
    keys_.push_back(it->first);
    fragments_.push_back(std::move(fragment));
    return it->second;
}

FragmentUniverse sub_w(const LabeledGraph& g, std::size_t w) {
    FragmentUniverse u;
    detail::brep_for_graph(g, 0, w, [&](BoundarySpec&&, GraphWithInterface&& f) {
        auto key = canonical_key(f);
        u.add(std::move(f), std::move(key));
    });
    return u;
}

bool DerivedAtomSet::contains(std::size_t predicate, std::size_t fragment) const {
    return provenance_.count(pack(predicate, fragment)) != 0;
}

const Provenance* DerivedAtomSet::provenance(std::size_t predicate, std::size_t fragment) const {
    auto it = provenance_.find(pack(predicate, fragment));
    return it == provenance_.end() ? nullptr : &it->second;
}

bool DerivedAtomSet::insert(std::size_t predicate, std::size_t fragment, Provenance why) {
    if (!provenance_.emplace(pack(predicate, fragment), std::move(why)).second)
        return false;
    by_predicate_[predicate].push_back(fragment);
    return true;
}

namespace {

struct BodySlot {
    std::size_t predicate;
    std::vector<Label> port_labels;
    std::vector<std::size_t> hyperedges;  ///< head hyperedges using this variable
};

/// Clauses with structurally identical head pattern and body differ only in
/// the head predicate; they share one realization per binding.
struct CompiledClause {
    const GraphPattern* head;
    std::vector<BodySlot> body;
    std::vector<std::pair<std::size_t, std::size_t>> heads;  ///< (predicate, clause index)
};

void append_raw(std::string& out, std::uint64_t x) { canon::append_u64(out, x); }

std::string signature(const Clause& c, const ClauseSystem& gamma) {
    std::string out;
    const auto& p = c.head.pattern;
    append_raw(out, p.base.graph.vertex_count());
    for (auto l : p.base.graph.vertex_labels())
        append_raw(out, l.id());
    append_raw(out, p.base.graph.edge_count());
    for (const auto& e : p.base.graph.edges()) {
        append_raw(out, e.u);
        append_raw(out, e.v);
        append_raw(out, e.label.id());
    }
    append_raw(out, p.base.interface.size());
    for (auto v : p.base.interface)
        append_raw(out, v);
    append_raw(out, p.hyperedges.size());
    for (const auto& h : p.hyperedges) {
        append_raw(out, h.variable.id());
        append_raw(out, h.ports.size());
        for (auto v : h.ports)
            append_raw(out, v);
    }
    append_raw(out, c.body.size());
    for (const auto& a : c.body) {
        append_raw(out, gamma.index_of(a.predicate));
        append_raw(out, a.pattern.hyperedges.front().variable.id());
        for (auto v : a.pattern.base.interface)
            append_raw(out, a.pattern.base.graph.vertex_label(v).id());
    }
    return out;
}

std::vector<CompiledClause> compile(const ClauseSystem& gamma) {
    std::vector<CompiledClause> out;
    std::unordered_map<std::string, std::size_t> group;
    for (std::size_t i = 0; i < gamma.clauses().size(); ++i) {
        const auto& c = gamma.clauses()[i];
        const auto head_pred = gamma.index_of(c.head.predicate);
        auto [it, fresh] = group.emplace(signature(c, gamma), out.size());
        if (!fresh) {
            out[it->second].heads.emplace_back(head_pred, i);
            continue;
        }
        CompiledClause cc{&c.head.pattern, {}, {{head_pred, i}}};
        for (const auto& a : c.body) {
            BodySlot slot{gamma.index_of(a.predicate), {}, {}};
            for (auto v : a.pattern.base.interface)
                slot.port_labels.push_back(a.pattern.base.graph.vertex_label(v));
            const auto x = a.pattern.hyperedges.front().variable;
            for (std::size_t h = 0; h < c.head.pattern.hyperedges.size(); ++h)
                if (c.head.pattern.hyperedges[h].variable == x)
                    slot.hyperedges.push_back(h);
            cc.body.push_back(std::move(slot));
        }
        out.push_back(std::move(cc));
    }
    return out;
}

bool ports_match(const BodySlot& slot, const GraphWithInterface& k) {
    if (k.rank() != slot.port_labels.size())
        return false;
    for (std::size_t j = 0; j < k.rank(); ++j)
        if (k.graph.vertex_label(k.interface[j]) != slot.port_labels[j])
            return false;
    return true;
}

/// Enumerates bindings of the body slots of `cc`; slot j draws from
/// candidates[j][lo[j] .. hi[j]). `visit` receives the chosen fragment
/// indices and the realized head, and returns false to stop.
class Binder {
public:
    using Visit = std::function<bool(const std::vector<std::size_t>&, const GraphWithInterface&)>;

    Binder(const CompiledClause& cc, const std::vector<const GraphWithInterface*>& fragment_of)
        : cc_(cc), fragment_of_(fragment_of), chosen_(cc.body.size()), bound_(cc.head->hyperedges.size()) {}

    /// Returns false if a visit asked to stop.
    bool run(const std::vector<std::span<const std::size_t>>& ranges, const Visit& visit) {
        return rec(0, ranges, visit);
    }

private:
    bool rec(std::size_t j, const std::vector<std::span<const std::size_t>>& ranges, const Visit& visit) {
        if (j == cc_.body.size()) {
            auto real = realize_bound(*cc_.head, bound_);
            return !real || visit(chosen_, *real);
        }
        for (std::size_t f : ranges[j]) {
            const auto* k = fragment_of_[f];
            if (!ports_match(cc_.body[j], *k))
                continue;
            chosen_[j] = f;
            for (auto h : cc_.body[j].hyperedges)
                bound_[h] = k;
            if (!rec(j + 1, ranges, visit))
                return false;
        }
        return true;
    }

    const CompiledClause& cc_;
    const std::vector<const GraphWithInterface*>& fragment_of_;
    std::vector<std::size_t> chosen_;
    std::vector<const GraphWithInterface*> bound_;
};

} // namespace

DerivedAtomSet derive_fixpoint(const ClauseSystem& gamma, const FragmentUniverse& universe) {
    const std::size_t np = gamma.predicates().size();
    DerivedAtomSet derived(np);
    const auto clauses = compile(gamma);
    std::vector<const GraphWithInterface*> fragment_of(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i)
        fragment_of[i] = &universe.fragment(i);

    std::vector<std::size_t> old_size(np, 0), cur_size(np, 0);
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, Provenance>> pending;
    std::unordered_set<std::uint64_t> pending_seen;
    std::size_t round = 0;

    auto try_result = [&](const CompiledClause& cc, const std::vector<std::size_t>& chosen,
                          const GraphWithInterface& real) {
        if (real.graph.vertex_count() > universe.max_vertices())
            return true;
        auto idx = universe.find(canonical_key(real));
        if (!idx)
            return true;
        for (const auto& [pred, clause] : cc.heads) {
            auto atom = std::make_pair(pred, *idx);
            if (derived.contains(atom.first, atom.second) || !pending_seen.insert((std::uint64_t(pred) << 32) | *idx).second)
                continue;
            pending.push_back({atom, Provenance{clause, chosen, round}});
        }
        return true;
    };

    while (true) {
        ++round;
        pending.clear();
        pending_seen.clear();
        for (const auto& cc : clauses) {
            Binder binder(cc, fragment_of);
            if (cc.body.empty()) {
                if (round == 1)
                    binder.run({}, [&](auto& chosen, auto& real) { return try_result(cc, chosen, real); });
                continue;
            }
            if (round == 1)
                continue;
            // Pivot i takes an atom from the previous round; earlier slots
            // take older atoms only, so each combination is tried once.
            for (std::size_t i = 0; i < cc.body.size(); ++i) {
                std::vector<std::span<const std::size_t>> ranges(cc.body.size());
                bool empty = false;
                for (std::size_t j = 0; j < cc.body.size(); ++j) {
                    const auto p = cc.body[j].predicate;
                    std::span<const std::size_t> all(derived.of(p));
                    if (j < i)
                        ranges[j] = all.subspan(0, old_size[p]);
                    else if (j == i)
                        ranges[j] = all.subspan(old_size[p], cur_size[p] - old_size[p]);
                    else
                        ranges[j] = all.subspan(0, cur_size[p]);
                    empty = empty || ranges[j].empty();
                }
                if (!empty)
                    binder.run(ranges, [&](auto& chosen, auto& real) { return try_result(cc, chosen, real); });
            }
        }
        old_size = cur_size;
        for (auto& [atom, why] : pending)
            derived.insert(atom.first, atom.second, std::move(why));
        derived.close_round();
        for (std::size_t p = 0; p < np; ++p)
            cur_size[p] = derived.of(p).size();
        if (pending.empty())
            break;
    }
    return derived;
}

namespace {

DerivationTree build_tree(const ClauseSystem& gamma, const FragmentUniverse& u, const DerivedAtomSet& derived,
                          std::size_t predicate, std::size_t fragment) {
    const auto* why = derived.provenance(predicate, fragment);
    DerivationTree node{why->clause, gamma.predicates()[predicate].name, u.fragment(fragment), {}};
    const auto& c = gamma.clauses()[why->clause];
    for (std::size_t j = 0; j < c.body.size(); ++j)
        node.children.push_back(build_tree(gamma, u, derived, gamma.index_of(c.body[j].predicate), why->bindings[j]));
    return node;
}

} // namespace

MembershipResult member_detail(const ClauseSystem& gamma, const std::string& start, const LabeledGraph& g,
                               const ParamTuple& params, bool want_tree) {
    const std::size_t start_index = gamma.index_of(start);
    if (gamma.predicates()[start_index].irank != 0)
        throw GrammarError("goal predicate '" + start + "' must have irank 0");
    MembershipResult result;
    if (g.max_degree() > params.delta) {
        result.degree_rejected = true;
        return result;
    }
    const auto universe = sub_w(g, params.w);
    const auto derived = derive_fixpoint(gamma, universe);
    result.universe_size = universe.size();
    result.derived_atoms = derived.size();

    std::vector<const GraphWithInterface*> fragment_of(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i)
        fragment_of[i] = &universe.fragment(i);
    const auto goal = canonical_key(g);

    for (const auto& cc : compile(gamma)) {
        std::optional<std::size_t> goal_clause;
        for (const auto& [pred, clause] : cc.heads)
            if (pred == start_index && !goal_clause)
                goal_clause = clause;
        if (!goal_clause)
            continue;
        std::vector<std::span<const std::size_t>> ranges;
        for (const auto& slot : cc.body)
            ranges.emplace_back(derived.of(slot.predicate));
        std::vector<std::size_t> hit;
        Binder binder(cc, fragment_of);
        bool stopped = !binder.run(ranges, [&](const std::vector<std::size_t>& chosen, const GraphWithInterface& real) {
            if (real.graph.vertex_count() != g.vertex_count() || real.graph.edge_count() != g.edge_count() ||
                canonical_key(real.graph) != goal)
                return true;
            hit = chosen;
            return false;
        });
        if (!stopped)
            continue;
        result.member = true;
        if (want_tree) {
            DerivationTree root{*goal_clause, start, closed(g), {}};
            for (std::size_t j = 0; j < cc.body.size(); ++j)
                root.children.push_back(build_tree(gamma, universe, derived, cc.body[j].predicate, hit[j]));
            result.tree = std::move(root);
        }
        break;
    }
    return result;
}

bool member(const ClauseSystem& gamma, const std::string& start, const LabeledGraph& g, const ParamTuple& params) {
    return member_detail(gamma, start, g, params).member;
}

bool replay_tree(const ClauseSystem& gamma, const DerivationTree& node) {
    if (node.clause >= gamma.clauses().size())
        return false;
    const auto& c = gamma.clauses()[node.clause];
    if (c.head.predicate != node.predicate || c.body.size() != node.children.size())
        return false;
    if (gamma.predicates()[gamma.index_of(node.predicate)].irank != node.graph.rank())
        return false;
    Substitution theta;
    for (std::size_t j = 0; j < c.body.size(); ++j) {
        const auto& child = node.children[j];
        if (child.predicate != c.body[j].predicate || !replay_tree(gamma, child))
            return false;
        // The star atom applied to the child's graph must give that graph back.
        const auto x = c.body[j].pattern.hyperedges.front().variable;
        auto star = realize(c.body[j].pattern, {{x, child.graph}});
        if (!star || !iso_check(*star, child.graph))
            return false;
        theta.emplace(x, child.graph);
    }
    auto real = realize(c.head.pattern, theta);
    return real && iso_check(*real, node.graph);
}

std::string format_tree(const ClauseSystem& gamma, const DerivationTree& tree) {
    std::string out;
    std::function<void(const DerivationTree&, std::size_t)> rec = [&](const DerivationTree& n, std::size_t depth) {
        out.append(2 * depth, ' ');
        out += n.predicate + " <- clause " + std::to_string(n.clause) + "  [" +
               std::to_string(n.graph.graph.vertex_count()) + " vertices, " +
               std::to_string(n.graph.graph.edge_count()) + " edges, rank " + std::to_string(n.graph.rank()) + "]";
        if (gamma.clauses()[n.clause].fact())
            out += " fact";
        out += '\n';
        for (const auto& child : n.children)
            rec(child, depth + 1);
    };
    rec(tree, 0);
    return out;
}

} // namespace ficsl
