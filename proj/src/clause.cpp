#include "ficsl/clause.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "ficsl/error.hpp"

namespace ficsl {

std::optional<std::size_t> Clause::body_atom_for(Variable x) const {
    for (std::size_t i = 0; i < body.size(); ++i)
        if (!body[i].pattern.hyperedges.empty() && body[i].pattern.hyperedges.front().variable == x)
            return i;
    return std::nullopt;
}

bool is_star_pattern(const GraphPattern& p) {
    if (p.base.graph.edge_count() != 0 || p.hyperedges.size() != 1)
        return false;
    const auto& ports = p.hyperedges.front().ports;
    return p.base.interface == ports && p.base.graph.vertex_count() == ports.size();
}

std::optional<std::string> fixed_interface_violation(const Clause& c) {
    std::map<Variable, std::size_t> head_rank;
    for (const auto& h : c.head.pattern.hyperedges)
        head_rank.emplace(h.variable, h.rank());
    std::map<Variable, std::size_t> atoms_for;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        const auto& p = c.body[i].pattern;
        if (!is_star_pattern(p))
            return "body atom " + std::to_string(i) + " is not a star pattern";
        const auto& h = p.hyperedges.front();
        auto it = head_rank.find(h.variable);
        if (it == head_rank.end())
            return "body atom " + std::to_string(i) + " uses variable '" + h.variable.name() +
                   "' which does not occur in the head";
        if (it->second != h.rank())
            return "body atom " + std::to_string(i) + " gives variable '" + h.variable.name() + "' rank " +
                   std::to_string(h.rank()) + " but the head uses rank " + std::to_string(it->second);
        if (++atoms_for[h.variable] > 1)
            return "variable '" + h.variable.name() + "' has more than one body atom";
    }
    for (const auto& [x, r] : head_rank)
        if (!atoms_for.count(x))
            return "head variable '" + x.name() + "' has no body atom";
    return std::nullopt;
}

bool check_fixed_interface(const Clause& c) { return !fixed_interface_violation(c); }

bool degree_safe(const Clause& c) {
    const auto& p = c.head.pattern;
    std::vector<std::size_t> lists(p.base.graph.vertex_count(), 0);
    for (const auto& h : p.hyperedges)
        for (VertexId v : h.ports)
            ++lists[v];
    for (VertexId v = 0; v < lists.size(); ++v)
        if (lists[v] > 1 || (lists[v] == 1 && p.base.graph.degree(v) > 0))
            return false;
    return true;
}

std::size_t pattern_degree(const GraphPattern& p) { return p.base.graph.max_degree(); }

ClauseSystem::ClauseSystem(std::vector<PredicateSymbol> predicates, std::vector<Clause> clauses, std::string start)
    : predicates_(std::move(predicates)), clauses_(std::move(clauses)), start_(std::move(start)) {
    std::set<std::string> names;
    for (const auto& p : predicates_)
        if (!names.insert(p.name).second)
            throw GrammarError("predicate '" + p.name + "' is declared twice");
    auto start_index = find(start_);
    if (!start_index)
        throw GrammarError("start predicate '" + start_ + "' is not declared");
    if (predicates_[*start_index].irank != 0)
        throw GrammarError("start predicate '" + start_ + "' must have irank 0");

    for (std::size_t i = 0; i < clauses_.size(); ++i) {
        const auto& c = clauses_[i];
        const std::string where = "clause " + std::to_string(i) + ": ";
        auto check_atom = [&](const Atom& a, const std::string& what) {
            auto k = find(a.predicate);
            if (!k)
                throw GrammarError(where + what + " uses undeclared predicate '" + a.predicate + "'", i);
            if (predicates_[*k].irank != a.pattern.rank())
                throw GrammarError(where + what + " has interface length " + std::to_string(a.pattern.rank()) +
                                       " but '" + a.predicate + "' has irank " +
                                       std::to_string(predicates_[*k].irank),
                                   i);
            try {
                a.pattern.validate();
            } catch (const StructureError& e) {
                throw GrammarError(where + what + ": " + e.what(), i);
            }
        };
        check_atom(c.head, "head");
        for (std::size_t j = 0; j < c.body.size(); ++j)
            check_atom(c.body[j], "body atom " + std::to_string(j));
        if (auto why = fixed_interface_violation(c))
            throw GrammarError(where + "not fixed-interface: " + *why, i);
    }
}

std::optional<std::size_t> ClauseSystem::find(const std::string& name) const {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
        if (predicates_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t ClauseSystem::index_of(const std::string& name) const {
    if (auto i = find(name))
        return *i;
    throw GrammarError("unknown predicate '" + name + "'");
}

std::string Violation::describe() const {
    std::string who = clause == system ? std::string("system") : "clause " + std::to_string(clause);
    return who + ": " + bound + " = " + std::to_string(value) + " exceeds bound " + std::to_string(limit);
}

std::vector<Violation> check_bounded(const ClauseSystem& gamma, const ParamTuple& params) {
    std::vector<Violation> out;
    auto over = [&](std::size_t clause, const char* bound, std::size_t value, std::size_t limit) {
        if (value > limit)
            out.push_back({clause, bound, value, limit});
    };
    over(Violation::system, "m", gamma.clauses().size(), params.m);
    for (const auto& p : gamma.predicates())
        over(Violation::system, "w", p.irank, params.w);
    for (std::size_t i = 0; i < gamma.clauses().size(); ++i) {
        const auto& c = gamma.clauses()[i];
        over(i, "s", c.head.pattern.hyperedges.size(), params.s);
        over(i, "t", c.body.size(), params.t);
        std::size_t rank = 0;
        for (const auto& h : c.head.pattern.hyperedges)
            rank = std::max(rank, h.rank());
        over(i, "w", rank, params.w);
        std::size_t deg = pattern_degree(c.head.pattern);
        for (const auto& a : c.body)
            deg = std::max(deg, pattern_degree(a.pattern));
        over(i, "d", deg, params.d);
    }
    return out;
}

bool check_degree_safe(const ClauseSystem& gamma) {
    return std::all_of(gamma.clauses().begin(), gamma.clauses().end(), [](const Clause& c) { return degree_safe(c); });
}

namespace {

constexpr std::uint64_t kind_shift = 56;
constexpr std::uint64_t pos_shift = 32;
constexpr std::uint32_t port_edge = 1u << 15;
constexpr std::uint32_t variable_edge = 1u << 14;

/// Head pattern as a colored graph: pattern vertices, one node per hyperedge
/// linked to its ports, one node per distinct variable linked to its
/// hyperedges. Variable nodes are colored by `tag(x)` (a predicate name or
/// the empty string).
CanonKey pattern_key(char kind, const std::string& head, const GraphPattern& p,
                     const std::function<Symbol(Variable)>& tag) {
    const auto& g = p.base.graph;
    canon::NameRanks vl, el, tags;
    for (auto l : g.vertex_labels())
        vl.add(l);
    for (const auto& e : g.edges())
        el.add(e.label);
    auto vars = p.variables();
    for (auto x : vars)
        tags.add(tag(x));
    vl.finish();
    el.finish();
    tags.finish();

    const std::size_t n = g.vertex_count(), k = p.hyperedges.size();
    canon::ColoredGraph cg;
    cg.color.resize(n + k + vars.size());
    std::vector<std::uint64_t> iface(n, 0);
    for (std::size_t i = 0; i < p.base.interface.size(); ++i)
        iface[p.base.interface[i]] = i + 1;
    for (VertexId v = 0; v < n; ++v)
        cg.color[v] = (iface[v] << pos_shift) | vl.rank(g.vertex_label(v));
    for (const auto& e : g.edges())
        cg.edges.push_back({e.u, e.v, el.rank(e.label)});
    std::unordered_map<Variable, std::uint32_t> var_node;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto node = static_cast<std::uint32_t>(n + k + i);
        var_node[vars[i]] = node;
        cg.color[node] = (2ull << kind_shift) | tags.rank(tag(vars[i]));
    }
    for (std::size_t i = 0; i < k; ++i) {
        const auto& h = p.hyperedges[i];
        const auto node = static_cast<std::uint32_t>(n + i);
        cg.color[node] = (1ull << kind_shift) | (static_cast<std::uint64_t>(h.rank()) << pos_shift);
        for (std::size_t j = 0; j < h.ports.size(); ++j)
            cg.edges.push_back({node, h.ports[j], port_edge | static_cast<std::uint32_t>(j)});
        cg.edges.push_back({node, var_node.at(h.variable), variable_edge});
    }

    std::string out;
    out.push_back(kind);
    canon::append_u64(out, head.size());
    out += head;
    vl.append_header(out);
    el.append_header(out);
    tags.append_header(out);
    for (auto x : canon::certificate(cg))
        canon::append_u64(out, x);
    return CanonKey(std::move(out));
}

} // namespace

CanonKey clause_key(const Clause& c) {
    return pattern_key('C', c.head.predicate, c.head.pattern, [&](Variable x) {
        auto i = c.body_atom_for(x);
        return Symbol::of(i ? c.body[*i].predicate : std::string());
    });
}

CanonKey shape_key(const GraphPattern& p) {
    return pattern_key('S', std::string(), p, [](Variable) { return Symbol(); });
}

std::vector<bool> recursive_clauses(const ClauseSystem& gamma) {
    const std::size_t n = gamma.predicates().size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& c : gamma.clauses())
        for (const auto& a : c.body)
            reach[gamma.index_of(c.head.predicate)][gamma.index_of(a.predicate)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j])
                        reach[i][j] = true;
    std::vector<bool> out;
    for (const auto& c : gamma.clauses()) {
        const auto h = gamma.index_of(c.head.predicate);
        bool cyc = false;
        for (const auto& a : c.body) {
            const auto b = gamma.index_of(a.predicate);
            cyc = cyc || b == h || reach[b][h];
        }
        out.push_back(cyc);
    }
    return out;
}

} // namespace ficsl
