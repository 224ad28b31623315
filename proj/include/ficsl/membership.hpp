#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ficsl/canonical.hpp"
#include "ficsl/clause.hpp"
#include "ficsl/graph.hpp"

namespace ficsl {

/// Sub_w(G): the fragments of all valid boundary specs of rank <= w,
/// deduplicated by canonical key, in first-seen enumeration order.
class FragmentUniverse {
public:
    std::size_t size() const noexcept { return fragments_.size(); }
    const GraphWithInterface& fragment(std::size_t i) const { return fragments_[i]; }
    const CanonKey& key(std::size_t i) const { return keys_[i]; }
    std::optional<std::size_t> find(const CanonKey& key) const;
    std::span<const std::size_t> of_rank(std::size_t r) const;

    /// Index of the fragment with this key, inserting it if new.
    std::size_t add(GraphWithInterface fragment, CanonKey key);

    std::size_t max_vertices() const noexcept { return max_vertices_; }

private:
    std::vector<GraphWithInterface> fragments_;
    std::vector<CanonKey> keys_;
    std::unordered_map<CanonKey, std::size_t> index_;
    std::vector<std::vector<std::size_t>> by_rank_;
    std::size_t max_vertices_ = 0;
};

/// The caller is responsible for the degree check; see member().
FragmentUniverse sub_w(const LabeledGraph& g, std::size_t w);

/// How a ground atom was first derived: the clause and, per body atom, the
/// fragment bound to that atom's variable.
struct Provenance {
    std::size_t clause = 0;
    std::vector<std::size_t> bindings;
    std::size_t round = 0;
};

/// Least set of ground atoms (predicate, fragment) derivable inside a
/// universe. Predicates are indices into the clause system.
class DerivedAtomSet {
public:
    explicit DerivedAtomSet(std::size_t predicates = 0) : by_predicate_(predicates) {}

    bool contains(std::size_t predicate, std::size_t fragment) const;
    const Provenance* provenance(std::size_t predicate, std::size_t fragment) const;
    /// Fragments derived for a predicate, in derivation order.
    const std::vector<std::size_t>& of(std::size_t predicate) const { return by_predicate_[predicate]; }

    std::size_t size() const noexcept { return provenance_.size(); }
    std::size_t rounds() const noexcept { return round_sizes_.size(); }
    /// Cumulative number of atoms after each round.
    const std::vector<std::size_t>& round_sizes() const noexcept { return round_sizes_; }

    bool insert(std::size_t predicate, std::size_t fragment, Provenance why);
    void close_round() { round_sizes_.push_back(size()); }

private:
    static std::uint64_t pack(std::size_t p, std::size_t f) { return (std::uint64_t(p) << 32) | f; }

    std::vector<std::vector<std::size_t>> by_predicate_;
    std::unordered_map<std::uint64_t, Provenance> provenance_;
    std::vector<std::size_t> round_sizes_;
};

/// Semi-naive bottom-up evaluation. Each round only tries substitutions
/// that use at least one atom from the previous round.
DerivedAtomSet derive_fixpoint(const ClauseSystem& gamma, const FragmentUniverse& universe);

/// One clause application: the clause, the predicate it derives, the graph
/// it derives, and one child per body atom.
struct DerivationTree {
    std::size_t clause = 0;
    std::string predicate;
    GraphWithInterface graph;
    std::vector<DerivationTree> children;
};

struct MembershipResult {
    bool member = false;
    bool degree_rejected = false;
    std::size_t universe_size = 0;
    std::size_t derived_atoms = 0;
    std::optional<DerivationTree> tree;
};

/// Decides g in L(gamma, start). Graphs of degree above params.delta are
/// rejected without further work. The top goal is matched against g
/// directly; sub-goals are matched inside sub_w(g, params.w).
MembershipResult member_detail(const ClauseSystem& gamma, const std::string& start, const LabeledGraph& g,
                               const ParamTuple& params, bool want_tree = false);

bool member(const ClauseSystem& gamma, const std::string& start, const LabeledGraph& g, const ParamTuple& params);

/// Rebuilds every node by realizing its clause head from its children and
/// checks the result against the recorded graph, the predicate and irank.
bool replay_tree(const ClauseSystem& gamma, const DerivationTree& tree);

/// Indented rendering, one clause application per line.
std::string format_tree(const ClauseSystem& gamma, const DerivationTree& tree);

} // namespace ficsl
