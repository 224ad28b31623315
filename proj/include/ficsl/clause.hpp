#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ficsl/canonical.hpp"
#include "ficsl/graph.hpp"

namespace ficsl {

struct PredicateSymbol {
    std::string name;
    std::size_t irank = 0;

    friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
    friend auto operator<=>(const PredicateSymbol&, const PredicateSymbol&) = default;
};

/// p(G) with |interface(G)| = irank(p). The predicate is referenced by name.
struct Atom {
    std::string predicate;
    GraphPattern pattern;
};

/// head <- body. Clauses are fixed-interface: each distinct variable of the
/// head has exactly one star body atom, and every body atom's variable occurs
/// in the head.
struct Clause {
    Atom head;
    std::vector<Atom> body;

    bool fact() const noexcept { return body.empty(); }

    /// Index of the body atom for variable x, or nullopt.
    std::optional<std::size_t> body_atom_for(Variable x) const;
};

struct ParamTuple {
    std::size_t m = 0;      ///< clauses
    std::size_t s = 0;      ///< head hyperedges per clause
    std::size_t t = 0;      ///< body atoms per clause
    std::size_t w = 0;      ///< variable and interface rank
    std::size_t d = 0;      ///< pattern vertex degree
    std::size_t delta = 0;  ///< degree of generated graphs
    std::size_t h_max = 0;  ///< head-pattern vertices (candidate enumeration)
};

/// No ordinary edges, one hyperedge, interface equal to its ports, and no
/// vertex outside the ports.
bool is_star_pattern(const GraphPattern& p);

/// Explains the first fixed-interface violation, or nullopt when the clause
/// is fixed-interface.
std::optional<std::string> fixed_interface_violation(const Clause& c);
bool check_fixed_interface(const Clause& c);

/// Every port vertex of every head hyperedge lies in exactly one port list
/// and touches no ordinary head edge.
bool degree_safe(const Clause& c);

/// Maximum vertex degree of a pattern, counting ordinary edges only.
std::size_t pattern_degree(const GraphPattern& p);

class ClauseSystem {
public:
    ClauseSystem() = default;

    /// Throws GrammarError (with the clause index where applicable) when a
    /// predicate is redeclared or undeclared, the start predicate is missing
    /// or has nonzero irank, an atom's interface length differs from its
    /// predicate's irank, a pattern is malformed, or a clause is not
    /// fixed-interface.
    ClauseSystem(std::vector<PredicateSymbol> predicates, std::vector<Clause> clauses, std::string start);

    const std::vector<PredicateSymbol>& predicates() const noexcept { return predicates_; }
    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    const std::string& start() const noexcept { return start_; }

    /// Index into predicates(), or nullopt.
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;  ///< throws GrammarError

private:
    std::vector<PredicateSymbol> predicates_;
    std::vector<Clause> clauses_;
    std::string start_;
};

struct Violation {
    static constexpr std::size_t system = static_cast<std::size_t>(-1);

    std::size_t clause = system;
    std::string bound;  ///< "m", "s", "t", "w" or "d"
    std::size_t value = 0;
    std::size_t limit = 0;

    std::string describe() const;
};

/// Empty iff the system is (m, s, t, w, d)-bounded. Delta and h_max are not
/// checked here.
std::vector<Violation> check_bounded(const ClauseSystem& gamma, const ParamTuple& params);

bool check_degree_safe(const ClauseSystem& gamma);

/// Isomorphism-invariant key of a clause: head predicate, head pattern, and
/// the predicate attached to each variable. Variable names do not matter and
/// body order does not matter.
CanonKey clause_key(const Clause& c);

/// Key of a head pattern up to renaming of variables.
CanonKey shape_key(const GraphPattern& p);

/// Indices of clauses lying on a cycle of the predicate dependency graph
/// (head predicate depends on body predicates).
std::vector<bool> recursive_clauses(const ClauseSystem& gamma);

} // namespace ficsl
