#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ficsl/boundary.hpp"
#include "ficsl/canonical.hpp"
#include "ficsl/clause.hpp"
#include "ficsl/teacher.hpp"

namespace ficsl {

/// One predicate-basis or residual element: a boundary representation
/// standing for every spec whose fragment has the same canonical key.
struct Representative {
    CanonKey key;
    GraphWithInterface fragment;
    BoundarySpec spec;  ///< first spec seen with this fragment
    std::string predicate;

    std::size_t rank() const noexcept { return fragment.rank(); }
};

/// "p<rank>_<16 hex digits of the fragment key>".
std::string predicate_name(const CanonKey& key, std::size_t rank);

/// rho_empty: the empty fragment with empty interface.
Representative empty_representative();

/// BRep_w(sample) collapsed by fragment key, in first-seen order.
std::vector<Representative> collapse_reps(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta);

/// rho_empty followed by the collapsed reps (rho_empty merges with the
/// empty-spec fragment).
std::vector<Representative> make_basis(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta);

/// Counts oracle calls made through it.
class CountingOracle final : public Oracle {
public:
    explicit CountingOracle(Oracle& inner) : inner_(inner) {}
    bool query(const LabeledGraph& g) override {
        ++calls_;
        return inner_.query(g);
    }
    std::size_t calls() const noexcept { return calls_; }

private:
    Oracle& inner_;
    std::size_t calls_ = 0;
};

/// Cell (i, j) is true iff can(rows[i]) and can(cols[j]) compose and the
/// oracle accepts the result. Undefined compositions are false and cost no
/// query.
class ObservationTable {
public:
    ObservationTable() = default;
    ObservationTable(const std::vector<Representative>& rows, const std::vector<Representative>& cols,
                     Oracle& oracle);

    bool cell(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col] != 0; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t queries() const noexcept { return queries_; }
    /// Cells whose composition was defined, in query order.
    const std::vector<std::pair<std::size_t, std::size_t>>& queried_cells() const noexcept { return queried_; }

private:
    std::size_t rows_ = 0, cols_ = 0, queries_ = 0;
    std::vector<char> cells_;
    std::vector<std::pair<std::size_t, std::size_t>> queried_;
};

struct Alphabets {
    std::vector<Label> vertex;
    std::vector<Label> edge;
};

/// Labels occurring in the graphs, sorted by name.
Alphabets alphabets_of(std::span<const LabeledGraph> graphs);

/// A head pattern up to isomorphism and renaming of variables. Variables
/// are named x1, x2, ... in order of first occurrence.
struct HeadShape {
    GraphPattern pattern;
    std::vector<Variable> variables;
    std::vector<std::size_t> variable_ranks;
    std::vector<std::vector<Label>> port_labels;  ///< per variable, from its first hyperedge
    CanonKey key;
    /// Variable permutations induced by automorphisms of the shape (other
    /// than the identity); used to drop duplicate body assignments.
    std::vector<std::vector<std::size_t>> symmetries;

    std::size_t rank() const noexcept { return pattern.rank(); }
    bool ground() const noexcept { return pattern.ground(); }
};

/// Fills in the derived fields of a shape. Variables keep their names.
HeadShape head_shape_of(GraphPattern pattern);

/// All head shapes with at most h_max vertices, labels from the alphabets,
/// pattern degree at most d, at most s hyperedges of rank 1..w, at most t
/// distinct variables when not ground, and interface rank at most w.
/// Deterministic order: rank, hyperedge count, key.
std::vector<HeadShape> enumerate_head_shapes(const ParamTuple& params, const Alphabets& alphabets);

struct ClauseCandidate {
    std::size_t shape = 0;                ///< index into the shape list
    std::size_t head_rep = 0;             ///< index into the basis
    std::vector<std::size_t> body_reps;   ///< per shape variable, index into the basis

    bool fact() const noexcept { return body_reps.empty(); }
};

/// Every candidate, in canonical order: shape, head rep, body reps
/// lexicographically. Reps must match the rank of what they stand for. Assignments equivalent under a shape symmetry are
/// listed once.
std::vector<ClauseCandidate> enumerate_candidates(const std::vector<Representative>& basis,
                                                  const std::vector<HeadShape>& shapes);

Clause materialize(const ClauseCandidate& c, const std::vector<Representative>& basis,
                   const std::vector<HeadShape>& shapes);

/// Direct admission test for one candidate. Facts: can(rho) composed with
/// the head must be defined and accepted. Otherwise every family of
/// residuals whose body cells are all true and whose realization is defined
/// must give an accepted composition with can(rho); an undefined
/// composition counts as a rejection. `queries` is incremented per oracle
/// call.
bool admit_clause(const ClauseCandidate& c, const std::vector<Representative>& basis,
                  const std::vector<HeadShape>& shapes, const ObservationTable& table,
                  const std::vector<Representative>& residuals, Oracle& oracle, std::size_t* queries = nullptr);

struct GammaStats {
    std::size_t basis_size = 0;
    std::size_t residual_size = 0;
    std::size_t shapes = 0;
    std::size_t max_shapes_per_rank = 0;
    std::size_t fact_candidates = 0;
    std::size_t nonfact_candidates = 0;
    std::size_t table_queries = 0;
    std::size_t fact_queries = 0;
    std::size_t nonfact_queries = 0;
    std::size_t admitted = 0;
    double seconds = 0;

    std::size_t candidates() const noexcept { return fact_candidates + nonfact_candidates; }
    std::size_t queries() const noexcept { return table_queries + fact_queries + nonfact_queries; }
};

struct Hypothesis {
    ClauseSystem system;
    GammaStats stats;
    /// Admission decision per candidate, in enumerate_candidates order;
    /// filled only on request.
    std::vector<char> decisions;
    /// Digest over the sorted clause keys; equal digests mean the same
    /// clause set.
    std::string digest;
};

struct GammaOptions {
    bool record_decisions = false;
};

/// Gamma(F, R). Predicates p_rho for every basis element; clauses are the
/// admitted candidates sorted by clause key; the start predicate is
/// p_rho_empty. Same result as running admit_clause on every candidate,
/// but shares realizations and oracle answers between candidates and
/// treats basis reps with equal rows alike as body predicates.
Hypothesis construct_gamma(const std::vector<Representative>& basis, const std::vector<Representative>& residuals,
                           Oracle& oracle, const ParamTuple& params, const Alphabets& alphabets,
                           const GammaOptions& options = {});

struct StageRecord {
    std::size_t stage = 0;
    bool update = false;
    bool covered_before = false;  ///< D_n within L(Gamma-hat)
    std::size_t sample_graphs = 0; ///< distinct graphs in D_n
    std::size_t sample_vertices = 0; ///< S_n, counting repeats
    std::size_t basis_size = 0;
    std::size_t residual_size = 0;
    GammaStats hat;    ///< construction at line 5 (zero when cached)
    GammaStats gamma;  ///< construction at line 10 (zero when cached)
    bool hat_cached = false;
    bool gamma_cached = false;
    std::size_t queries = 0;   ///< oracle calls during the stage
    std::size_t membership_calls = 0;
    std::size_t clauses = 0;
    std::string digest;
    double seconds = 0;
};

/// The stage loop. The learner holds no reference to any target grammar:
/// it only receives presented graphs and asks the oracle.
class Learner {
public:
    Learner(ParamTuple params, Oracle& oracle);

    const StageRecord& run_stage(const LabeledGraph& g);

    const Hypothesis& hypothesis() const noexcept { return current_; }
    const std::vector<Representative>& basis() const noexcept { return basis_; }
    const std::vector<Representative>& residuals() const noexcept { return residuals_; }
    const std::vector<LabeledGraph>& sample() const noexcept { return sample_; }
    const std::vector<StageRecord>& records() const noexcept { return records_; }
    Alphabets alphabets() const { return alphabets_; }
    const ParamTuple& params() const noexcept { return params_; }
    std::string start_predicate() const;

private:
    ParamTuple params_;
    Oracle& oracle_;
    std::vector<LabeledGraph> sample_;
    std::vector<CanonKey> sample_keys_;
    std::size_t sample_vertices_ = 0;
    std::vector<Representative> basis_;
    std::vector<Representative> residuals_;
    Alphabets alphabets_;
    Hypothesis current_;
    std::vector<StageRecord> records_;
};

} // namespace ficsl
