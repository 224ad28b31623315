#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ficsl/canonical.hpp"
#include "ficsl/clause.hpp"
#include "ficsl/graph.hpp"

namespace ficsl {

/// Membership queries "is G in L?". The learner only sees this interface.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual bool query(const LabeledGraph& g) = 0;
};

/// Simulated teacher for a known target. Answers are memoized by canonical
/// key; the cache is safe for concurrent callers.
class Teacher final : public Oracle {
public:
    Teacher(ClauseSystem target, ParamTuple params);

    bool answer_query(const LabeledGraph& g);
    bool query(const LabeledGraph& g) override { return answer_query(g); }

    std::size_t queries_total() const noexcept { return total_.load(); }
    std::size_t queries_unique() const;

    /// Recomputes up to `limit` cached answers from scratch and returns the
    /// number that disagree.
    std::size_t verify_cache(std::size_t limit) const;

    const ClauseSystem& target() const noexcept { return target_; }
    const ParamTuple& params() const noexcept { return params_; }

private:
    struct Entry {
        bool answer;
        LabeledGraph graph;
    };

    ClauseSystem target_;
    ParamTuple params_;
    mutable std::mutex mutex_;
    std::unordered_map<CanonKey, Entry> cache_;
    std::atomic<std::size_t> total_{0};
};

/// Closed graphs derivable from the start predicate with at most `cap`
/// vertices and degree at most params.delta, one per isomorphism class,
/// ordered by vertex count and then canonical key. Built by saturating
/// per-predicate pools bottom-up.
///
/// Throws GrammarError for a recursive clause whose head adds neither a
/// vertex outside its ports nor an edge.
std::vector<LabeledGraph> generate_language(const ClauseSystem& target, const ParamTuple& params, std::size_t cap);

/// Cycles through a fixed list of graphs forever.
class Presentation {
public:
    /// Throws std::invalid_argument on an empty list. A seed permutes the
    /// list once, reproducibly.
    explicit Presentation(std::vector<LabeledGraph> graphs, std::optional<std::uint64_t> seed = std::nullopt);

    const LabeledGraph& next();
    std::size_t position() const noexcept { return position_; }
    std::size_t cycle_length() const noexcept { return graphs_.size(); }
    const std::vector<LabeledGraph>& graphs() const noexcept { return graphs_; }

private:
    std::vector<LabeledGraph> graphs_;
    std::size_t position_ = 0;
};

} // namespace ficsl
