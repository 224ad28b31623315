#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ficsl/learner.hpp"
#include "ficsl/teacher.hpp"

namespace ficsl {

/// Labels occurring anywhere in the clause patterns, sorted by name.
Alphabets grammar_alphabets(const ClauseSystem& gamma);

/// Closed graphs with at most `cap` vertices over the alphabets on which
/// the two systems disagree. Graphs above params.delta are non-members of
/// both and are not enumerated.
std::vector<LabeledGraph> language_disagreements(const ClauseSystem& a, const std::string& start_a,
                                                 const ClauseSystem& b, const std::string& start_b,
                                                 const ParamTuple& params, const Alphabets& alphabets,
                                                 std::size_t cap);

struct RunConfig {
    std::size_t cap = 6;        ///< presentation: target language up to this many vertices
    std::size_t stages = 0;     ///< 0 means twice the presentation length
    std::size_t check_cap = 6;  ///< language comparison bound
    std::optional<std::uint64_t> seed;
};

struct LearningRun {
    std::vector<StageRecord> records;
    std::vector<std::size_t> disagreements;  ///< per stage, against the target up to check_cap
    std::size_t presentation_length = 0;
    /// First stage from which on no update fires, the digest stays fixed and
    /// the languages agree; nullopt if the run ends before that happens.
    std::optional<std::size_t> converged_at;
    ClauseSystem final_hypothesis;
    std::size_t teacher_queries_total = 0;
    std::size_t teacher_queries_unique = 0;
    double seconds = 0;
};

using StageHook = std::function<void(const Learner&, const StageRecord&)>;

/// Runs the learner against a simulated teacher for `target`, presenting the
/// capped language in order (or shuffled by the seed), cycling.
LearningRun run_learning(const ClauseSystem& target, const ParamTuple& params, const RunConfig& config,
                         const StageHook& on_stage = {});

/// First stage n (1-based) such that every stage >= n has no update, the same
/// digest as stage n, and zero disagreements.
std::optional<std::size_t> convergence_stage(const std::vector<StageRecord>& records,
                                             const std::vector<std::size_t>& disagreements);

} // namespace ficsl
