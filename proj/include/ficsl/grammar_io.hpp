#pragma once

#include <filesystem>

#include "ficsl/clause.hpp"
#include "ficsl/graph_io.hpp"

namespace ficsl::io {

// Grammar files look like
//   {"start": "p",
//    "predicates": [{"name": "p", "irank": 0}, ...],
//    "clauses": [{"head": {"predicate": "p", "pattern": <pattern>},
//                 "body": [{"predicate": "q", "pattern": <pattern>}]}]}
// Parsing validates the system; structural problems raise FormatError and
// clause-level problems raise GrammarError with the clause index.

ClauseSystem grammar_from_json(const json& j);
json to_json(const ClauseSystem& gamma);
ClauseSystem read_grammar(const std::filesystem::path& path);

// Parameter files: {"m":3, "s":1, "t":1, "w":2, "d":2, "delta":2, "h_max":3},
// possibly with extra keys that callers read themselves.
ParamTuple params_from_json(const json& j);
json to_json(const ParamTuple& p);
ParamTuple read_params(const std::filesystem::path& path);

} // namespace ficsl::io
