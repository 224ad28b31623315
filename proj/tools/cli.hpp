#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ficsl::cli {

/// Exit statuses.
inline constexpr int ok = 0;
inline constexpr int failure = 1;  ///< malformed input or domain error
inline constexpr int usage = 2;

/// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ficsl::cli
