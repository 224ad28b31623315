#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ficsl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A graph, pattern or substitution violates a structural invariant
/// (dangling endpoint, self-loop, repeated interface vertex, ...).
class StructureError : public Error {
public:
    using Error::Error;
};

/// A clause system fails validation; `clause` is the offending clause index
/// or npos when the problem is system-wide.
class GrammarError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    GrammarError(const std::string& what, std::size_t clause = npos)
        : Error(what), clause_(clause) {}

    std::size_t clause() const noexcept { return clause_; }

private:
    std::size_t clause_;
};

/// A graph exceeds the degree bound Delta.
class DegreeBoundError : public Error {
public:
    DegreeBoundError(const std::string& what, std::size_t graph_index, std::size_t degree)
        : Error(what), graph_index_(graph_index), degree_(degree) {}

    std::size_t graph_index() const noexcept { return graph_index_; }
    std::size_t degree() const noexcept { return degree_; }

private:
    std::size_t graph_index_;
    std::size_t degree_;
};

/// Malformed input file (JSON schema violation, unknown reference, ...).
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace ficsl
