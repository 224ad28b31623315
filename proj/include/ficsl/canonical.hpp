#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ficsl/graph.hpp"

namespace ficsl {

/// Opaque isomorphism-invariant key. Two graphs with interface get equal keys
/// iff they are isomorphic preserving labels and interface order. Keys are
/// built from label names, so they are stable across processes.
class CanonKey {
public:
    CanonKey() = default;
    explicit CanonKey(std::string bytes) : bytes_(std::move(bytes)) {}

    const std::string& bytes() const noexcept { return bytes_; }

    /// 64-bit FNV-1a digest of the key bytes.
    std::uint64_t digest() const noexcept;
    /// 16 hex characters of digest().
    std::string hex() const;

    friend bool operator==(const CanonKey&, const CanonKey&) = default;
    friend auto operator<=>(const CanonKey& a, const CanonKey& b) { return a.bytes_ <=> b.bytes_; }

private:
    std::string bytes_;
};

CanonKey canonical_key(const GraphWithInterface& g);
CanonKey canonical_key(const GraphPattern& p);
CanonKey canonical_key(const LabeledGraph& closed_graph);

namespace canon {

/// Node- and edge-colored undirected graph. Colors must already be
/// comparable in a run-independent way (the caller ranks labels by name).
struct ColoredGraph {
    std::vector<std::uint64_t> color;
    std::vector<std::array<std::uint32_t, 3>> edges;  ///< {u, v, edge color}
};

/// Lexicographically least encoding over all color-respecting orderings,
/// found by refinement plus individualization. Equal certificates iff the
/// colored graphs are isomorphic.
std::vector<std::uint64_t> certificate(const ColoredGraph& g);

/// Helper for building key headers: sorted distinct names and a rank lookup.
class NameRanks {
public:
    void add(Symbol s);
    /// Sorts by name; call once after the last add().
    void finish();
    std::uint32_t rank(Symbol s) const;
    void append_header(std::string& out) const;

private:
    std::vector<Symbol> symbols_;
};

void append_u64(std::string& out, std::uint64_t x);

} // namespace canon

} // namespace ficsl

template <>
struct std::hash<ficsl::CanonKey> {
    std::size_t operator()(const ficsl::CanonKey& k) const noexcept {
        return std::hash<std::string>{}(k.bytes());
    }
};
