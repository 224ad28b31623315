#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ficsl {

/// Interned string used for vertex labels, edge labels and variable names.
///
/// Ids are process-local and depend on interning order; never use them for
/// ordering that must be stable across runs. `name()` is the stable identity.
class Symbol {
public:
    Symbol() = default;

    static Symbol of(std::string_view name);

    const std::string& name() const;
    std::uint32_t id() const noexcept { return id_; }

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.id_ == b.id_; }
    friend auto operator<=>(Symbol a, Symbol b) noexcept { return a.id_ <=> b.id_; }

private:
    explicit Symbol(std::uint32_t id) : id_(id) {}
    std::uint32_t id_ = 0;
};

using Label = Symbol;
using Variable = Symbol;

/// Name-order comparison, for anything that must be deterministic across runs.
inline bool name_less(Symbol a, Symbol b) { return a.name() < b.name(); }

} // namespace ficsl

template <>
struct std::hash<ficsl::Symbol> {
    std::size_t operator()(ficsl::Symbol s) const noexcept { return s.id(); }
};
