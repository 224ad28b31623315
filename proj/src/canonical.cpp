#include "ficsl/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace ficsl {

std::uint64_t CanonKey::digest() const noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes_) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string CanonKey::hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::uint64_t d = digest();
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[d & 0xf];
        d >>= 4;
    }
    return out;
}

namespace canon {

void append_u64(std::string& out, std::uint64_t x) {
    do {
        unsigned char byte = x & 0x7f;
        x >>= 7;
        if (x)
            byte |= 0x80;
        out.push_back(static_cast<char>(byte));
    } while (x);
}

void NameRanks::add(Symbol s) {
    if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end())
        symbols_.push_back(s);
}

void NameRanks::finish() {
    std::sort(symbols_.begin(), symbols_.end(), name_less);
}

std::uint32_t NameRanks::rank(Symbol s) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == s)
            return static_cast<std::uint32_t>(i);
    return static_cast<std::uint32_t>(symbols_.size());
}

void NameRanks::append_header(std::string& out) const {
    append_u64(out, symbols_.size());
    for (auto s : symbols_) {
        const auto& name = s.name();
        append_u64(out, name.size());
        out += name;
    }
}

namespace {

class Canonicalizer {
public:
    explicit Canonicalizer(const ColoredGraph& g) : g_(g), n_(g.color.size()) {
        adj_.resize(n_);
        for (const auto& e : g.edges) {
            adj_[e[0]].push_back({e[2], e[1]});
            adj_[e[1]].push_back({e[2], e[0]});
        }
        for (auto& a : adj_)
            std::sort(a.begin(), a.end());
        compute_twins();
    }

    std::vector<std::uint64_t> run() {
        std::vector<std::uint32_t> col(n_);
        std::vector<std::uint64_t> distinct(g_.color);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t v = 0; v < n_; ++v)
            col[v] = static_cast<std::uint32_t>(
                std::lower_bound(distinct.begin(), distinct.end(), g_.color[v]) - distinct.begin());
        search(std::move(col), static_cast<std::uint32_t>(distinct.size()));
        if (!has_best_)
            best_ = leaf_certificate({});
        return best_;
    }

private:
    using Arc = std::pair<std::uint32_t, std::uint32_t>;  // edge color, neighbor

    void compute_twins() {
        twin_.resize(n_);
        std::iota(twin_.begin(), twin_.end(), 0u);
        std::vector<Arc> a, b;
        for (std::size_t u = 0; u < n_; ++u) {
            if (twin_[u] != u)
                continue;
            for (std::size_t v = u + 1; v < n_; ++v) {
                if (twin_[v] != v || g_.color[u] != g_.color[v] || adj_[u].size() != adj_[v].size())
                    continue;
                a.clear();
                b.clear();
                std::optional<std::uint32_t> uv, vu;
                for (const auto& arc : adj_[u]) {
                    if (arc.second == v) uv = arc.first;
                    else a.push_back(arc);
                }
                for (const auto& arc : adj_[v]) {
                    if (arc.second == u) vu = arc.first;
                    else b.push_back(arc);
                }
                if (uv == vu && a == b)
                    twin_[v] = static_cast<std::uint32_t>(u);
            }
        }
    }

    /// Refines to an equitable coloring. Colors stay dense 0..k-1 and the
    /// order of old colors is preserved.
    std::uint32_t refine(std::vector<std::uint32_t>& col, std::uint32_t classes) {
        std::vector<std::uint64_t> flat;
        std::vector<std::size_t> offset(n_ + 1);
        std::vector<std::uint32_t> order(n_);
        while (classes < n_) {
            flat.clear();
            for (std::size_t v = 0; v < n_; ++v) {
                offset[v] = flat.size();
                flat.push_back(col[v]);
                const std::size_t start = flat.size();
                for (const auto& arc : adj_[v])
                    flat.push_back((static_cast<std::uint64_t>(arc.first) << 32) | col[arc.second]);
                std::sort(flat.begin() + static_cast<std::ptrdiff_t>(start), flat.end());
            }
            offset[n_] = flat.size();
            auto sig_less = [&](std::uint32_t x, std::uint32_t y) {
                return std::lexicographical_compare(flat.begin() + offset[x], flat.begin() + offset[x + 1],
                                                    flat.begin() + offset[y], flat.begin() + offset[y + 1]);
            };
            auto sig_equal = [&](std::uint32_t x, std::uint32_t y) {
                return std::equal(flat.begin() + offset[x], flat.begin() + offset[x + 1],
                                  flat.begin() + offset[y], flat.begin() + offset[y + 1]);
            };
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), sig_less);
            std::uint32_t next = 0;
            std::vector<std::uint32_t> fresh(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                if (i > 0 && !sig_equal(order[i - 1], order[i]))
                    ++next;
                fresh[order[i]] = next;
            }
            const std::uint32_t count = n_ ? next + 1 : 0;
            col.swap(fresh);
            if (count == classes)
                break;
            classes = count;
        }
        return classes;
    }

    std::vector<std::uint64_t> leaf_certificate(const std::vector<std::uint32_t>& pos) const {
        std::vector<std::uint64_t> cert;
        cert.reserve(2 + n_ + g_.edges.size());
        cert.push_back(n_);
        cert.push_back(g_.edges.size());
        std::vector<std::uint64_t> by_pos(n_);
        for (std::size_t v = 0; v < n_; ++v)
            by_pos[pos[v]] = g_.color[v];
        cert.insert(cert.end(), by_pos.begin(), by_pos.end());
        const std::size_t edge_start = cert.size();
        for (const auto& e : g_.edges) {
            std::uint64_t a = pos[e[0]], b = pos[e[1]];
            if (a > b)
                std::swap(a, b);
            cert.push_back((a << 40) | (b << 16) | e[2]);
        }
        std::sort(cert.begin() + static_cast<std::ptrdiff_t>(edge_start), cert.end());
        return cert;
    }

    void search(std::vector<std::uint32_t> col, std::uint32_t classes) {
        classes = refine(col, classes);
        if (classes == n_) {
            auto cert = leaf_certificate(col);
            if (!has_best_ || cert < best_) {
                best_ = std::move(cert);
                has_best_ = true;
            }
            return;
        }
        std::vector<std::uint32_t> size(classes, 0);
        for (auto c : col)
            ++size[c];
        std::uint32_t target = 0;
        std::uint32_t target_size = static_cast<std::uint32_t>(n_ + 1);
        for (std::uint32_t c = 0; c < classes; ++c)
            if (size[c] > 1 && size[c] < target_size) {
                target = c;
                target_size = size[c];
            }
        std::vector<std::uint32_t> tried;
        for (std::size_t v = 0; v < n_; ++v) {
            if (col[v] != target)
                continue;
            if (std::find(tried.begin(), tried.end(), twin_[v]) != tried.end())
                continue;
            tried.push_back(twin_[v]);
            std::vector<std::uint32_t> next(n_);
            for (std::size_t u = 0; u < n_; ++u)
                next[u] = 2 * col[u] + (u == v ? 0 : 1);
            // Compress back to dense ranks.
            std::vector<std::uint32_t> values(next);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (auto& c : next)
                c = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
            search(std::move(next), static_cast<std::uint32_t>(values.size()));
        }
    }

    const ColoredGraph& g_;
    std::size_t n_;
    std::vector<std::vector<Arc>> adj_;
    std::vector<std::uint32_t> twin_;
    std::vector<std::uint64_t> best_;
    bool has_best_ = false;
};

} // namespace

std::vector<std::uint64_t> certificate(const ColoredGraph& g) {
    return Canonicalizer(g).run();
}

} // namespace canon

namespace {

constexpr std::uint64_t kind_shift = 56;
constexpr std::uint64_t pos_shift = 32;
constexpr std::uint32_t port_edge = 1u << 15;

void encode(std::string& out, const std::vector<std::uint64_t>& cert) {
    out.reserve(out.size() + cert.size() * 2);
    for (auto x : cert)
        canon::append_u64(out, x);
}

CanonKey key_of(const LabeledGraph& g, std::span<const VertexId> interface,
                const std::vector<VariableHyperedge>* hyperedges) {
    canon::NameRanks vlabels, elabels, vars;
    for (auto l : g.vertex_labels())
        vlabels.add(l);
    for (const auto& e : g.edges())
        elabels.add(e.label);
    if (hyperedges)
        for (const auto& h : *hyperedges)
            vars.add(h.variable);
    vlabels.finish();
    elabels.finish();
    vars.finish();

    canon::ColoredGraph cg;
    const std::size_t n = g.vertex_count();
    cg.color.resize(n + (hyperedges ? hyperedges->size() : 0));
    std::vector<std::uint64_t> iface(n, 0);
    for (std::size_t i = 0; i < interface.size(); ++i)
        iface[interface[i]] = i + 1;
    for (VertexId v = 0; v < n; ++v)
        cg.color[v] = (iface[v] << pos_shift) | vlabels.rank(g.vertex_label(v));
    cg.edges.reserve(g.edge_count());
    for (const auto& e : g.edges())
        cg.edges.push_back({e.u, e.v, elabels.rank(e.label)});
    if (hyperedges) {
        for (std::size_t i = 0; i < hyperedges->size(); ++i) {
            const auto& h = (*hyperedges)[i];
            const auto node = static_cast<std::uint32_t>(n + i);
            cg.color[node] = (1ull << kind_shift) | (static_cast<std::uint64_t>(h.rank()) << pos_shift) |
                             vars.rank(h.variable);
            for (std::size_t j = 0; j < h.ports.size(); ++j)
                cg.edges.push_back({node, h.ports[j], port_edge | static_cast<std::uint32_t>(j)});
        }
    }
    std::string out;
    out.push_back(hyperedges ? 'P' : 'G');
    vlabels.append_header(out);
    elabels.append_header(out);
    if (hyperedges)
        vars.append_header(out);
    encode(out, canon::certificate(cg));
    return CanonKey(std::move(out));
}

} // namespace

CanonKey canonical_key(const GraphWithInterface& g) { return key_of(g.graph, g.interface, nullptr); }

CanonKey canonical_key(const GraphPattern& p) {
    if (p.ground())
        return key_of(p.base.graph, p.base.interface, nullptr);
    return key_of(p.base.graph, p.base.interface, &p.hyperedges);
}

CanonKey canonical_key(const LabeledGraph& g) { return key_of(g, {}, nullptr); }

} // namespace ficsl
