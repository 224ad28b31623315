#include "ficsl/teacher.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "ficsl/error.hpp"
#include "ficsl/membership.hpp"

namespace ficsl {

Teacher::Teacher(ClauseSystem target, ParamTuple params) : target_(std::move(target)), params_(params) {}

bool Teacher::answer_query(const LabeledGraph& g) {
    ++total_;
    if (g.max_degree() > params_.delta)
        return false;
    auto key = canonical_key(g);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second.answer;
    }
    const bool answer = member(target_, target_.start(), g, params_);
    std::lock_guard lock(mutex_);
    cache_.try_emplace(std::move(key), Entry{answer, g});
    return answer;
}

std::size_t Teacher::queries_unique() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

std::size_t Teacher::verify_cache(std::size_t limit) const {
    std::vector<std::pair<bool, LabeledGraph>> sample;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [key, entry] : cache_) {
            if (sample.size() == limit)
                break;
            sample.emplace_back(entry.answer, entry.graph);
        }
    }
    std::size_t bad = 0;
    for (const auto& [answer, g] : sample)
        bad += member(target_, target_.start(), g, params_) != answer;
    return bad;
}

namespace {

struct Pool {
    std::vector<GraphWithInterface> graphs;
    std::unordered_set<CanonKey> keys;
};

bool grows(const GraphPattern& head) {
    std::vector<bool> port(head.base.graph.vertex_count(), false);
    for (const auto& h : head.hyperedges)
        for (auto v : h.ports)
            port[v] = true;
    return head.base.graph.edge_count() > 0 || std::find(port.begin(), port.end(), false) != port.end();
}

} // namespace

std::vector<LabeledGraph> generate_language(const ClauseSystem& target, const ParamTuple& params, std::size_t cap) {
    const auto recursive = recursive_clauses(target);
    for (std::size_t i = 0; i < target.clauses().size(); ++i)
        if (recursive[i] && !target.clauses()[i].fact() && !grows(target.clauses()[i].head.pattern))
            throw GrammarError("unsupported target: recursive clause " + std::to_string(i) +
                                   " adds no vertex and no edge",
                               i);

    const std::size_t np = target.predicates().size();
    std::vector<Pool> pools(np);
    std::vector<std::size_t> old_size(np, 0), cur_size(np, 0);

    struct Slot {
        std::size_t predicate;
        std::vector<Label> port_labels;
        std::vector<std::size_t> hyperedges;
    };
    struct Rule {
        std::size_t head;
        const GraphPattern* pattern;
        std::vector<Slot> body;
    };
    std::vector<Rule> rules;
    for (const auto& c : target.clauses()) {
        Rule r{target.index_of(c.head.predicate), &c.head.pattern, {}};
        for (const auto& a : c.body) {
            Slot s{target.index_of(a.predicate), {}, {}};
            for (auto v : a.pattern.base.interface)
                s.port_labels.push_back(a.pattern.base.graph.vertex_label(v));
            const auto x = a.pattern.hyperedges.front().variable;
            for (std::size_t h = 0; h < c.head.pattern.hyperedges.size(); ++h)
                if (c.head.pattern.hyperedges[h].variable == x)
                    s.hyperedges.push_back(h);
            r.body.push_back(std::move(s));
        }
        rules.push_back(std::move(r));
    }

    std::vector<std::pair<std::size_t, GraphWithInterface>> pending;
    std::vector<std::unordered_set<CanonKey>> pending_keys(np);
    auto offer = [&](std::size_t pred, GraphWithInterface g) {
        if (g.graph.vertex_count() > cap || g.graph.max_degree() > params.delta)
            return;
        auto key = canonical_key(g);
        if (pools[pred].keys.count(key) || !pending_keys[pred].insert(key).second)
            return;
        pending.emplace_back(pred, std::move(g));
    };

    for (std::size_t round = 1;; ++round) {
        pending.clear();
        for (auto& k : pending_keys)
            k.clear();
        for (const auto& r : rules) {
            if (r.body.empty()) {
                if (round == 1)
                    offer(r.head, r.pattern->base);
                continue;
            }
            if (round == 1)
                continue;
            std::vector<const GraphWithInterface*> bound(r.pattern->hyperedges.size());
            for (std::size_t pivot = 0; pivot < r.body.size(); ++pivot) {
                std::function<void(std::size_t)> rec = [&](std::size_t j) {
                    if (j == r.body.size()) {
                        if (auto real = realize_bound(*r.pattern, bound))
                            offer(r.head, std::move(*real));
                        return;
                    }
                    const auto p = r.body[j].predicate;
                    std::size_t lo = 0, hi = cur_size[p];
                    if (j < pivot)
                        hi = old_size[p];
                    else if (j == pivot)
                        lo = old_size[p];
                    for (std::size_t i = lo; i < hi; ++i) {
                        const auto& k = pools[p].graphs[i];
                        bool ok = k.rank() == r.body[j].port_labels.size();
                        for (std::size_t q = 0; ok && q < k.rank(); ++q)
                            ok = k.graph.vertex_label(k.interface[q]) == r.body[j].port_labels[q];
                        if (!ok)
                            continue;
                        for (auto h : r.body[j].hyperedges)
                            bound[h] = &k;
                        rec(j + 1);
                    }
                };
                rec(0);
            }
        }
        old_size = cur_size;
        for (auto& [pred, g] : pending) {
            pools[pred].keys.insert(canonical_key(g));
            pools[pred].graphs.push_back(std::move(g));
        }
        for (std::size_t p = 0; p < np; ++p)
            cur_size[p] = pools[p].graphs.size();
        if (pending.empty())
            break;
    }

    std::vector<std::pair<CanonKey, LabeledGraph>> out;
    for (const auto& g : pools[target.index_of(target.start())].graphs)
        out.emplace_back(canonical_key(g.graph), g.graph);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second.vertex_count() != b.second.vertex_count())
            return a.second.vertex_count() < b.second.vertex_count();
        return a.first < b.first;
    });
    std::vector<LabeledGraph> graphs;
    for (auto& [key, g] : out)
        graphs.push_back(std::move(g));
    return graphs;
}

Presentation::Presentation(std::vector<LabeledGraph> graphs, std::optional<std::uint64_t> seed)
    : graphs_(std::move(graphs)) {
    if (graphs_.empty())
        throw std::invalid_argument("presentation needs at least one graph");
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(graphs_.begin(), graphs_.end(), rng);
    }
}

const LabeledGraph& Presentation::next() {
    const auto& g = graphs_[position_ % graphs_.size()];
    ++position_;
    return g;
}

} // namespace ficsl
