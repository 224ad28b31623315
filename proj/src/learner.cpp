#include "ficsl/learner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "ficsl/graph_enum.hpp"
#include "ficsl/membership.hpp"

namespace ficsl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TupleHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 14695981039346656037ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

template <typename T>
using TupleMap = std::unordered_map<std::vector<std::uint32_t>, T, TupleHash>;

/// Advances a mixed-radix counter; false once it wraps.
bool advance(std::vector<std::uint32_t>& digit, const std::vector<std::uint32_t>& radix) {
    for (std::size_t i = digit.size(); i-- > 0;) {
        if (++digit[i] < radix[i])
            return true;
        digit[i] = 0;
    }
    return false;
}

/// All injective tuples of length r over 0..n-1 in lexicographic order.
std::vector<std::vector<VertexId>> injective_tuples(std::size_t n, std::size_t r) {
    std::vector<std::vector<VertexId>> out;
    std::vector<VertexId> cur;
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self) -> void {
        if (cur.size() == r) {
            out.push_back(cur);
            return;
        }
        for (VertexId v = 0; v < n; ++v) {
            if (used[v])
                continue;
            used[v] = true;
            cur.push_back(v);
            self(self);
            cur.pop_back();
            used[v] = false;
        }
    };
    rec(rec);
    return out;
}

GraphPattern star_pattern(Variable x, const std::vector<Label>& labels) {
    GraphPattern p;
    VariableHyperedge h{x, {}};
    for (auto l : labels) {
        const VertexId v = p.base.graph.add_vertex(l);
        p.base.interface.push_back(v);
        h.ports.push_back(v);
    }
    p.hyperedges.push_back(std::move(h));
    return p;
}

/// Variable index of each hyperedge.
std::vector<std::size_t> hyperedge_variables(const HeadShape& s) {
    std::vector<std::size_t> out;
    for (const auto& h : s.pattern.hyperedges)
        out.push_back(static_cast<std::size_t>(std::find(s.variables.begin(), s.variables.end(), h.variable) -
                                                s.variables.begin()));
    return out;
}

bool orbit_min(const std::vector<std::uint32_t>& b, const HeadShape& s) {
    std::vector<std::uint32_t> other(b.size());
    for (const auto& pi : s.symmetries) {
        for (std::size_t i = 0; i < b.size(); ++i)
            other[i] = b[pi[i]];
        if (other < b)
            return false;
    }
    return true;
}

std::vector<std::vector<std::size_t>> compute_symmetries(const HeadShape& s) {
    const std::size_t k = s.variables.size();
    std::vector<std::vector<std::size_t>> out;
    if (k < 2)
        return out;
    auto tagged = [&](const std::vector<std::size_t>& tag) {
        Clause c{{std::string(), s.pattern}, {}};
        for (std::size_t i = 0; i < k; ++i)
            c.body.push_back({"v" + std::to_string(tag[i]), star_pattern(s.variables[i], s.port_labels[i])});
        return clause_key(c);
    };
    std::vector<std::size_t> pi(k);
    std::iota(pi.begin(), pi.end(), 0);
    const CanonKey identity = tagged(pi);
    while (std::next_permutation(pi.begin(), pi.end())) {
        bool ranks_ok = true;
        for (std::size_t i = 0; i < k; ++i)
            ranks_ok = ranks_ok && s.variable_ranks[pi[i]] == s.variable_ranks[i];
        if (ranks_ok && tagged(pi) == identity)
            out.push_back(pi);
    }
    return out;
}

std::string key_digest(const std::vector<CanonKey>& keys, const std::vector<PredicateSymbol>& preds) {
    std::string all;
    for (const auto& p : preds) {
        canon::append_u64(all, p.name.size());
        all += p.name;
        canon::append_u64(all, p.irank);
    }
    for (const auto& k : keys) {
        canon::append_u64(all, k.bytes().size());
        all += k.bytes();
    }
    return CanonKey(std::move(all)).hex();
}

} // namespace

std::string predicate_name(const CanonKey& key, std::size_t rank) {
    return "p" + std::to_string(rank) + "_" + key.hex();
}

Representative empty_representative() {
    Representative r;
    r.fragment = empty_fragment();
    r.key = canonical_key(r.fragment);
    r.predicate = predicate_name(r.key, 0);
    return r;
}

std::vector<Representative> collapse_reps(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta) {
    std::vector<Representative> out;
    std::unordered_set<CanonKey> seen;
    for_each_brep(sample, w, delta, [&](BoundarySpec&& spec, GraphWithInterface&& fragment) {
        auto key = canonical_key(fragment);
        if (!seen.insert(key).second)
            return;
        Representative r;
        r.predicate = predicate_name(key, fragment.rank());
        r.key = std::move(key);
        r.fragment = std::move(fragment);
        r.spec = std::move(spec);
        out.push_back(std::move(r));
    });
    return out;
}

std::vector<Representative> make_basis(std::span<const LabeledGraph> sample, std::size_t w, std::size_t delta) {
    std::vector<Representative> out{empty_representative()};
    for (auto& r : collapse_reps(sample, w, delta)) {
        if (r.key == out.front().key)
            out.front().spec = r.spec;
        else
            out.push_back(std::move(r));
    }
    return out;
}

ObservationTable::ObservationTable(const std::vector<Representative>& rows, const std::vector<Representative>& cols,
                                   Oracle& oracle)
    : rows_(rows.size()), cols_(cols.size()), cells_(rows.size() * cols.size(), 0) {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (rows[i].rank() != cols[j].rank())
                continue;
            auto g = compose(rows[i].fragment, cols[j].fragment);
            if (!g)
                continue;
            ++queries_;
            queried_.emplace_back(i, j);
            cells_[i * cols_ + j] = oracle.query(*g) ? 1 : 0;
        }
}

Alphabets alphabets_of(std::span<const LabeledGraph> graphs) {
    std::set<std::string> vs, es;
    for (const auto& g : graphs) {
        for (auto l : g.vertex_labels())
            vs.insert(l.name());
        for (const auto& e : g.edges())
            es.insert(e.label.name());
    }
    Alphabets a;
    for (const auto& n : vs)
        a.vertex.push_back(Label::of(n));
    for (const auto& n : es)
        a.edge.push_back(Label::of(n));
    return a;
}

HeadShape head_shape_of(GraphPattern p) {
    HeadShape s;
    s.variables = p.variables();
    for (auto x : s.variables) {
        for (const auto& he : p.hyperedges)
            if (he.variable == x) {
                s.variable_ranks.push_back(he.rank());
                std::vector<Label> labels;
                for (VertexId v : he.ports)
                    labels.push_back(p.base.graph.vertex_label(v));
                s.port_labels.push_back(std::move(labels));
                break;
            }
    }
    s.key = shape_key(p);
    s.pattern = std::move(p);
    s.symmetries = compute_symmetries(s);
    return s;
}

std::vector<HeadShape> enumerate_head_shapes(const ParamTuple& params, const Alphabets& alphabets) {
    std::vector<HeadShape> out;
    std::unordered_set<CanonKey> seen;
    for (const auto& base : enumerate_graphs(params.h_max, alphabets.vertex, alphabets.edge, params.d)) {
        const std::size_t n = base.vertex_count();
        std::vector<std::vector<VertexId>> ports;
        for (std::size_t r = 1; r <= params.w; ++r)
            for (auto& t : injective_tuples(n, r))
                ports.push_back(std::move(t));

        for (std::size_t r = 0; r <= std::min(params.w, n); ++r) {
            for (const auto& iface : injective_tuples(n, r)) {
                // Multisets of hyperedges as non-decreasing index lists.
                std::vector<std::size_t> pick;
                auto emit_partitions = [&]() {
                    const std::size_t h = pick.size();
                    std::vector<std::size_t> block(h, 0);
                    auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
                        if (i == h) {
                            if (h > 0 && blocks > params.t)
                                return;
                            GraphPattern p(GraphWithInterface{base, iface});
                            for (std::size_t j = 0; j < h; ++j)
                                p.hyperedges.push_back(
                                    {Variable::of("x" + std::to_string(block[j] + 1)), ports[pick[j]]});
                            auto key = shape_key(p);
                            if (!seen.insert(key).second)
                                return;
                            out.push_back(head_shape_of(std::move(p)));
                            return;
                        }
                        for (std::size_t b = 0; b <= blocks && b < params.t; ++b) {
                            // Rank-consistent: a reused block keeps its rank.
                            bool ok = true;
                            if (b < blocks)
                                for (std::size_t j = 0; j < i && ok; ++j)
                                    if (block[j] == b && ports[pick[j]].size() != ports[pick[i]].size())
                                        ok = false;
                            if (!ok)
                                continue;
                            block[i] = b;
                            self(self, i + 1, std::max(blocks, b + 1));
                        }
                    };
                    rec(rec, 0, 0);
                };
                auto multisets = [&](auto&& self, std::size_t from) -> void {
                    emit_partitions();
                    if (pick.size() == params.s)
                        return;
                    for (std::size_t j = from; j < ports.size(); ++j) {
                        pick.push_back(j);
                        self(self, j);
                        pick.pop_back();
                    }
                };
                multisets(multisets, 0);
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const HeadShape& a, const HeadShape& b) {
        if (a.rank() != b.rank())
            return a.rank() < b.rank();
        if (a.pattern.hyperedges.size() != b.pattern.hyperedges.size())
            return a.pattern.hyperedges.size() < b.pattern.hyperedges.size();
        return a.key < b.key;
    });
    return out;
}

std::vector<ClauseCandidate> enumerate_candidates(const std::vector<Representative>& basis,
                                                  const std::vector<HeadShape>& shapes) {
    std::vector<ClauseCandidate> out;
    for (std::size_t si = 0; si < shapes.size(); ++si) {
        const auto& s = shapes[si];
        const std::size_t k = s.variables.size();
        std::vector<std::vector<std::uint32_t>> choices(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (basis[b].rank() == s.variable_ranks[i])
                    choices[i].push_back(static_cast<std::uint32_t>(b));
        for (std::size_t head = 0; head < basis.size(); ++head) {
            if (basis[head].rank() != s.rank())
                continue;
            if (k == 0) {
                out.push_back({si, head, {}});
                continue;
            }
            if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); }))
                continue;
            std::vector<std::uint32_t> digit(k, 0), radix(k), b(k);
            for (std::size_t i = 0; i < k; ++i)
                radix[i] = static_cast<std::uint32_t>(choices[i].size());
            do {
                for (std::size_t i = 0; i < k; ++i)
                    b[i] = choices[i][digit[i]];
                if (orbit_min(b, s))
                    out.push_back({si, head, std::vector<std::size_t>(b.begin(), b.end())});
            } while (advance(digit, radix));
        }
    }
    return out;
}

Clause materialize(const ClauseCandidate& c, const std::vector<Representative>& basis,
                   const std::vector<HeadShape>& shapes) {
    const auto& s = shapes[c.shape];
    Clause out{{basis[c.head_rep].predicate, s.pattern}, {}};
    for (std::size_t i = 0; i < c.body_reps.size(); ++i)
        out.body.push_back({basis[c.body_reps[i]].predicate, star_pattern(s.variables[i], s.port_labels[i])});
    return out;
}

bool admit_clause(const ClauseCandidate& c, const std::vector<Representative>& basis,
                  const std::vector<HeadShape>& shapes, const ObservationTable& table,
                  const std::vector<Representative>& residuals, Oracle& oracle, std::size_t* queries) {
    const auto& s = shapes[c.shape];
    const auto& head = basis[c.head_rep].fragment;
    auto ask = [&](const LabeledGraph& g) {
        if (queries)
            ++*queries;
        return oracle.query(g);
    };
    if (c.fact()) {
        auto g = compose(head, s.pattern.base);
        return g && ask(*g);
    }
    const std::size_t k = c.body_reps.size();
    if (residuals.empty())
        return true;
    const auto var_of = hyperedge_variables(s);
    std::vector<std::uint32_t> sigma(k, 0), radix(k, static_cast<std::uint32_t>(residuals.size()));
    std::vector<const GraphWithInterface*> bound(s.pattern.hyperedges.size());
    do {
        bool all_true = true;
        for (std::size_t i = 0; i < k && all_true; ++i)
            all_true = residuals[sigma[i]].rank() == s.variable_ranks[i] && table.cell(c.body_reps[i], sigma[i]);
        if (!all_true)
            continue;
        for (std::size_t h = 0; h < bound.size(); ++h)
            bound[h] = &residuals[sigma[var_of[h]]].fragment;
        auto realized = realize_bound(s.pattern, bound);
        if (!realized)
            continue;
        auto g = compose(head, *realized);
        if (!g || !ask(*g))
            return false;
    } while (advance(sigma, radix));
    return true;
}

Hypothesis construct_gamma(const std::vector<Representative>& basis, const std::vector<Representative>& residuals,
                           Oracle& oracle, const ParamTuple& params, const Alphabets& alphabets,
                           const GammaOptions& options) {
    const auto t0 = Clock::now();
    Hypothesis hyp;
    auto& st = hyp.stats;
    st.basis_size = basis.size();
    st.residual_size = residuals.size();

    const ObservationTable table(basis, residuals, oracle);
    st.table_queries = table.queries();

    const auto shapes = enumerate_head_shapes(params, alphabets);
    st.shapes = shapes.size();
    {
        std::map<std::size_t, std::size_t> per_rank;
        for (const auto& s : shapes)
            st.max_shapes_per_rank = std::max(st.max_shapes_per_rank, ++per_rank[s.rank()]);
    }

    // Basis reps with the same rank and table row behave identically as
    // body predicates.
    std::vector<std::uint32_t> row_class(basis.size());
    std::vector<std::vector<std::uint32_t>> class_columns;
    {
        std::map<std::pair<std::size_t, std::vector<char>>, std::uint32_t> classes;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            std::vector<char> row(residuals.size());
            for (std::size_t j = 0; j < residuals.size(); ++j)
                row[j] = table.cell(b, j);
            auto [it, fresh] = classes.try_emplace({basis[b].rank(), row}, static_cast<std::uint32_t>(classes.size()));
            if (fresh) {
                std::vector<std::uint32_t> cols;
                for (std::size_t j = 0; j < residuals.size(); ++j)
                    if (row[j])
                        cols.push_back(static_cast<std::uint32_t>(j));
                class_columns.push_back(std::move(cols));
            }
            row_class[b] = it->second;
        }
    }

    std::vector<std::pair<CanonKey, Clause>> admitted;
    auto admit = [&](const ClauseCandidate& c) {
        Clause clause = materialize(c, basis, shapes);
        auto key = clause_key(clause);
        admitted.emplace_back(std::move(key), std::move(clause));
    };

    for (std::size_t si = 0; si < shapes.size(); ++si) {
        const auto& s = shapes[si];
        const std::size_t k = s.variables.size();

        if (k == 0) {
            for (std::size_t head = 0; head < basis.size(); ++head) {
                if (basis[head].rank() != s.rank())
                    continue;
                ++st.fact_candidates;
                auto g = compose(basis[head].fragment, s.pattern.base);
                bool ok = false;
                if (g) {
                    ++st.fact_queries;
                    ok = oracle.query(*g);
                }
                if (options.record_decisions)
                    hyp.decisions.push_back(ok);
                if (ok)
                    admit({si, head, {}});
            }
            continue;
        }

        std::vector<std::vector<std::uint32_t>> choices(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t b = 0; b < basis.size(); ++b)
                if (basis[b].rank() == s.variable_ranks[i])
                    choices[i].push_back(static_cast<std::uint32_t>(b));
        if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); }))
            continue;

        const auto var_of = hyperedge_variables(s);
        TupleMap<std::optional<GraphWithInterface>> realized;
        auto realize_sigma = [&](const std::vector<std::uint32_t>& sigma) -> const std::optional<GraphWithInterface>& {
            auto it = realized.find(sigma);
            if (it != realized.end())
                return it->second;
            std::vector<const GraphWithInterface*> bound(s.pattern.hyperedges.size());
            for (std::size_t h = 0; h < bound.size(); ++h)
                bound[h] = &residuals[sigma[var_of[h]]].fragment;
            return realized.emplace(sigma, realize_bound(s.pattern, bound)).first->second;
        };

        for (std::size_t head = 0; head < basis.size(); ++head) {
            if (basis[head].rank() != s.rank())
                continue;
            const auto& can_rho = basis[head].fragment;
            TupleMap<bool> rejects;   // per sigma tuple: defined realization, negative composition
            TupleMap<bool> decision;  // per body class tuple
            auto decide = [&](const std::vector<std::uint32_t>& classes) {
                std::vector<std::uint32_t> digit(k, 0), radix(k), sigma(k);
                for (std::size_t i = 0; i < k; ++i)
                    radix[i] = static_cast<std::uint32_t>(class_columns[classes[i]].size());
                if (std::any_of(radix.begin(), radix.end(), [](auto r) { return r == 0; }))
                    return true;
                do {
                    for (std::size_t i = 0; i < k; ++i)
                        sigma[i] = class_columns[classes[i]][digit[i]];
                    auto it = rejects.find(sigma);
                    if (it == rejects.end()) {
                        bool bad = false;
                        if (const auto& K = realize_sigma(sigma)) {
                            auto g = compose(can_rho, *K);
                            if (!g) {
                                bad = true;
                            } else {
                                ++st.nonfact_queries;
                                bad = !oracle.query(*g);
                            }
                        }
                        it = rejects.emplace(sigma, bad).first;
                    }
                    if (it->second)
                        return false;
                } while (advance(digit, radix));
                return true;
            };

            std::vector<std::uint32_t> digit(k, 0), radix(k), b(k), classes(k);
            for (std::size_t i = 0; i < k; ++i)
                radix[i] = static_cast<std::uint32_t>(choices[i].size());
            do {
                for (std::size_t i = 0; i < k; ++i)
                    b[i] = choices[i][digit[i]];
                if (!orbit_min(b, s))
                    continue;
                ++st.nonfact_candidates;
                for (std::size_t i = 0; i < k; ++i)
                    classes[i] = row_class[b[i]];
                auto it = decision.find(classes);
                if (it == decision.end())
                    it = decision.emplace(classes, decide(classes)).first;
                if (options.record_decisions)
                    hyp.decisions.push_back(it->second);
                if (it->second)
                    admit({si, head, std::vector<std::size_t>(b.begin(), b.end())});
            } while (advance(digit, radix));
        }
    }

    std::sort(admitted.begin(), admitted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<PredicateSymbol> preds;
    for (const auto& r : basis)
        preds.push_back({r.predicate, r.rank()});
    std::vector<Clause> clauses;
    std::vector<CanonKey> keys;
    for (auto& [key, clause] : admitted) {
        keys.push_back(key);
        clauses.push_back(std::move(clause));
    }
    st.admitted = clauses.size();
    hyp.digest = key_digest(keys, preds);
    const std::string start = basis.front().predicate;
    hyp.system = ClauseSystem(std::move(preds), std::move(clauses), start);
    st.seconds = seconds_since(t0);
    return hyp;
}

Learner::Learner(ParamTuple params, Oracle& oracle) : params_(params), oracle_(oracle) {
    basis_.push_back(empty_representative());
}

std::string Learner::start_predicate() const { return basis_.front().predicate; }

const StageRecord& Learner::run_stage(const LabeledGraph& g) {
    const auto t0 = Clock::now();
    StageRecord rec;
    rec.stage = records_.size() + 1;
    check_degree(g, params_.delta, rec.stage - 1);

    CountingOracle counted(oracle_);
    const bool first = records_.empty();
    if (first) {
        current_ = construct_gamma(basis_, residuals_, counted, params_, alphabets_);
        rec.hat = current_.stats;
    } else {
        rec.hat_cached = true;
    }

    auto key = canonical_key(g);
    const bool fresh = std::find(sample_keys_.begin(), sample_keys_.end(), key) == sample_keys_.end();
    if (fresh) {
        sample_.push_back(g);
        sample_keys_.push_back(std::move(key));
    }
    sample_vertices_ += g.vertex_count();

    bool covered = true;
    for (const auto& x : sample_) {
        ++rec.membership_calls;
        if (!member(current_.system, current_.system.start(), x, params_)) {
            covered = false;
            break;
        }
    }
    rec.covered_before = covered;
    rec.update = !covered;
    if (rec.update)
        basis_ = make_basis(sample_, params_.w, params_.delta);
    if (fresh) {
        residuals_ = collapse_reps(sample_, params_.w, params_.delta);
        alphabets_ = alphabets_of(sample_);
    }

    if (rec.update || fresh || first) {
        current_ = construct_gamma(basis_, residuals_, counted, params_, alphabets_);
        rec.gamma = current_.stats;
    } else {
        rec.gamma_cached = true;
    }

    rec.sample_graphs = sample_.size();
    rec.sample_vertices = sample_vertices_;
    rec.basis_size = basis_.size();
    rec.residual_size = residuals_.size();
    rec.queries = counted.calls();
    rec.clauses = current_.system.clauses().size();
    rec.digest = current_.digest;
    rec.seconds = seconds_since(t0);
    records_.push_back(std::move(rec));
    return records_.back();
}

} // namespace ficsl
