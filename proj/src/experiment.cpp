#include "ficsl/experiment.hpp"

#include <chrono>
#include <map>
#include <set>

#include "ficsl/graph_enum.hpp"
#include "ficsl/membership.hpp"

namespace ficsl {

Alphabets grammar_alphabets(const ClauseSystem& gamma) {
    std::set<std::string> vs, es;
    auto scan = [&](const GraphPattern& p) {
        for (auto l : p.base.graph.vertex_labels())
            vs.insert(l.name());
        for (const auto& e : p.base.graph.edges())
            es.insert(e.label.name());
    };
    for (const auto& c : gamma.clauses()) {
        scan(c.head.pattern);
        for (const auto& a : c.body)
            scan(a.pattern);
    }
    Alphabets out;
    for (const auto& n : vs)
        out.vertex.push_back(Label::of(n));
    for (const auto& n : es)
        out.edge.push_back(Label::of(n));
    return out;
}

std::vector<LabeledGraph> language_disagreements(const ClauseSystem& a, const std::string& start_a,
                                                 const ClauseSystem& b, const std::string& start_b,
                                                 const ParamTuple& params, const Alphabets& alphabets,
                                                 std::size_t cap) {
    std::vector<LabeledGraph> out;
    for (auto& g : enumerate_graphs(cap, alphabets.vertex, alphabets.edge, params.delta))
        if (member(a, start_a, g, params) != member(b, start_b, g, params))
            out.push_back(std::move(g));
    return out;
}

std::optional<std::size_t> convergence_stage(const std::vector<StageRecord>& records,
                                             const std::vector<std::size_t>& disagreements) {
    std::optional<std::size_t> out;
    for (std::size_t i = records.size(); i-- > 0;) {
        const bool stable = !records[i].update && disagreements[i] == 0 &&
                            (i + 1 == records.size() || records[i].digest == records[i + 1].digest);
        if (!stable)
            break;
        out = i + 1;
    }
    return out;
}

LearningRun run_learning(const ClauseSystem& target, const ParamTuple& params, const RunConfig& config,
                         const StageHook& on_stage) {
    const auto t0 = std::chrono::steady_clock::now();
    LearningRun run;
    Teacher teacher(target, params);
    Presentation pres(generate_language(target, params, config.cap), config.seed);
    run.presentation_length = pres.cycle_length();
    const std::size_t stages = config.stages ? config.stages : 2 * pres.cycle_length();
    const auto alphabets = grammar_alphabets(target);

    Learner learner(params, teacher);
    std::map<std::string, std::size_t> checked;
    for (std::size_t n = 0; n < stages; ++n) {
        const auto& rec = learner.run_stage(pres.next());
        auto it = checked.find(rec.digest);
        if (it == checked.end()) {
            const auto& hyp = learner.hypothesis().system;
            auto bad = language_disagreements(hyp, hyp.start(), target, target.start(), params, alphabets,
                                              config.check_cap);
            it = checked.emplace(rec.digest, bad.size()).first;
        }
        run.disagreements.push_back(it->second);
        if (on_stage)
            on_stage(learner, rec);
    }
    run.records = learner.records();
    run.converged_at = convergence_stage(run.records, run.disagreements);
    run.final_hypothesis = learner.hypothesis().system;
    run.teacher_queries_total = teacher.queries_total();
    run.teacher_queries_unique = teacher.queries_unique();
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

} // namespace ficsl
