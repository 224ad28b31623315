#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "ficsl/boundary.hpp"
#include "ficsl/error.hpp"
#include "ficsl/experiment.hpp"
#include "ficsl/grammar_io.hpp"
#include "ficsl/graph_io.hpp"
#include "ficsl/membership.hpp"
#include "ficsl/teacher.hpp"

namespace ficsl::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
    const char* v = std::getenv("FICSL_LOG_LEVEL");
    if (!v)
        return LogLevel::info;
    const std::string s(v);
    if (s == "quiet")
        return LogLevel::quiet;
    if (s == "debug")
        return LogLevel::debug;
    return LogLevel::info;
}

std::string default_out(const std::string& fallback) {
    const char* v = std::getenv("FICSL_OUT_DIR");
    return v && *v ? std::string(v) : fallback;
}

LabeledGraph closed_graph(const GraphWithInterface& g, const std::string& what) {
    if (!g.closed())
        throw FormatError(what + ": expected a closed graph (empty interface)");
    return g.graph;
}

LabeledGraph read_closed_graph(const std::string& path) {
    auto graphs = io::graphs_from_json(io::read_json(path));
    if (graphs.size() != 1)
        throw FormatError(path + ": expected exactly one graph, found " + std::to_string(graphs.size()));
    return closed_graph(graphs.front(), path);
}

/// Without a parameter file, membership only needs w to cover every irank
/// and no degree bound.
ParamTuple permissive_params(const ClauseSystem& gamma) {
    ParamTuple p;
    for (const auto& pred : gamma.predicates())
        p.w = std::max(p.w, pred.irank);
    p.delta = static_cast<std::size_t>(-1);
    return p;
}

std::string join(const std::vector<std::size_t>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i)
        s += (i ? "," : "") + std::to_string(xs[i]);
    return s + "]";
}

template <typename T>
std::vector<std::size_t> widen(const std::vector<T>& xs) {
    return {xs.begin(), xs.end()};
}

json stats_json(const GammaStats& s) {
    return {{"basis", s.basis_size},
            {"residuals", s.residual_size},
            {"shapes", s.shapes},
            {"fact_candidates", s.fact_candidates},
            {"nonfact_candidates", s.nonfact_candidates},
            {"table_queries", s.table_queries},
            {"fact_queries", s.fact_queries},
            {"nonfact_queries", s.nonfact_queries},
            {"admitted", s.admitted}};
}

/// Deterministic part of a stage record.
json stage_json(const StageRecord& r, std::size_t disagreements) {
    return {{"kind", "stage"},
            {"stage", r.stage},
            {"update", r.update},
            {"covered_before", r.covered_before},
            {"sample_graphs", r.sample_graphs},
            {"sample_vertices", r.sample_vertices},
            {"F", r.basis_size},
            {"R", r.residual_size},
            {"queries", r.queries},
            {"membership_calls", r.membership_calls},
            {"hat", r.hat_cached ? json(nullptr) : stats_json(r.hat)},
            {"gamma", r.gamma_cached ? json(nullptr) : stats_json(r.gamma)},
            {"clauses", r.clauses},
            {"digest", r.digest},
            {"hypothesis", "hypotheses/" + r.digest + ".json"},
            {"disagreements", disagreements}};
}

// ---------------------------------------------------------------------------

int run_brep(const std::string& sample_path, std::size_t w, std::size_t delta, std::ostream& out) {
    std::vector<LabeledGraph> sample;
    for (const auto& g : io::graphs_from_json(io::read_json(sample_path)))
        sample.push_back(closed_graph(g, sample_path));
    std::map<std::size_t, std::size_t> per_rank;
    std::size_t total = 0;
    for_each_brep(sample, w, delta, [&](BoundarySpec&& s, GraphWithInterface&& f) {
        out << "source=" << s.source << " beta=" << join(widen(s.beta)) << " eb=" << join(s.boundary_edges)
            << " key=" << canonical_key(f).hex() << " vertices=" << f.graph.vertex_count()
            << " edges=" << f.graph.edge_count() << '\n';
        ++per_rank[s.rank()];
        ++total;
    });
    for (std::size_t r = 0; r <= w; ++r)
        out << "rank " << r << ": " << per_rank[r] << '\n';
    out << "total: " << total << '\n';
    return ok;
}

int run_check(const std::string& grammar_path, const std::string& params_path, std::ostream& out) {
    auto gamma = io::read_grammar(grammar_path);
    auto params = io::read_params(params_path);
    auto violations = check_bounded(gamma, params);
    for (const auto& v : violations)
        out << v.describe() << '\n';
    out << (violations.empty() ? "bounded: yes" : "bounded: no") << '\n';
    out << "degree-safe: " << (check_degree_safe(gamma) ? "yes" : "no") << '\n';
    return ok;
}

int run_member(const std::string& grammar_path, const std::string& graph_path, const std::string& params_path,
               bool tree, std::ostream& out) {
    auto gamma = io::read_grammar(grammar_path);
    auto g = read_closed_graph(graph_path);
    auto params = params_path.empty() ? permissive_params(gamma) : io::read_params(params_path);
    auto r = member_detail(gamma, gamma.start(), g, params, tree);
    out << (r.member ? "YES" : "NO") << '\n';
    if (tree && r.tree)
        out << format_tree(gamma, *r.tree);
    return ok;
}

int run_generate(const std::string& grammar_path, const std::string& params_path, std::size_t cap,
                 const std::string& out_dir, std::ostream& out) {
    auto gamma = io::read_grammar(grammar_path);
    auto params = params_path.empty() ? permissive_params(gamma) : io::read_params(params_path);
    auto lang = generate_language(gamma, params, cap);
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < lang.size(); ++i) {
        std::ostringstream name;
        name << "member_" << std::setw(4) << std::setfill('0') << i << ".json";
        io::write_json(fs::path(out_dir) / name.str(), io::to_json(lang[i]));
    }
    out << "generated " << lang.size() << " graphs with at most " << cap << " vertices into " << out_dir << '\n';
    return ok;
}

struct LearnConfig {
    std::string target;
    std::string params;
    std::optional<std::size_t> cap, stages, check_cap;
    std::optional<std::uint64_t> seed;
    std::string out;
};

json trace_header(const ClauseSystem& target, const ParamTuple& params, const RunConfig& rc) {
    return {{"kind", "config"},
            {"target", io::to_json(target)},
            {"params", io::to_json(params)},
            {"cap", rc.cap},
            {"stages", rc.stages},
            {"check_cap", rc.check_cap},
            {"seed", rc.seed ? json(*rc.seed) : json(nullptr)}};
}

json summary_json(const LearningRun& run) {
    std::size_t queries = 0, candidates = 0, updates = 0;
    for (const auto& r : run.records) {
        queries += r.queries;
        candidates += r.hat.candidates() + r.gamma.candidates();
        updates += r.update;
    }
    return {{"stages", run.records.size()},
            {"presentation_length", run.presentation_length},
            {"updates", updates},
            {"converged_at", run.converged_at ? json(*run.converged_at) : json(nullptr)},
            {"final_digest", run.records.empty() ? std::string() : run.records.back().digest},
            {"final_clauses", run.final_hypothesis.clauses().size()},
            {"final_disagreements", run.disagreements.empty() ? 0 : run.disagreements.back()},
            {"learner_queries", queries},
            {"candidates", candidates},
            {"teacher_queries_unique", run.teacher_queries_unique}};
}

LearningRun learn_and_record(const ClauseSystem& target, const ParamTuple& params, const RunConfig& rc,
                             const std::optional<fs::path>& out_dir, std::ostream& err, std::vector<json>& lines) {
    const auto level = log_level();
    if (out_dir)
        fs::create_directories(*out_dir / "hypotheses");
    lines.push_back(trace_header(target, params, rc));
    std::vector<std::size_t> disagreements;
    auto hook = [&](const Learner& learner, const StageRecord& r) {
        if (out_dir) {
            auto file = *out_dir / "hypotheses" / (r.digest + ".json");
            if (!fs::exists(file))
                io::write_json(file, io::to_json(learner.hypothesis().system));
        }
        if (level != LogLevel::quiet)
            err << "stage " << r.stage << (r.update ? " update" : "") << " |F|=" << r.basis_size
                << " |R|=" << r.residual_size << " clauses=" << r.clauses << " queries=" << r.queries << '\n';
    };
    auto run = run_learning(target, params, rc, hook);
    for (std::size_t i = 0; i < run.records.size(); ++i)
        lines.push_back(stage_json(run.records[i], run.disagreements[i]));
    return run;
}

int run_learn(LearnConfig cfg, const std::string& config_path, std::ostream& out, std::ostream& err) {
    if (!config_path.empty()) {
        auto j = io::read_json(config_path);
        auto take_str = [&](const char* k, std::string& dst) {
            if (dst.empty() && j.contains(k))
                dst = j.at(k).get<std::string>();
        };
        auto take_num = [&](const char* k, auto& dst) {
            using T = typename std::remove_reference_t<decltype(dst)>::value_type;
            if (!dst && j.contains(k)) {
                if (!j.at(k).is_number_unsigned())
                    throw FormatError(config_path + ": field '" + k + "' must be a non-negative integer");
                dst = j.at(k).get<T>();
            }
        };
        take_str("target", cfg.target);
        take_str("params", cfg.params);
        take_str("out", cfg.out);
        take_num("cap", cfg.cap);
        take_num("stages", cfg.stages);
        take_num("check_cap", cfg.check_cap);
        take_num("seed", cfg.seed);
    }
    if (cfg.target.empty() || cfg.params.empty())
        throw FormatError("learn: --target and --params are required (on the command line or in --config)");
    auto target = io::read_grammar(cfg.target);
    auto pj = io::read_json(cfg.params);
    auto params = io::params_from_json(pj);
    auto from_params = [&](const char* k, std::optional<std::size_t>& dst) {
        if (!dst && pj.contains(k))
            dst = pj.at(k).get<std::size_t>();
    };
    from_params("cap", cfg.cap);
    from_params("stages", cfg.stages);
    const bool explicit_check = cfg.check_cap.has_value();
    from_params("check_cap", cfg.check_cap);

    RunConfig rc;
    rc.cap = cfg.cap.value_or(6);
    rc.check_cap = cfg.check_cap.value_or(6);
    // A check cap taken from the parameter file follows a smaller --cap.
    if (!explicit_check)
        rc.check_cap = std::min(rc.check_cap, rc.cap);
    rc.stages = cfg.stages.value_or(0);
    rc.seed = cfg.seed;
    if (rc.check_cap > rc.cap)
        throw FormatError("learn: check_cap " + std::to_string(rc.check_cap) + " exceeds cap " +
                          std::to_string(rc.cap));

    const fs::path out_dir = cfg.out.empty() ? fs::path(default_out("learn-out")) : fs::path(cfg.out);
    std::vector<json> lines;
    auto run = learn_and_record(target, params, rc, out_dir, err, lines);
    {
        std::ofstream trace(out_dir / "trace.jsonl");
        if (!trace)
            throw FormatError("cannot write " + (out_dir / "trace.jsonl").string());
        for (const auto& l : lines)
            trace << l.dump() << '\n';
    }
    auto summary = summary_json(run);
    json report = summary;
    report["per_stage_disagreements"] = run.disagreements;
    io::write_json(out_dir / "report.json", report);
    json timings = json::array();
    for (const auto& r : run.records)
        timings.push_back({{"stage", r.stage},
                           {"sample_vertices", r.sample_vertices},
                           {"seconds", r.seconds},
                           {"hat_seconds", r.hat.seconds},
                           {"gamma_seconds", r.gamma.seconds}});
    io::write_json(out_dir / "timings.json", timings);
    out << json{{"summary", summary}}.dump() << '\n';
    return ok;
}

int run_replay(const std::string& trace_path, std::ostream& out, std::ostream& err) {
    std::ifstream in(trace_path);
    if (!in)
        throw FormatError("cannot read " + trace_path);
    std::vector<json> recorded;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            recorded.push_back(json::parse(line));
        } catch (const json::parse_error& e) {
            throw FormatError(trace_path + ": " + e.what());
        }
    }
    if (recorded.empty() || recorded.front().value("kind", "") != "config")
        throw FormatError(trace_path + ": first line must be the config record");
    const auto& h = recorded.front();
    auto target = io::grammar_from_json(h.at("target"));
    auto params = io::params_from_json(h.at("params"));
    RunConfig rc;
    rc.cap = h.at("cap").get<std::size_t>();
    rc.stages = h.at("stages").get<std::size_t>();
    rc.check_cap = h.at("check_cap").get<std::size_t>();
    if (!h.at("seed").is_null())
        rc.seed = h.at("seed").get<std::uint64_t>();

    std::vector<json> lines;
    std::ostringstream quiet;
    learn_and_record(target, params, rc, std::nullopt, quiet, lines);
    std::size_t mismatches = 0;
    const std::size_t n = std::max(lines.size(), recorded.size());
    for (std::size_t i = 1; i < n; ++i) {
        if (i >= lines.size() || i >= recorded.size() || lines[i] != recorded[i]) {
            ++mismatches;
            err << "stage " << i << " differs from the recording\n";
        }
    }
    out << "replayed " << lines.size() - 1 << " stages: " << (mismatches ? "MISMATCH" : "identical") << '\n';
    return mismatches ? failure : ok;
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Learn and evaluate fixed-interface graph grammars", "ficsl"};
    app.require_subcommand(1);

    std::string sample, grammar, graph, params, out_dir, trace, config;
    std::size_t w = 0, delta = 0, cap = 0;
    bool tree = false;
    LearnConfig lc;

    auto* brep = app.add_subcommand("brep", "List boundary representations of a sample");
    brep->add_option("--sample", sample, "Graph file (one graph or a list)")->required();
    brep->add_option("--w", w, "Maximum interface rank")->required();
    brep->add_option("--delta", delta, "Degree bound")->required();

    auto* check = app.add_subcommand("check", "Check a grammar against parameter bounds");
    check->add_option("--grammar", grammar)->required();
    check->add_option("--params", params)->required();

    auto* mem = app.add_subcommand("member", "Decide membership of a graph");
    mem->add_option("--grammar", grammar)->required();
    mem->add_option("--graph", graph)->required();
    mem->add_option("--params", params)->required();
    mem->add_flag("--tree", tree, "Print a derivation tree for members");

    auto* gen = app.add_subcommand("generate", "Write every member up to a vertex cap");
    gen->add_option("--grammar", grammar)->required();
    gen->add_option("--cap", cap)->required();
    gen->add_option("--out", out_dir, "Output directory (default $FICSL_OUT_DIR or ./generated)");
    gen->add_option("--params", params, "Parameter file supplying the degree bound");

    auto* orc = app.add_subcommand("oracle", "Answer one membership query");
    orc->add_option("--grammar", grammar)->required();
    orc->add_option("--graph", graph)->required();
    orc->add_option("--params", params);

    auto* learn = app.add_subcommand("learn", "Run the learner against a simulated teacher");
    learn->add_option("--target", lc.target, "Target grammar file");
    learn->add_option("--params", lc.params, "Parameter file; may also hold cap, stages and check_cap");
    learn->add_option("--cap", lc.cap, "Presentation size cap");
    learn->add_option("--stages", lc.stages, "Number of stages (default twice the presentation length)");
    learn->add_option("--check-cap", lc.check_cap, "Vertex bound for language comparison");
    learn->add_option("--seed", lc.seed, "Shuffle the presentation with this seed");
    learn->add_option("--out", lc.out, "Output directory (default $FICSL_OUT_DIR or ./learn-out)");
    learn->add_option("--config", config, "JSON file with the same keys; flags win");
    learn->add_option("--replay", trace, "Re-run a recorded trace and compare");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*brep)
            return run_brep(sample, w, delta, out);
        if (*check)
            return run_check(grammar, params, out);
        if (*mem)
            return run_member(grammar, graph, params, tree, out);
        if (*gen)
            return run_generate(grammar, params, cap, out_dir.empty() ? default_out("generated") : out_dir, out);
        if (*orc)
            return run_member(grammar, graph, params, false, out);
        if (*learn) {
            if (!trace.empty())
                return run_replay(trace, out, err);
            if (lc.target.empty() && config.empty()) {
                err << "learn: --target is required\n" << learn->help();
                return usage;
            }
            return run_learn(lc, config, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return dispatch(args, out, err);
}

} // namespace ficsl::cli
