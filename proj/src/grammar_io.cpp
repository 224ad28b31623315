#include "ficsl/grammar_io.hpp"

#include "ficsl/error.hpp"

namespace ficsl::io {

namespace {

const json& member(const json& j, const char* name, const std::string& where) {
    if (!j.is_object())
        throw FormatError(where + ": expected an object");
    auto it = j.find(name);
    if (it == j.end())
        throw FormatError(where + ": missing field '" + name + "'");
    return *it;
}

std::string text(const json& j, const char* name, const std::string& where) {
    const auto& f = member(j, name, where);
    if (!f.is_string())
        throw FormatError(where + ": field '" + name + "' must be a string");
    return f.get<std::string>();
}

std::size_t count(const json& j, const char* name, const std::string& where) {
    const auto& f = member(j, name, where);
    if (!f.is_number_integer() || f.get<std::int64_t>() < 0)
        throw FormatError(where + ": field '" + name + "' must be a non-negative integer");
    return f.get<std::size_t>();
}

Atom atom(const json& j, const std::string& where) {
    Atom a;
    a.predicate = text(j, "predicate", where);
    try {
        a.pattern = pattern_from_json(member(j, "pattern", where));
    } catch (const FormatError& e) {
        throw FormatError(where + ".pattern: " + e.what());
    }
    return a;
}

json atom_json(const Atom& a) { return {{"predicate", a.predicate}, {"pattern", to_json(a.pattern)}}; }

} // namespace

ClauseSystem grammar_from_json(const json& j) {
    std::vector<PredicateSymbol> preds;
    const auto& pj = member(j, "predicates", "grammar");
    if (!pj.is_array())
        throw FormatError("grammar: 'predicates' must be an array");
    for (std::size_t i = 0; i < pj.size(); ++i) {
        const std::string where = "predicates[" + std::to_string(i) + "]";
        preds.push_back({text(pj[i], "name", where), count(pj[i], "irank", where)});
    }
    std::vector<Clause> clauses;
    const auto& cj = member(j, "clauses", "grammar");
    if (!cj.is_array())
        throw FormatError("grammar: 'clauses' must be an array");
    for (std::size_t i = 0; i < cj.size(); ++i) {
        const std::string where = "clauses[" + std::to_string(i) + "]";
        Clause c;
        c.head = atom(member(cj[i], "head", where), where + ".head");
        if (auto it = cj[i].find("body"); it != cj[i].end()) {
            if (!it->is_array())
                throw FormatError(where + ": 'body' must be an array");
            for (std::size_t k = 0; k < it->size(); ++k)
                c.body.push_back(atom((*it)[k], where + ".body[" + std::to_string(k) + "]"));
        }
        clauses.push_back(std::move(c));
    }
    return ClauseSystem(std::move(preds), std::move(clauses), text(j, "start", "grammar"));
}

json to_json(const ClauseSystem& gamma) {
    json preds = json::array();
    for (const auto& p : gamma.predicates())
        preds.push_back({{"name", p.name}, {"irank", p.irank}});
    json clauses = json::array();
    for (const auto& c : gamma.clauses()) {
        json body = json::array();
        for (const auto& a : c.body)
            body.push_back(atom_json(a));
        clauses.push_back({{"head", atom_json(c.head)}, {"body", std::move(body)}});
    }
    return {{"start", gamma.start()}, {"predicates", std::move(preds)}, {"clauses", std::move(clauses)}};
}

ClauseSystem read_grammar(const std::filesystem::path& path) { return grammar_from_json(read_json(path)); }

ParamTuple params_from_json(const json& j) {
    ParamTuple p;
    p.m = count(j, "m", "params");
    p.s = count(j, "s", "params");
    p.t = count(j, "t", "params");
    p.w = count(j, "w", "params");
    p.d = count(j, "d", "params");
    p.delta = count(j, "delta", "params");
    p.h_max = j.contains("h_max") ? count(j, "h_max", "params") : 0;
    return p;
}

json to_json(const ParamTuple& p) {
    return {{"m", p.m}, {"s", p.s}, {"t", p.t}, {"w", p.w}, {"d", p.d}, {"delta", p.delta}, {"h_max", p.h_max}};
}

ParamTuple read_params(const std::filesystem::path& path) { return params_from_json(read_json(path)); }

} // namespace ficsl::io
