#include "doctest.h"

#include "ficsl/error.hpp"
#include "ficsl/graph_enum.hpp"
#include "ficsl/membership.hpp"
#include "ficsl/teacher.hpp"
#include "fixtures.hpp"
#include "random_graphs.hpp"

using namespace ficsl;

TEST_CASE("path language up to five vertices is the paths on 2..5 vertices") {
    auto path = testing::grammar("path");
    auto params = testing::params("path");
    auto lang = generate_language(path, params, 5);
    REQUIRE(lang.size() == 4);
    for (std::size_t i = 0; i < lang.size(); ++i)
        CHECK(canonical_key(lang[i]) == canonical_key(testing::path_graph(i + 2)));
    CHECK(generate_language(path, params, 1).empty());
}

TEST_CASE("single fact language") {
    auto fact = testing::grammar("single_fact");
    auto params = testing::params("single_fact");
    auto lang = generate_language(fact, params, 6);
    REQUIRE(lang.size() == 1);
    CHECK(canonical_key(lang[0]) == canonical_key(fact.clauses()[0].head.pattern.base.graph));
    CHECK(generate_language(fact, params, 2).empty());
}

TEST_CASE("generation equals exhaustive filtering by membership") {
    for (const char* name : {"path", "single_fact", "twin"}) {
        auto gamma = testing::grammar(name);
        auto params = testing::params(name);
        auto vl = std::string(name) == "path" ? testing::labels({"a"}) : testing::labels({"a", "b"});
        std::vector<CanonKey> want;
        for (const auto& g : enumerate_graphs(5, vl, testing::labels({"e"}), params.delta))
            if (member(gamma, gamma.start(), g, params))
                want.push_back(canonical_key(g));
        std::vector<CanonKey> got;
        for (const auto& g : generate_language(gamma, params, 5))
            got.push_back(canonical_key(g));
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
}

TEST_CASE("non-growing recursive clause is rejected as unsupported") {
    Clause loop;
    loop.head.predicate = "q";
    auto& h = loop.head.pattern;
    h.base.graph.add_vertex(Label::of("a"));
    h.base.interface = {0};
    h.hyperedges.push_back({Variable::of("x"), {0}});
    loop.body.push_back({"q", h});
    Clause fact;
    fact.head.predicate = "q";
    fact.head.pattern.base = h.base;
    ClauseSystem gamma({{"p", 0}, {"q", 1}}, {loop, fact}, "p");
    CHECK_THROWS_AS(generate_language(gamma, ParamTuple{2, 1, 1, 1, 1, 2, 1}, 4), GrammarError);
}

TEST_CASE("teacher caches by isomorphism class") {
    Teacher t(testing::grammar("path"), testing::params("path"));
    std::mt19937_64 rng(1);
    auto p3 = testing::path_graph(3);
    CHECK(t.answer_query(p3));
    CHECK(t.answer_query(testing::shuffled(closed(p3), rng).graph));
    CHECK(t.queries_total() == 2);
    CHECK(t.queries_unique() == 1);
    CHECK_FALSE(t.answer_query(testing::cycle_graph(4)));
    LabeledGraph claw;
    for (int i = 0; i < 4; ++i)
        claw.add_vertex(Label::of("a"));
    for (VertexId i = 1; i < 4; ++i)
        claw.add_edge(0, i, Label::of("e"));
    CHECK_FALSE(t.answer_query(claw));
    CHECK(t.verify_cache(100) == 0);
}

TEST_CASE("presentation cycles and every emission is positive") {
    auto path = testing::grammar("path");
    auto params = testing::params("path");
    Teacher t(path, params);
    Presentation pres(generate_language(path, params, 4));
    CHECK(canonical_key(pres.next()) == canonical_key(testing::path_graph(2)));
    CHECK(canonical_key(pres.next()) == canonical_key(testing::path_graph(3)));
    Presentation again(generate_language(path, params, 4));
    auto first = canonical_key(again.next());
    for (std::size_t i = 1; i < again.cycle_length(); ++i)
        CHECK(t.answer_query(again.next()));
    CHECK(canonical_key(again.next()) == first);

    Presentation shuffled(generate_language(path, params, 6), 42);
    Presentation shuffled2(generate_language(path, params, 6), 42);
    for (int i = 0; i < 10; ++i)
        CHECK(canonical_key(shuffled.next()) == canonical_key(shuffled2.next()));
    CHECK_THROWS_AS(Presentation({}), std::invalid_argument);

    auto fact = testing::grammar("single_fact");
    Presentation one(generate_language(fact, testing::params("single_fact"), 6));
    for (int i = 0; i < 3; ++i)
        CHECK(canonical_key(one.next()) == canonical_key(fact.clauses()[0].head.pattern.base.graph));
}
