#include "doctest.h"

#include <random>
#include <set>

#include "brute.hpp"
#include "ficsl/boundary.hpp"
#include "ficsl/canonical.hpp"
#include "ficsl/error.hpp"
#include "random_graphs.hpp"

using namespace ficsl;

namespace {

LabeledGraph edge_graph() {
    LabeledGraph g;
    g.add_vertex(Label::of("a"));
    g.add_vertex(Label::of("a"));
    g.add_edge(0, 1, Label::of("e"));
    return g;
}

} // namespace

TEST_CASE("validate_spec") {
    auto g = edge_graph();
    std::vector<VertexId> none, u{0}, uu{0, 0}, v{1}, bad{5};
    std::vector<std::size_t> no_edges, uv{0}, dup{0, 0}, missing{3};
    CHECK(validate_spec(g, none, no_edges));
    CHECK(validate_spec(g, u, uv));
    CHECK_FALSE(validate_spec(g, none, uv));
    CHECK_FALSE(validate_spec(g, uu, no_edges));
    CHECK_FALSE(validate_spec(g, bad, no_edges));
    CHECK_FALSE(validate_spec(g, u, dup));
    CHECK_FALSE(validate_spec(g, v, missing));

    LabeledGraph p3 = edge_graph();
    p3.add_vertex(Label::of("a"));
    p3.add_edge(1, 2, Label::of("e"));
    std::vector<std::size_t> far{1};
    CHECK_FALSE(validate_spec(p3, u, far));
}

TEST_CASE("build_fragment on a single edge") {
    auto g = edge_graph();
    auto empty = build_fragment(g, {0, {}, {}});
    CHECK(empty.graph.vertex_count() == 0);
    CHECK(empty.rank() == 0);

    auto whole = build_fragment(g, {0, {0}, {0}});
    CHECK(whole.graph.vertex_count() == 2);
    CHECK(whole.graph.edge_count() == 1);
    CHECK(whole.interface == std::vector<VertexId>{0});

    auto lone = build_fragment(g, {0, {0}, {}});
    CHECK(lone.graph.vertex_count() == 1);
    CHECK(lone.graph.edge_count() == 0);
    CHECK_THROWS_AS(build_fragment(g, {0, {}, {0}}), StructureError);
}

TEST_CASE("enumerate_brep on tiny samples") {
    std::vector<LabeledGraph> sample{edge_graph()};
    auto reps = enumerate_brep(sample, 1, 1);
    REQUIRE(reps.size() == 5);
    CHECK(reps[0].spec.beta.empty());
    CHECK(reps[1].spec == BoundarySpec{0, {0}, {}});
    CHECK(reps[2].spec == BoundarySpec{0, {0}, {0}});
    CHECK(reps[3].spec == BoundarySpec{0, {1}, {}});
    CHECK(reps[4].spec == BoundarySpec{0, {1}, {0}});

    LabeledGraph dot;
    dot.add_vertex(Label::of("a"));
    std::vector<LabeledGraph> one{dot};
    CHECK(enumerate_brep(one, 0, 0).size() == 1);
    CHECK_THROWS_AS(enumerate_brep(sample, 1, 0), DegreeBoundError);
}

TEST_CASE("enumerate_brep equals the naive enumerator with fixpoint fragments") {
    std::mt19937_64 rng(7);
    auto vl = testing::labels({"a", "b"});
    auto el = testing::labels({"e"});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<LabeledGraph> sample;
        for (int k = 0; k < 2; ++k)
            sample.push_back(testing::random_connected(rng, 1 + rng() % 7, 3, vl, el));
        const std::size_t w = rng() % 3;
        std::set<brute::SpecTriple> want;
        for (std::size_t i = 0; i < sample.size(); ++i)
            for (auto& t : brute::all_specs(sample[i], i, w))
                want.insert(t);
        std::set<brute::SpecTriple> got;
        enumerate_brep(sample, w, 3);
        for (const auto& rep : enumerate_brep(sample, w, 3)) {
            got.emplace(rep.spec.source, rep.spec.beta, rep.spec.boundary_edges);
            auto ref = brute::fragment(sample[rep.spec.source], rep.spec.beta, rep.spec.boundary_edges);
            CHECK(canonical_key(ref) == canonical_key(rep.fragment));
            CHECK(rep.fragment.interface.size() == rep.spec.beta.size());
        }
        CHECK(got == want);
    }
}

TEST_CASE("count bound n^r 2^(r delta) holds per rank and saturates") {
    std::mt19937_64 rng(8);
    auto vl = testing::labels({"a"});
    auto el = testing::labels({"e"});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<LabeledGraph> sample{testing::random_connected(rng, 2 + rng() % 8, 3, vl, el)};
        std::vector<std::size_t> per_rank(3, 0);
        for (const auto& rep : enumerate_brep(sample, 2, 3))
            ++per_rank[rep.rank()];
        for (std::size_t r = 0; r < 3; ++r)
            CHECK(per_rank[r] <= brep_count_bound(sample[0].vertex_count(), r, 3));
    }
    CHECK(brep_count_bound(3, 0, 5) == 1);
    CHECK(brep_count_bound(3, 2, 1) == 36);
    CHECK(brep_count_bound(1000, 10, 40) == std::numeric_limits<std::size_t>::max());
}

TEST_CASE("monotone in the sample") {
    std::mt19937_64 rng(9);
    auto vl = testing::labels({"a", "b"});
    auto el = testing::labels({"e"});
    std::vector<LabeledGraph> d{testing::random_connected(rng, 5, 3, vl, el)};
    auto small = enumerate_brep(d, 2, 3);
    d.push_back(testing::random_connected(rng, 4, 3, vl, el));
    auto big = enumerate_brep(d, 2, 3);
    std::set<BoundarySpec> bigset;
    for (auto& r : big)
        bigset.insert(r.spec);
    for (auto& r : small)
        CHECK(bigset.count(r.spec) == 1);
}
