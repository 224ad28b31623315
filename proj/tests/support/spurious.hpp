#pragma once

#include <optional>

#include "ficsl/learner.hpp"
#include "fixtures.hpp"

namespace ficsl::testing {

/// A clause over the path grammar's basis for the sample {a-a} that is not
/// sound: start <- x on the middle vertex of a 3-path. Binding x to the
/// pendant-edge fragment is positive in the observation table (it composes
/// to a 3-path) but the realized head is a claw.
struct SpuriousCase {
    ParamTuple params;
    std::vector<LabeledGraph> sample;
    std::vector<Representative> basis;
    std::vector<Representative> residuals;
    std::vector<HeadShape> shapes;
    ClauseCandidate candidate;
    std::size_t witness = 0;  ///< index into residuals
};

inline SpuriousCase spurious_case() {
    SpuriousCase c;
    c.params = params("path");
    c.sample = {path_graph(2)};
    c.basis = make_basis(c.sample, c.params.w, c.params.delta);
    c.residuals = collapse_reps(c.sample, c.params.w, c.params.delta);

    auto is_pendant = [](const Representative& r) {
        return r.rank() == 1 && r.fragment.graph.vertex_count() == 2 && r.fragment.graph.edge_count() == 1;
    };
    std::size_t body = 0;
    for (std::size_t i = 0; i < c.basis.size(); ++i)
        if (is_pendant(c.basis[i]))
            body = i;
    for (std::size_t i = 0; i < c.residuals.size(); ++i)
        if (is_pendant(c.residuals[i]))
            c.witness = i;

    GraphPattern h;
    const Label a = Label::of("a"), e = Label::of("e");
    auto& g = h.base.graph;
    const VertexId u = g.add_vertex(a), mid = g.add_vertex(a), v = g.add_vertex(a);
    g.add_edge(u, mid, e);
    g.add_edge(mid, v, e);
    h.hyperedges.push_back({Variable::of("x1"), {mid}});
    c.shapes = {head_shape_of(std::move(h))};
    c.candidate = {0, 0, {body}};
    return c;
}

} // namespace ficsl::testing
