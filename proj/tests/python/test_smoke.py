import json
import pathlib

import pytest

import ficsl

GRAMMARS = pathlib.Path(__file__).resolve().parents[2] / "grammars"


def load(name):
    return json.loads((GRAMMARS / name).read_text())


def path_graph(n, interface=()):
    return {
        "vertices": [{"id": i, "label": "a"} for i in range(n)],
        "edges": [{"u": i, "v": i + 1, "label": "e"} for i in range(n - 1)],
        "interface": list(interface),
    }


def test_canonical_key_ignores_vertex_order():
    g = path_graph(4)
    h = dict(g, vertices=list(reversed(g["vertices"])))
    assert ficsl.canonical_key(g) == ficsl.canonical_key(h)
    assert ficsl.isomorphic(g, h)
    assert ficsl.canonical_key(path_graph(4, [0])) != ficsl.canonical_key(path_graph(4, [1]))


def test_compose_glues_along_interfaces():
    glued = ficsl.compose(path_graph(2, [1]), path_graph(2, [0]))
    assert glued is not None
    assert ficsl.isomorphic(glued, path_graph(3))
    assert ficsl.compose(path_graph(2, [1]), path_graph(2, [0, 1])) is None


def test_brep_counts_on_a_path():
    reps = ficsl.enumerate_brep([path_graph(3)], 1, 2)
    assert len(reps) == 9
    assert sum(1 for r in reps if not r["beta"]) == 1


def test_membership_and_generation_agree():
    gamma, params = load("path.json"), load("path.params.json")
    assert ficsl.check(gamma, params) == []
    members = ficsl.generate_language(gamma, params, 5)
    assert len(members) == 4
    assert all(ficsl.member(gamma, g, params) for g in members)
    assert ficsl.member(gamma, path_graph(3), params)


def test_learn_converges_on_a_single_fact():
    result = ficsl.learn(load("single_fact.json"), load("single_fact.params.json"), cap=6, stages=3)
    assert result["converged_at"] is not None
    assert result["stages"][-1]["disagreements"] == 0


def test_malformed_input_raises():
    with pytest.raises(ValueError):
        ficsl.member(load("path.json"), {"vertices": [], "edges": [{"u": 0, "v": 1, "label": "e"}]},
                     load("path.params.json"))
