"""Learning bounded graph grammars from positive examples and membership queries.

Graphs, grammars and parameter tuples are plain dicts in the JSON formats
used by the ``ficsl`` command-line tool.
"""

import json as _json

from . import _core
from ._core import Error, FormatError

__all__ = [
    "Error",
    "FormatError",
    "canonical_key",
    "isomorphic",
    "compose",
    "enumerate_brep",
    "check",
    "member",
    "generate_language",
    "learn",
]


def _dump(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def canonical_key(graph):
    """Hex digest of the isomorphism class of a graph with interface."""
    return _core.canonical_key(_dump(graph))


def isomorphic(a, b):
    return _core.isomorphic(_dump(a), _dump(b))


def compose(a, b):
    """Glue two graphs along their interfaces; None when undefined."""
    out = _core.compose(_dump(a), _dump(b))
    return None if out is None else _json.loads(out)


def enumerate_brep(sample, w, delta):
    """Boundary representatives of a list of closed graphs, ranks up to w."""
    return _json.loads(_core.enumerate_brep(_dump(sample), w, delta))


def check(grammar, params):
    """Bound violations of a grammar as readable strings; empty when bounded."""
    return _core.check(_dump(grammar), _dump(params))


def member(grammar, graph, params):
    return _core.member(_dump(grammar), _dump(graph), _dump(params))


def generate_language(grammar, params, cap):
    """Members with at most cap vertices, one per isomorphism class."""
    return _json.loads(_core.generate_language(_dump(grammar), _dump(params), cap))


def learn(target, params, cap=6, stages=0, check_cap=6, seed=None):
    """Run the learner against a simulated teacher for target.

    stages=0 runs twice the presentation length. Returns a dict with
    converged_at, the final hypothesis grammar and per-stage records.
    """
    return _json.loads(_core.learn(_dump(target), _dump(params), cap, stages, check_cap, seed))
