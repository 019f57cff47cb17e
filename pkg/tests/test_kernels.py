import os
import random
import subprocess
import sys

import pytest
from helpers import random_graph

from xgraph import kernels
from xgraph.graph import _vertex_cells

BACKENDS = kernels.backends()


def _canon_args(g):
    n = g.vertex_count
    colmat, wmat = [-1] * (n * n), [0] * (n * n)
    raw = []
    for e in g.edges:
        colmat[e.u * n + e.v], colmat[e.v * n + e.u] = e.color_at_u, e.color_at_v
        raw.append((e.u, e.v, e.color_at_u, e.color_at_v, 0))
    pos_cell, cell_of = _vertex_cells(n, raw)
    return n, colmat, wmat, pos_cell, cell_of, 3, 1


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
def test_backends_agree():
    rng = random.Random(41)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(200):
        n = rng.choice([2, 4, 5, 6, 7])
        g = random_graph(rng, n, 12)
        us, vs = [e.u for e in g.edges], [e.v for e in g.edges]
        for limit in (1, 3, 10**6):
            assert py.perfect_matchings(n, us, vs, limit) == cy.perfect_matchings(n, us, vs, limit)
        args = _canon_args(g)
        assert py.canonical_code(*args) == cy.canonical_code(*args)


def test_pure_python_forced_by_env():
    env = dict(os.environ, XGRAPH_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from xgraph import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_edge_cases():
    for impl in BACKENDS.values():
        assert impl.perfect_matchings(0, [], [], 5) == [()]
        assert impl.perfect_matchings(3, [0], [1], 5) == []
        assert impl.perfect_matchings(2, [0], [1], 0) == []
