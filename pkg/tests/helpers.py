"""Independent oracles and generators shared by the tests.

Nothing here calls the package's matching, canonical-form or search code;
each oracle recomputes its answer from first principles.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from xgraph import io
from xgraph.gaussian import GaussianRational, I, ONE
from xgraph.graph import ExperimentGraph, HalfColoredEdge

FIXTURES = Path(__file__).parent / "fixtures"
UNITS = (ONE, -ONE, I, -I)


def fixture(name: str) -> ExperimentGraph:
    return io.load(FIXTURES / f"{name}.json")


def graph(n, spec, base=0):
    """Build from ``(u, v, cu, cv[, w])`` tuples."""
    edges = []
    for t in spec:
        u, v, cu, cv = t[:4]
        w = t[4] if len(t) > 4 else ONE
        edges.append(HalfColoredEdge(u - base, v - base, cu, cv, w))
    return ExperimentGraph(n, tuple(edges), base)


# matchings -----------------------------------------------------------------------


def brute_matchings(g: ExperimentGraph) -> set[frozenset]:
    """Perfect matchings as sets of vertex pairs, by trying every edge subset."""
    n = g.vertex_count
    if n % 2:
        return set()
    out = set()
    for sub in itertools.combinations(g.edges, n // 2):
        covered = [x for e in sub for x in (e.u, e.v)]
        if len(set(covered)) == n:
            out.add(frozenset(e.pair for e in sub))
    return out


def brute_weight_table(g: ExperimentGraph) -> dict[tuple, tuple[GaussianRational, int]]:
    table: dict[tuple, list] = {}
    for m in brute_matchings(g):
        col = [None] * g.vertex_count
        w = ONE
        for p in m:
            e = g.edge(*p)
            col[e.u], col[e.v] = e.color_at_u, e.color_at_v
            w = w * e.weight
        slot = table.setdefault(tuple(col), [GaussianRational(0), 0])
        slot[0] = slot[0] + w
        slot[1] += 1
    return {k: (v[0], v[1]) for k, v in table.items()}


def brute_valid(g: ExperimentGraph):
    """(is_valid, mu, feasible mono colours) straight from the definition."""
    ok, mu, feas = True, 0, set()
    for col, (w, _) in brute_weight_table(g).items():
        mono = len(set(col)) == 1
        if mono:
            feas.add(col[0])
            mu += w == ONE
        if w != (ONE if mono else GaussianRational(0)):
            ok = False
    return ok, mu, feas


# isomorphism ---------------------------------------------------------------------


def brute_canonical(g: ExperimentGraph, with_weights=False):
    """Least edge list over all vertex and colour permutations."""
    n = g.vertex_count
    used = sorted({c for e in g.edges for c in (e.color_at_u, e.color_at_v)})
    best = None
    for perm in itertools.permutations(range(n)):
        for cperm in itertools.permutations(range(len(used))):
            cmap = {c: cperm[k] for k, c in enumerate(used)}
            rows = []
            for e in g.edges:
                a, b = perm[e.u], perm[e.v]
                ca, cb = cmap[e.color_at_u], cmap[e.color_at_v]
                if a > b:
                    a, b, ca, cb = b, a, cb, ca
                rows.append((a, b, ca, cb, e.weight.sort_key() if with_weights else None))
            rows.sort()
            if best is None or rows < best:
                best = rows
    return (n, tuple(best or ()))


# random graphs -------------------------------------------------------------------


def random_graph(rng: random.Random, n: int, max_edges: int, colors: int = 3, mono_p=0.7, weights=UNITS):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    m = rng.randint(0, min(max_edges, len(pairs)))
    chosen = rng.sample(pairs, m)
    edges = []
    for u, v in chosen:
        cu = rng.randrange(colors)
        cv = cu if rng.random() < mono_p else rng.randrange(colors)
        edges.append(HalfColoredEdge(u, v, cu, cv, rng.choice(weights)))
    return ExperimentGraph(n, tuple(edges))


def random_valid_graph(rng: random.Random, n: int, max_edges: int, tries=2000):
    """Random valid graph with mu >= 1, built around edge-disjoint seeds."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(tries):
        k = rng.randint(1, 2)
        order = list(range(n))
        rng.shuffle(order)
        edges = {}
        for c in range(k):
            rng.shuffle(order)
            for j in range(0, n, 2):
                p = tuple(sorted((order[j], order[j + 1])))
                edges.setdefault(p, (c, c))
        extra = [p for p in pairs if p not in edges]
        rng.shuffle(extra)
        for p in extra[: rng.randint(0, max(0, max_edges - len(edges)))]:
            cu = rng.randrange(k)
            cv = cu if rng.random() < 0.6 else rng.randrange(k)
            edges[p] = (cu, cv)
        if len(edges) > max_edges:
            continue
        g = ExperimentGraph(
            n, tuple(HalfColoredEdge(u, v, cu, cv, rng.choice(UNITS)) for (u, v), (cu, cv) in edges.items())
        )
        ok, mu, _ = brute_valid(g)
        if ok and mu >= 1:
            return g
    return None
