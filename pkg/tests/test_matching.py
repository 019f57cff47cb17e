import random
from fractions import Fraction

import pytest
from helpers import brute_matchings, brute_weight_table, fixture, graph, random_graph

from xgraph import kernels
from xgraph.errors import InputError, MatchingCapExceeded
from xgraph.gaussian import GaussianRational, I, ONE
from xgraph.matching import (
    PerfectMatching,
    enumerate_perfect_matchings,
    induced_coloring,
    matching_weight,
    weight_table,
)

BACKENDS = sorted(kernels.backends())


def _pm(g, *pairs):
    return PerfectMatching(tuple(sorted(g.index[(u - 1, v - 1)] for u, v in pairs)))


def test_fig1_has_four_matchings():
    g = fixture("ghz62_fig1")
    assert len(enumerate_perfect_matchings(g)) == 4


def test_small_counts():
    k4 = fixture("k4_3color")
    assert len(enumerate_perfect_matchings(k4)) == 3
    assert enumerate_perfect_matchings(graph(3, [(0, 1, 0, 0), (1, 2, 0, 0)])) == []


def test_matching_weights():
    g = fixture("ghz62_fig1")
    assert matching_weight(g, _pm(g, (1, 2), (3, 5), (4, 6))) == -ONE
    assert matching_weight(g, _pm(g, (1, 2), (3, 4), (5, 6))) == ONE
    h = graph(4, [(0, 1, 0, 0, GaussianRational(2)), (2, 3, 0, 0, GaussianRational(Fraction(1, 2)))])
    assert matching_weight(h, PerfectMatching((0, 1))) == ONE


def test_induced_colorings():
    g = fixture("ghz62_fig1")
    a = induced_coloring(g, _pm(g, (1, 2), (3, 6), (4, 5)))
    b = induced_coloring(g, _pm(g, (1, 2), (3, 5), (4, 6)))
    assert a.label() == "111001" and a == b
    assert induced_coloring(g, _pm(g, (1, 2), (3, 4), (5, 6))).label() == "111111"


def test_not_a_matching_rejected():
    g = fixture("ghz62_fig1")
    with pytest.raises(InputError):
        matching_weight(g, _pm(g, (1, 2), (3, 4)))
    with pytest.raises(InputError):
        induced_coloring(g, _pm(g, (1, 2), (1, 6), (3, 4)))


def test_weight_table_examples():
    t = weight_table(fixture("ghz62_fig1"))
    assert {vc.label(): (e.weight, e.matchings) for vc, e in t.items()} == {
        "000000": (ONE, 1),
        "111111": (ONE, 1),
        "111001": (GaussianRational(0), 2),
    }
    single = weight_table(graph(2, [(0, 1, 0, 0)]))
    assert [(vc.label(), e.weight) for vc, e in single.items()] == [("00", ONE)]
    c6 = weight_table(fixture("c6_alternating"))
    assert [(vc.label(), e.weight) for vc, e in c6.items()] == [("000000", ONE), ("111111", ONE)]


def test_cap(monkeypatch):
    g = fixture("ghz62_fig1")
    with pytest.raises(MatchingCapExceeded):
        enumerate_perfect_matchings(g, cap=3)
    monkeypatch.setenv("XGRAPH_MATCHING_CAP", "2")
    with pytest.raises(MatchingCapExceeded):
        weight_table(g)


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernel_matches_subset_oracle(backend):
    impl = kernels.backends()[backend]
    rng = random.Random(7)
    for _ in range(150):
        n = rng.choice([2, 4, 6, 8])
        g = random_graph(rng, n, 12)
        raw = impl.perfect_matchings(n, [e.u for e in g.edges], [e.v for e in g.edges], 10**6)
        got = {frozenset(g.edges[k].pair for k in m) for m in raw}
        assert got == brute_matchings(g)
        assert len(raw) == len(got)
        assert raw == sorted(raw)


def test_weight_table_matches_oracle():
    rng = random.Random(8)
    for _ in range(100):
        g = random_graph(rng, rng.choice([4, 6]), 10, weights=(ONE, -ONE, I, -I, GaussianRational(Fraction(1, 2))))
        t = weight_table(g)
        assert {vc.colors: (e.weight, e.matchings) for vc, e in t.items()} == brute_weight_table(g)
