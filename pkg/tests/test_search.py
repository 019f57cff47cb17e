import itertools
import json
import re

import pytest
from helpers import brute_canonical, brute_valid, fixture, graph

from xgraph.errors import InputError, UnsupportedError
from xgraph.gaussian import GaussianRational, ONE
from xgraph.graph import ExperimentGraph, HalfColoredEdge, canonical_form
from xgraph.search import SearchSpace, export_polynomial_system, polynomial_system, search_max_dimension
from xgraph.validity import verify


def brute_force_classes(n, d, alphabet, mono_only=True):
    """Every valid graph over all colourings and weights, as labelled skeletons.

    Kept: mu >= 1 and every colour in use has a feasible monochromatic
    colouring.  Colours are 0..k-1 for some k <= d.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    opts = [None] + ([(c, c) for c in range(d)] if mono_only else [(a, b) for a in range(d) for b in range(d)])
    out = set()
    for assign in itertools.product(opts, repeat=len(pairs)):
        present = [(p, o) for p, o in zip(pairs, assign) if o is not None]
        used = sorted({c for _, o in present for c in o})
        if used != list(range(len(used))) or not used:
            continue
        flat = ExperimentGraph(n, tuple(HalfColoredEdge(u, v, o[0], o[1]) for (u, v), o in present))
        if brute_valid(flat)[2] != set(used):
            continue  # feasibility does not depend on weights
        for ws in itertools.product(alphabet, repeat=len(present)):
            g = ExperimentGraph(n, tuple(HalfColoredEdge(u, v, o[0], o[1], w) for ((u, v), o), w in zip(present, ws)))
            ok, mu, feas = brute_valid(g)
            if ok and mu >= 1 and feas == set(used):
                out.add(tuple((e.pair, e.color_at_u, e.color_at_v) for e in g.edges))
                break
    return out


def _skeleton(g):
    return tuple((e.pair, e.color_at_u, e.color_at_v) for e in g.edges)


def _iso_classes(labelled, n):
    return {brute_canonical(graph(n, [(u, v, cu, cv) for (u, v), cu, cv in s])) for s in labelled}


@pytest.fixture(scope="module")
def oracle_n4():
    return brute_force_classes(4, 2, (ONE, -ONE))


def test_n2_trivial():
    for alpha in ("one", "pm1", "i4"):
        for mono in (True, False):
            r = search_max_dimension(SearchSpace(2, 3, alpha, mono_only=mono))
            assert r.best_mu == 1 and r.complete


def test_k4_rediscovered():
    r = search_max_dimension(SearchSpace(4, 3, "one"))
    assert r.best_mu == 3 and r.complete
    assert [canonical_form(w, include_weights=False) for w in r.witnesses] == [
        canonical_form(fixture("k4_3color"), include_weights=False)
    ]


def test_completeness_up_to_iso(oracle_n4):
    r = search_max_dimension(SearchSpace(4, 2, "pm1"), collect_all=True)
    got = {brute_canonical(g) for g in r.representatives.values()}
    assert got == _iso_classes(oracle_n4, 4)
    assert len(r.found) == len(got)


def test_completeness_labelled(oracle_n4):
    r = search_max_dimension(SearchSpace(4, 2, "pm1", up_to_iso=False), collect_all=True)
    assert {_skeleton(g) for g in r.representatives.values()} == oracle_n4


def test_bichromatic_labelled_completeness():
    oracle = brute_force_classes(4, 2, (ONE, -ONE), mono_only=False)
    r = search_max_dimension(SearchSpace(4, 2, "pm1", mono_only=False, up_to_iso=False), collect_all=True)
    assert {_skeleton(g) for g in r.representatives.values()} == oracle


def test_witnesses_verify():
    r = search_max_dimension(SearchSpace(4, 2, "i4", mono_only=False), collect_all=True)
    for key, g in r.representatives.items():
        v = verify(g)
        assert v.is_valid and v.mu == r.found[key]


def test_reduced_keeps_best_mu():
    full = search_max_dimension(SearchSpace(4, 3, "pm1"))
    red = search_max_dimension(SearchSpace(4, 3, "pm1"), reduced=True)
    assert red.best_mu == full.best_mu == 3


def test_target_mu_not_reached():
    r = search_max_dimension(SearchSpace(6, 3, "one"), target_mu=3)
    assert r.best_mu == 0 and not r.witnesses and r.complete


def test_budget_marks_incomplete():
    r = search_max_dimension(SearchSpace(4, 3, "i4", mono_only=False), budget=50, collect_all=True)
    assert not r.complete and r.explored <= 50


def test_checkpoint_resume_matches_uninterrupted(tmp_path):
    space = SearchSpace(4, 3, "i4", mono_only=False, up_to_iso=False)
    whole = search_max_dimension(space, collect_all=True)
    ckpt = tmp_path / "ck.json"
    part = search_max_dimension(space, collect_all=True, budget=200, checkpoint=ckpt, checkpoint_every=20)
    assert not part.complete and ckpt.exists()
    done = search_max_dimension(space, collect_all=True, checkpoint=ckpt, resume=ckpt)
    assert done.complete
    assert done.found == whole.found and done.best_mu == whole.best_mu


def test_resume_rejects_other_space(tmp_path):
    ckpt = tmp_path / "ck.json"
    search_max_dimension(SearchSpace(4, 2, "pm1"), checkpoint=ckpt)
    with pytest.raises(InputError):
        search_max_dimension(SearchSpace(4, 3, "pm1"), resume=ckpt)


def test_workers_do_not_change_result():
    space = SearchSpace(4, 2, "i4", mono_only=False)
    one = search_max_dimension(space, collect_all=True)
    two = search_max_dimension(space, collect_all=True, workers=2)
    assert one.found == two.found
    assert [canonical_form(g) for g in one.witnesses] == [canonical_form(g) for g in two.witnesses]


def test_base_graph_restricts_pairs():
    c6 = fixture("c6_alternating")
    r = search_max_dimension(SearchSpace(6, 3, "one", base_graph=c6))
    assert r.best_mu == 2
    for w in r.witnesses:
        assert {e.pair for e in w.edges} <= {e.pair for e in c6.edges}


def test_space_validation():
    with pytest.raises(InputError):
        SearchSpace(5, 2)
    with pytest.raises(InputError):
        SearchSpace(4, 2, (ONE, 0))
    with pytest.raises(UnsupportedError):
        SearchSpace(10, 2)
    with pytest.raises(InputError):
        SearchSpace(4, 2, "bogus")


def test_result_json_is_deterministic():
    a = search_max_dimension(SearchSpace(4, 3, "pm1")).to_json()
    b = search_max_dimension(SearchSpace(4, 3, "pm1")).to_json()
    assert json.dumps(a) == json.dumps(b)


# polynomial export ---------------------------------------------------------------------

TERM = re.compile(r"x_(\d+)_(\d+)")


def evaluate_system(text: str, g):
    """Substitute the weights of ``g`` (labelled vertices) into every line."""
    w = {(g.vertex_label(e.u), g.vertex_label(e.v)): e.weight for e in g.edges}
    results = []
    for line in text.strip().splitlines():
        lhs, rhs = line.split(" = ")
        total = GaussianRational(0)
        for mono in lhs.split(" + "):
            prod = ONE
            for u, v in TERM.findall(mono):
                prod = prod * w[(int(u), int(v))]
            total = total + prod
        results.append(total == GaussianRational(int(rhs)))
    return results


def test_export_fig1():
    text = export_polynomial_system(fixture("ghz62_fig1"))
    lines = text.strip().splitlines()
    assert len(lines) == 3
    line = next(ln for ln in lines if ln.endswith("= 0"))
    lhs = line[: -len(" = 0")]
    assert set(lhs.split(" + ")) == {"x_1_2*x_3_6*x_4_5", "x_1_2*x_3_5*x_4_6"}
    assert all(evaluate_system(text, fixture("ghz62_fig1")))
    assert not all(evaluate_system(text, fixture("broken")))


def test_export_small():
    assert export_polynomial_system(graph(2, [(0, 1, 0, 0)])) == "x_0_1 = 1\n"
    lines = export_polynomial_system(fixture("k4_3color")).strip().splitlines()
    assert len(lines) == 3 and all(" + " not in ln and ln.endswith("= 1") for ln in lines)


def test_polynomial_system_structure():
    eqs = polynomial_system(fixture("ghz62_fig1"))
    assert [rhs for _, _, rhs in eqs] == [1, 0, 1]
    assert [len(m) for _, m, _ in eqs] == [1, 2, 1]


def test_search_witnesses_satisfy_export():
    r = search_max_dimension(SearchSpace(4, 2, "i4", mono_only=False), collect_all=True)
    for g in r.representatives.values():
        assert all(evaluate_system(export_polynomial_system(g), g))
