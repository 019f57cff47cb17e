import random

import pytest
from helpers import fixture, random_valid_graph

from xgraph.certificate import build_chi, certificate_report, partition_RU, select_base_edge
from xgraph.errors import PreconditionError
from xgraph.graph import ExperimentGraph
from xgraph.sparsify import prune_to_fixpoint

RED, GREEN, BLUE = 0, 1, 2


def one(vs):
    return sorted(v + 1 for v in vs)


def one_pairs(ps):
    return sorted((u + 1, v + 1) for u, v in ps)


def test_partition_examples():
    c6 = partition_RU(fixture("c6_alternating"), GREEN)
    assert one(c6.R) == [1, 2, 3, 4, 5, 6] and not c6.U
    assert one_pairs(c6.isolated_matching) == [(1, 2), (3, 4), (5, 6)]
    fig1 = partition_RU(fixture("ghz62_fig1"), RED, strict=False)
    assert one(fig1.R) == [1, 2, 3, 6] and one(fig1.U) == [4, 5]
    assert one_pairs(fig1.isolated_matching) == [(1, 6), (2, 3)]
    for i in (RED, GREEN, BLUE):
        k4 = partition_RU(fixture("k4_3color"), i)
        assert len(k4.R) == 4 and not k4.U


def test_partition_needs_valid_graph():
    with pytest.raises(PreconditionError):
        partition_RU(fixture("broken"), RED)


def test_base_edge():
    assert one_pairs([select_base_edge(partition_RU(fixture("c6_alternating"), GREEN))]) == [(1, 2)]
    assert one_pairs([select_base_edge(partition_RU(fixture("ghz62_fig1"), RED, strict=False))]) == [(1, 6)]
    k4 = partition_RU(fixture("k4_3color"), BLUE)
    assert select_base_edge(k4) == k4.isolated_matching[0]


def test_chi_examples():
    c6 = fixture("c6_alternating")
    p = partition_RU(c6, GREEN)
    chi = build_chi(c6, p, (0, 1))
    assert one_pairs(chi.chi_u) == [(1, 2), (1, 6)]
    assert one_pairs(chi.chi_v) == [(1, 2), (2, 3)]
    assert len(chi.chi) == 3
    k4 = fixture("k4_3color")
    chi = build_chi(k4, partition_RU(k4, BLUE), (0, 1))
    assert len(chi.chi_u) == 3 and all(0 in e for e in chi.chi_u)
    assert len(chi.chi_v) == 3 and all(1 in e for e in chi.chi_v)
    assert len(chi.chi) == 5


def _records(rep, name, scope_part=""):
    return [r for r in rep.records if r.name == name and scope_part in r.scope]


def test_report_c6():
    rep = certificate_report(fixture("c6_alternating"))
    assert rep.passed and rep.fixpoint
    assert all(r.inequality.endswith(">= -1") for r in _records(rep, "deg_obs"))
    [bc] = _records(rep, "boundchi", "color=1 base={1,2}")
    assert bc.inequality == "3 <= 5"
    [s2] = _records(rep, "sumoftwo", "color=1 base={1,2}")
    assert s2.inequality == "4 <= 4"
    # chi contains {2,3}, which reaches the isolated edge {3,4}
    [sl] = _records(rep, "struct_lemma", "color=1 base={1,2} other={3,4}")
    assert sl.inequality == "1 <= 2" and sl.holds


def test_report_k4():
    rep = certificate_report(fixture("k4_3color"))
    assert rep.passed
    assert all(r.inequality == "3 >= 3" for r in _records(rep, "deg_obs"))
    assert all(r.status == "n/a" for r in _records(rep, "struct_lemma") + _records(rep, "boundchi"))


def test_report_fig1_and_pruned():
    fig1 = fixture("ghz62_fig1")
    rep = certificate_report(fig1)
    assert rep.passed and not rep.fixpoint
    out, _ = prune_to_fixpoint(fig1)
    assert certificate_report(out).passed


def test_report_names_and_json():
    rep = certificate_report(fixture("c6_alternating"))
    expected = {"deg_obs", "large_col_iso_edges", "large_red_matching", "R_bound", "U_bound", "R_plus_U",
                "M_perfect_on_R", "chi_u_cover", "chi_v_cover", "sumoftwo", "boundchi", "struct_lemma", "main_bound"}
    assert expected <= rep.names()
    doc = rep.to_json()
    assert doc["passed"] and len(doc["checks"]) == len(rep.records)


def test_vacuous_rejected():
    with pytest.raises(PreconditionError):
        certificate_report(ExperimentGraph(2))


def test_random_fixpoints_pass():
    rng = random.Random(31)
    for _ in range(40):
        g = random_valid_graph(rng, 6, 10)
        out, _ = prune_to_fixpoint(g)
        rep = certificate_report(out)
        assert rep.passed, rep.table()
