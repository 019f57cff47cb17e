"""Perfect matchings and the weights of the vertex colourings they induce."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Mapping

from . import kernels
from .errors import InputError, MatchingCapExceeded
from .gaussian import GaussianRational, ONE, ZERO
from .graph import ExperimentGraph, VertexColoring

DEFAULT_MATCHING_CAP = 10**7


def matching_cap(cap: int | None = None) -> int:
    """Explicit cap, else ``XGRAPH_MATCHING_CAP``, else the default."""
    if cap is not None:
        return cap
    env = os.environ.get("XGRAPH_MATCHING_CAP")
    return int(env) if env else DEFAULT_MATCHING_CAP


@dataclass(frozen=True, order=True)
class PerfectMatching:
    edges: tuple[int, ...]

    def pairs(self, g: ExperimentGraph) -> list[tuple[int, int]]:
        return [g.edges[k].pair for k in self.edges]


def _endpoints(g: ExperimentGraph):
    return [e.u for e in g.edges], [e.v for e in g.edges]


def enumerate_perfect_matchings(g: ExperimentGraph, cap: int | None = None) -> list[PerfectMatching]:
    """All perfect matchings, lexicographic on their sorted edge indices.

    Raises ``MatchingCapExceeded`` rather than materialising more than
    ``cap`` matchings.
    """
    cap = matching_cap(cap)
    us, vs = _endpoints(g)
    raw = kernels.perfect_matchings(g.vertex_count, us, vs, cap + 1)
    if len(raw) > cap:
        raise MatchingCapExceeded(cap)
    return [PerfectMatching(m) for m in raw]


def has_perfect_matching(g: ExperimentGraph) -> bool:
    us, vs = _endpoints(g)
    return bool(kernels.perfect_matchings(g.vertex_count, us, vs, 1))


def _check_matching(g: ExperimentGraph, p: PerfectMatching) -> None:
    seen = set()
    for k in p.edges:
        if not 0 <= k < len(g.edges):
            raise InputError(f"edge index {k} out of range")
        e = g.edges[k]
        if e.u in seen or e.v in seen:
            raise InputError("not a matching: a vertex is covered twice")
        seen.update(e.pair)
    if len(seen) != g.vertex_count:
        raise InputError("not a perfect matching: some vertex is uncovered")


def matching_weight(g: ExperimentGraph, p: PerfectMatching) -> GaussianRational:
    _check_matching(g, p)
    w = ONE
    for k in p.edges:
        w = w * g.edges[k].weight
    return w


def induced_coloring(g: ExperimentGraph, p: PerfectMatching) -> VertexColoring:
    _check_matching(g, p)
    return _coloring(g, p.edges)


def _coloring(g: ExperimentGraph, edge_ids) -> VertexColoring:
    colors = [0] * g.vertex_count
    for k in edge_ids:
        e = g.edges[k]
        colors[e.u] = e.color_at_u
        colors[e.v] = e.color_at_v
    return VertexColoring(tuple(colors))


@dataclass(frozen=True)
class WeightEntry:
    weight: GaussianRational
    matchings: int


class WeightTable(Mapping):
    """Feasible colouring -> (summed weight, number of inducing matchings).

    Iteration is in increasing order of the colour tuples.  Infeasible
    colourings are absent; their weight is zero by definition.
    """

    def __init__(self, entries: dict[VertexColoring, WeightEntry]):
        self._entries = dict(sorted(entries.items(), key=lambda kv: kv[0].colors))

    def __getitem__(self, key):
        if not isinstance(key, VertexColoring):
            key = VertexColoring(tuple(key))
        return self._entries[key]

    def __iter__(self) -> Iterator[VertexColoring]:
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def weight(self, coloring) -> GaussianRational:
        try:
            return self[coloring].weight
        except KeyError:
            return ZERO

    def total_matchings(self) -> int:
        return sum(e.matchings for e in self._entries.values())

    def monochromatic(self) -> dict[int, WeightEntry]:
        """Feasible monochromatic entries keyed by their colour."""
        return {vc.colors[0]: e for vc, e in self._entries.items() if vc.colors and vc.is_monochromatic()}

    def __eq__(self, other):
        if isinstance(other, WeightTable):
            return list(self._entries.items()) == list(other._entries.items())
        return NotImplemented

    def to_json(self) -> list[dict]:
        return [
            {"coloring": vc.label(), "weight": e.weight.to_json(), "matchings": e.matchings}
            for vc, e in self._entries.items()
        ]

    def __repr__(self):
        body = ", ".join(f"{vc.ket()}: {e.weight} ({e.matchings})" for vc, e in self._entries.items())
        return f"WeightTable({{{body}}})"


def weight_table(g: ExperimentGraph, cap: int | None = None) -> WeightTable:
    acc: dict[VertexColoring, list] = {}
    for p in enumerate_perfect_matchings(g, cap):
        vc = _coloring(g, p.edges)
        w = ONE
        for k in p.edges:
            w = w * g.edges[k].weight
        slot = acc.setdefault(vc, [ZERO, 0])
        slot[0] = slot[0] + w
        slot[1] += 1
    return WeightTable({vc: WeightEntry(w, c) for vc, (w, c) in acc.items()})
