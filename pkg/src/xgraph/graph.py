"""Experiment graphs: simple graphs with half-edge colours and exact weights."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from . import kernels
from .errors import GraphFormatError, InputError, UnsupportedError
from .gaussian import GaussianRational, ONE

CANONICAL_MAX_VERTICES = 10


@dataclass(frozen=True)
class HalfColoredEdge:
    """Edge {u, v} whose half at ``u`` has colour ``color_at_u``.

    Stored with ``u < v``; constructing with ``u > v`` swaps the endpoints
    together with their colours.
    """

    u: int
    v: int
    color_at_u: int
    color_at_v: int
    weight: GaussianRational = ONE

    def __post_init__(self):
        if self.u == self.v:
            raise GraphFormatError(f"self-loop at vertex {self.u} rejected")
        if min(self.u, self.v) < 0:
            raise GraphFormatError("vertex ids must be non-negative")
        if min(self.color_at_u, self.color_at_v) < 0:
            raise GraphFormatError("colour ids must be non-negative")
        weight = GaussianRational.coerce(self.weight)
        if not weight:
            raise GraphFormatError("weight must be nonzero")
        object.__setattr__(self, "weight", weight)
        if self.u > self.v:
            u, v, cu, cv = self.v, self.u, self.color_at_v, self.color_at_u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
            object.__setattr__(self, "color_at_u", cu)
            object.__setattr__(self, "color_at_v", cv)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)

    def monochromatic(self) -> bool:
        return self.color_at_u == self.color_at_v

    def color_at(self, x: int) -> int:
        if x == self.u:
            return self.color_at_u
        if x == self.v:
            return self.color_at_v
        raise InputError(f"vertex {x} is not an endpoint of {self.pair}")

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u

    def with_weight(self, weight) -> HalfColoredEdge:
        return HalfColoredEdge(self.u, self.v, self.color_at_u, self.color_at_v, weight)


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))

    def is_monochromatic(self) -> bool:
        return len(set(self.colors)) <= 1

    def __len__(self):
        return len(self.colors)

    def label(self) -> str:
        """Digits when every colour is a single digit, else comma-separated."""
        if all(c < 10 for c in self.colors):
            return "".join(map(str, self.colors))
        return ",".join(map(str, self.colors))

    def ket(self) -> str:
        return f"|{self.label()}⟩"

    def __str__(self):
        return self.ket()


@dataclass(frozen=True)
class ExperimentGraph:
    """A simple experiment graph on vertices ``0..vertex_count-1``.

    ``index_base`` and ``color_labels`` only record how the graph was written
    on disk (1-based vertex labels, original colour ids) so that it can be
    written back unchanged; all computation uses the internal ids.
    """

    vertex_count: int
    edges: tuple[HalfColoredEdge, ...] = ()
    index_base: int = 0
    color_labels: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise GraphFormatError("vertex count must be a non-negative integer")
        edges = tuple(sorted(self.edges, key=lambda e: (e.u, e.v)))
        seen = set()
        for e in edges:
            if e.v >= n:
                raise GraphFormatError(f"edge {e.pair} has a vertex outside [0, {n})")
            if e.pair in seen:
                raise GraphFormatError(f"multigraph rejected: duplicate edge {e.pair}")
            seen.add(e.pair)
        object.__setattr__(self, "edges", edges)
        if self.color_labels is not None:
            labels = tuple(self.color_labels)
            object.__setattr__(self, "color_labels", labels)
            if edges and max(max(e.color_at_u, e.color_at_v) for e in edges) >= len(labels):
                raise GraphFormatError("edge colour outside the recorded colour labels")

    # derived structure -----------------------------------------------------

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {e.pair: k for k, e in enumerate(self.edges)}

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident on each vertex, in index order."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for k, e in enumerate(self.edges):
            inc[e.u].append(k)
            inc[e.v].append(k)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _color_degrees(self) -> tuple[Counter, ...]:
        deg = [Counter() for _ in range(self.vertex_count)]
        for e in self.edges:
            deg[e.u][e.color_at_u] += 1
            deg[e.v][e.color_at_v] += 1
        return tuple(deg)

    def edge(self, u: int, v: int) -> HalfColoredEdge:
        return self.edges[self.index[(min(u, v), max(u, v))]]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.index

    def colors_used(self) -> list[int]:
        return sorted({c for e in self.edges for c in (e.color_at_u, e.color_at_v)})

    def color_count(self) -> int:
        """Size of the colour id range ``[0, d)``."""
        if self.color_labels is not None:
            return len(self.color_labels)
        used = self.colors_used()
        return used[-1] + 1 if used else 0

    def vertex_label(self, v: int) -> int:
        return v + self.index_base

    def color_label(self, c: int) -> int:
        return self.color_labels[c] if self.color_labels is not None else c

    def without_edges(self, pairs: Iterable[tuple[int, int]]) -> ExperimentGraph:
        drop = set(pairs)
        return ExperimentGraph(
            self.vertex_count,
            tuple(e for e in self.edges if e.pair not in drop),
            self.index_base,
            self.color_labels,
        )

    def with_weights(self, weights) -> ExperimentGraph:
        """Copy with edge ``k`` reweighted to ``weights[k]``."""
        return ExperimentGraph(
            self.vertex_count,
            tuple(e.with_weight(w) for e, w in zip(self.edges, weights, strict=True)),
            self.index_base,
            self.color_labels,
        )

    def relabeled(self, perm, color_perm=None) -> ExperimentGraph:
        """Image under the vertex map ``perm[old] = new`` (and colour map)."""
        cp = color_perm if color_perm is not None else range(max(self.color_count(), 1))
        return ExperimentGraph(
            self.vertex_count,
            tuple(
                HalfColoredEdge(perm[e.u], perm[e.v], cp[e.color_at_u], cp[e.color_at_v], e.weight)
                for e in self.edges
            ),
            self.index_base,
        )


def color_degree(g: ExperimentGraph, v: int, i: int) -> int:
    """Number of edges at ``v`` whose half at ``v`` has colour ``i``."""
    if not 0 <= v < g.vertex_count:
        raise InputError(f"vertex {v} out of range [0, {g.vertex_count})")
    return g._color_degrees[v][i]


def induced_subgraph(g: ExperimentGraph, s: Iterable[int]) -> tuple[ExperimentGraph, dict[int, int]]:
    """``G[s]`` relabelled onto ``0..|s|-1`` in increasing order of old id.

    Returns the subgraph and the map old id -> new id.
    """
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} out of range [0, {g.vertex_count})")
    relabel = {v: k for k, v in enumerate(keep)}
    edges = tuple(
        HalfColoredEdge(relabel[e.u], relabel[e.v], e.color_at_u, e.color_at_v, e.weight)
        for e in g.edges
        if e.u in relabel and e.v in relabel
    )
    return ExperimentGraph(len(keep), edges, g.index_base, g.color_labels), relabel


# canonical form --------------------------------------------------------------


def _vertex_cells(n, edges):
    # colour- and vertex-permutation invariant signature, refined once by neighbours
    deg = [Counter() for _ in range(n)]
    inc = [[] for _ in range(n)]
    for u, v, cu, cv, w in edges:
        deg[u][cu] += 1
        deg[v][cv] += 1
        mono = cu == cv
        inc[u].append((v, mono, w))
        inc[v].append((u, mono, w))
    base = [
        (len(inc[x]), tuple(sorted(deg[x].values())), tuple(sorted((m, w) for _, m, w in inc[x])))
        for x in range(n)
    ]
    refined = [
        (base[x], tuple(sorted((base[y], m, w) for y, m, w in inc[x]))) for x in range(n)
    ]
    rank = {sig: k for k, sig in enumerate(sorted(set(refined)))}
    cell_of = [rank[refined[x]] for x in range(n)]
    return sorted(cell_of), cell_of


def canonical_code_raw(n: int, edges, ncolors: int, nweights: int = 1) -> tuple[int, ...]:
    """Canonical code of ``(u, v, colour_u, colour_v, weight_id)`` tuples.

    Colours must already lie in ``[0, ncolors)`` and weight ids in
    ``[0, nweights)``.
    """
    if n > CANONICAL_MAX_VERTICES:
        raise UnsupportedError(
            f"canonical form is exhaustive and limited to n <= {CANONICAL_MAX_VERTICES}"
        )
    colmat = [-1] * (n * n)
    wmat = [0] * (n * n)
    for u, v, cu, cv, w in edges:
        colmat[u * n + v] = cu
        colmat[v * n + u] = cv
        wmat[u * n + v] = wmat[v * n + u] = w
    pos_cell, cell_of = _vertex_cells(n, edges)
    return kernels.canonical_code(n, colmat, wmat, pos_cell, cell_of, ncolors, max(nweights, 1))


def canonical_key(n: int, ncolors: int, weights, code) -> bytes:
    wtext = ",".join(f"{w.re}:{w.im}" for w in weights)
    return f"n={n};c={ncolors};w={wtext};e={','.join(map(str, code))}".encode()


def canonical_code(g: ExperimentGraph, include_weights: bool = True):
    """``(ncolors, weights, code)``: the raw canonical labelling of ``g``.

    ``code`` lists one token per vertex pair in colex order; see
    ``decode_canonical`` for the inverse.
    """
    used = g.colors_used()
    cidx = {c: k for k, c in enumerate(used)}
    weights = sorted({e.weight for e in g.edges}, key=GaussianRational.sort_key) if include_weights else []
    widx = {w: k for k, w in enumerate(weights)}
    raw = [
        (e.u, e.v, cidx[e.color_at_u], cidx[e.color_at_v], widx[e.weight] if include_weights else 0)
        for e in g.edges
    ]
    code = canonical_code_raw(g.vertex_count, raw, len(used), len(weights))
    return len(used), tuple(weights), code


def canonical_form(g: ExperimentGraph, include_weights: bool = True) -> bytes:
    """Key equal for two graphs iff they differ by a vertex permutation
    composed with a colour permutation (weights kept unless excluded)."""
    return canonical_key(g.vertex_count, *canonical_code(g, include_weights))


def decode_canonical(n: int, ncolors: int, weights, code) -> ExperimentGraph:
    """Rebuild the canonical representative from ``canonical_code`` output.

    With no weights recorded every edge gets weight 1.
    """
    nweights = max(len(weights), 1)
    edges = []
    pairs = ((a, b) for b in range(n) for a in range(b))
    for (a, b), t in zip(pairs, code):
        if t == 0:
            continue
        t -= 1
        wid = t % nweights
        t //= nweights
        ca, cb = divmod(t, ncolors)
        w = weights[wid] if weights else ONE
        edges.append(HalfColoredEdge(a, b, ca, cb, w))
    return ExperimentGraph(n, tuple(edges))


# DOT export -----------------------------------------------------------------

PALETTE = ("red", "green", "blue", "orange", "purple", "brown", "cyan", "magenta", "gold", "gray")


def _color_name(c: int) -> str:
    return PALETTE[c] if c < len(PALETTE) else f"/set312/{c % 12 + 1}"


def export_dot(g: ExperimentGraph) -> str:
    """Graphviz text; bi-chromatic edges are drawn as two half segments."""
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.vertex_count):
        lines.append(f"  {g.vertex_label(v)};")
    for e in g.edges:
        cu, cv = _color_name(e.color_at_u), _color_name(e.color_at_v)
        color = cu if e.monochromatic() else f"{cu};0.5:{cv}"
        attrs = [f'color="{color}"', "penwidth=2"]
        if e.weight != ONE:
            attrs.append(f'label="{e.weight}"')
        lines.append(f"  {g.vertex_label(e.u)} -- {g.vertex_label(e.v)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complete_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]

