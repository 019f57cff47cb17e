"""Local sparsification: edge removals that keep validity and dimension.

Three rules are provided, each returning the smaller graph together with a
``PruneTrace`` recording what was removed and why:

* ``matching_covered_reduction`` drops edges that lie in no perfect matching.
* ``infeasible_color_prune`` drops every edge carrying a colour whose
  monochromatic colouring is infeasible.
* ``color_isolated_prune`` takes a monochromatic edge {u, v} with
  d(u, c) = 1 and d(v, c) >= 2 and drops the other c-coloured halves at v.

``prune_to_fixpoint`` applies them round-robin until nothing changes.  The
result is a fixpoint of the rules; it is not certified to be edge minimum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LemmaViolation
from .graph import ExperimentGraph, color_degree
from .matching import enumerate_perfect_matchings
from .validity import feasible_mono_colors, require_valid, verify

PARANOID_MAX_VERTICES = 10

MATCHING_COVERED = "matching-covered"
INFEASIBLE_COLOR = "infeasible-color"
COLOR_ISOLATED = "color-isolated"


@dataclass(frozen=True)
class PruneStep:
    rule: str
    removed: tuple[tuple[int, int], ...]
    justification: dict
    edges_after: int

    def to_json(self, g: ExperimentGraph | None = None) -> dict:
        lab = (lambda v: g.vertex_label(v)) if g is not None else (lambda v: v)
        why = dict(self.justification)
        if "vertex" in why:
            why["vertex"] = lab(why["vertex"])
        if "edge" in why:
            why["edge"] = [lab(x) for x in why["edge"]]
        return {
            "rule": self.rule,
            "removed": [[lab(u), lab(v)] for u, v in self.removed],
            "justification": why,
            "edges_after": self.edges_after,
        }


@dataclass
class PruneTrace:
    steps: list[PruneStep] = field(default_factory=list)

    def extend(self, other: PruneTrace) -> None:
        self.steps.extend(other.steps)

    def __len__(self):
        return len(self.steps)

    def replay(self, g: ExperimentGraph) -> list[ExperimentGraph]:
        """Intermediate graphs, starting with ``g`` and ending with the output."""
        graphs = [g]
        for step in self.steps:
            missing = [p for p in step.removed if not graphs[-1].has_edge(*p)]
            if missing:
                raise ValueError(f"trace does not apply: edges {missing} absent")
            graphs.append(graphs[-1].without_edges(step.removed))
        return graphs

    def removed_edges(self) -> list[tuple[int, int]]:
        return [p for s in self.steps for p in s.removed]

    def to_json(self, g: ExperimentGraph | None = None) -> dict:
        return {"steps": [s.to_json(g) for s in self.steps]}


def matching_covered_reduction(g: ExperimentGraph, cap: int | None = None):
    matchings = enumerate_perfect_matchings(g, cap)
    covered = {k for p in matchings for k in p.edges}
    removed = tuple(e.pair for k, e in enumerate(g.edges) if k not in covered)
    trace = PruneTrace()
    if not removed:
        return g, trace
    out = g.without_edges(removed)
    trace.steps.append(
        PruneStep(
            MATCHING_COVERED,
            removed,
            {"reason": "edge lies in no perfect matching", "perfect_matchings": len(matchings)},
            len(out.edges),
        )
    )
    return out, trace


def infeasible_color_prune(g: ExperimentGraph, cap: int | None = None):
    # cap is accepted for interface symmetry; feasibility only needs one matching
    feasible = feasible_mono_colors(g)
    trace = PruneTrace()
    for i in g.colors_used():
        if i in feasible:
            continue
        removed = tuple(e.pair for e in g.edges if i in (e.color_at_u, e.color_at_v))
        if not removed:
            continue
        g = g.without_edges(removed)
        trace.steps.append(
            PruneStep(
                INFEASIBLE_COLOR,
                removed,
                {"color": i, "reason": "monochromatic colouring of this colour is infeasible"},
                len(g.edges),
            )
        )
    return g, trace


def find_color_isolated_edges(g: ExperimentGraph) -> list[tuple[int, int]]:
    return [
        e.pair
        for e in g.edges
        if e.monochromatic()
        and color_degree(g, e.u, e.color_at_u) == 1
        and color_degree(g, e.v, e.color_at_v) == 1
    ]


def _isolating_move(g: ExperimentGraph):
    """First (edge, heavy endpoint, colour) the colour-isolation rule applies to."""
    for e in g.edges:
        if not e.monochromatic():
            continue
        c = e.color_at_u
        du, dv = color_degree(g, e.u, c), color_degree(g, e.v, c)
        if du == 1 and dv >= 2:
            return e, e.v, c
        if dv == 1 and du >= 2:
            return e, e.u, c
    return None


def color_isolated_prune(g: ExperimentGraph, paranoid: bool | None = None, cap: int | None = None):
    """Apply the colour-isolation rule until no edge qualifies.

    Requires a valid graph.  In paranoid mode (default for n <= 10) every
    removal batch is re-verified and a ``LemmaViolation`` is raised if
    validity or the dimension changed.
    """
    before = require_valid(g, verify(g, cap))
    if paranoid is None:
        paranoid = g.vertex_count <= PARANOID_MAX_VERTICES
    trace = PruneTrace()
    while (move := _isolating_move(g)) is not None:
        e, v, c = move
        removed = tuple(
            f.pair for k in g.incident[v] if (f := g.edges[k]).pair != e.pair and f.color_at(v) == c
        )
        g = g.without_edges(removed)
        trace.steps.append(
            PruneStep(
                COLOR_ISOLATED,
                removed,
                {"edge": list(e.pair), "vertex": v, "color": c},
                len(g.edges),
            )
        )
        if paranoid:
            after = verify(g, cap)
            if not after.is_valid or after.mu != before.mu:
                raise LemmaViolation(
                    f"colour-isolation removal at vertex {v} changed validity or dimension", g
                )
    return g, trace


RULES = (
    (INFEASIBLE_COLOR, infeasible_color_prune),
    (MATCHING_COVERED, matching_covered_reduction),
    (COLOR_ISOLATED, color_isolated_prune),
)


def prune_to_fixpoint(g: ExperimentGraph, paranoid: bool | None = None, cap: int | None = None):
    require_valid(g, verify(g, cap))
    trace = PruneTrace()
    for _ in range(len(g.edges) + 1):
        changed = False
        for name, rule in RULES:
            if name == COLOR_ISOLATED:
                g, t = rule(g, paranoid=paranoid, cap=cap)
            else:
                g, t = rule(g, cap=cap)
            if t.steps:
                changed = True
                trace.extend(t)
        if not changed:
            return g, trace
    raise AssertionError("fixpoint iteration exceeded |E| productive rounds")


def is_fixpoint(g: ExperimentGraph, cap: int | None = None) -> bool:
    """True when none of the three rules would remove an edge."""
    if infeasible_color_prune(g, cap)[1].steps:
        return False
    if matching_covered_reduction(g, cap)[1].steps:
        return False
    return _isolating_move(g) is None
