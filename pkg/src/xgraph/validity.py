"""Validity, dimension and the published dimension bounds."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .gaussian import GaussianRational
from .graph import ExperimentGraph, VertexColoring, color_degree
from .matching import WeightTable, has_perfect_matching, weight_table


@dataclass(frozen=True)
class Verdict:
    is_valid: bool
    mu: int
    violations: tuple[tuple[VertexColoring, GaussianRational], ...]
    feasible_mono_colors: frozenset[int]
    matching_count: int = 0
    color_class_count: int = 0
    table: WeightTable | None = field(default=None, compare=False, repr=False)

    @property
    def vacuous(self) -> bool:
        return self.mu == 0

    def to_json(self, with_table: bool = True) -> dict:
        doc = {
            "valid": self.is_valid,
            "mu": self.mu,
            "vacuous": self.vacuous,
            "feasible_mono_colors": sorted(self.feasible_mono_colors),
            "color_classes": self.color_class_count,
            "matchings": self.matching_count,
            "violations": [
                {"coloring": vc.label(), "weight": w.to_json()} for vc, w in self.violations
            ],
        }
        if with_table and self.table is not None:
            doc["weight_table"] = self.table.to_json()
        return doc


def _close(w: GaussianRational, target: int, tol: float) -> bool:
    return abs(complex(w) - target) <= tol


def verify(g: ExperimentGraph, cap: int | None = None, tolerance: float | None = None) -> Verdict:
    """Check every feasible colouring against its required weight.

    Monochromatic colourings must weigh exactly 1, all others exactly 0.
    ``tolerance`` switches to approximate comparison and exists only for
    imported floating-point data.
    """
    table = weight_table(g, cap)
    violations = []
    feasible_mono = set()
    mu = 0
    for vc, entry in table.items():
        mono = vc.is_monochromatic()
        target = 1 if mono else 0
        if tolerance is None:
            ok = entry.weight == target
        else:
            ok = _close(entry.weight, target, tolerance)
        if mono and vc.colors:
            feasible_mono.add(vc.colors[0])
            if ok:
                mu += 1
        if not ok:
            violations.append((vc, entry.weight))
    return Verdict(
        is_valid=not violations,
        mu=mu,
        violations=tuple(violations),
        feasible_mono_colors=frozenset(feasible_mono),
        matching_count=table.total_matchings(),
        color_class_count=len(g.colors_used()),
        table=table,
    )


def require_valid(g: ExperimentGraph, verdict: Verdict | None = None, nonvacuous: bool = False) -> Verdict:
    verdict = verdict if verdict is not None else verify(g)
    if not verdict.is_valid:
        raise PreconditionError("graph is not a valid experiment graph", verdict)
    if nonvacuous and verdict.vacuous:
        raise PreconditionError("graph is vacuous (no feasible monochromatic colouring)", verdict)
    return verdict


def dimension(g: ExperimentGraph, cap: int | None = None) -> int:
    return require_valid(g, verify(g, cap)).mu


@dataclass(frozen=True)
class Comparison:
    lhs: int
    op: str
    rhs: int
    holds: bool

    def __str__(self):
        return f"{self.lhs} {self.op} {self.rhs}"

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "op": self.op, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class DimensionReport:
    n: int
    mu: int
    bound_sqrt2: Comparison  # 2 mu^2 <= n^2, i.e. mu <= n / sqrt(2)
    bound_conjecture: Comparison  # 2 mu < n, i.e. mu < n / 2
    is_counterexample_thm: bool
    is_counterexample_conj: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu,
            "bound_sqrt2": self.bound_sqrt2.to_json(),
            "bound_conjecture": self.bound_conjecture.to_json(),
            "counterexample_theorem": self.is_counterexample_thm,
            "counterexample_conjecture": self.is_counterexample_conj,
        }


def bound_report_for(n: int, mu: int) -> DimensionReport:
    """Bound comparisons for given numbers, all in integer arithmetic."""
    sq = Comparison(2 * mu * mu, "<=", n * n, 2 * mu * mu <= n * n)
    conj = Comparison(2 * mu, "<", n, 2 * mu < n)
    return DimensionReport(
        n=n,
        mu=mu,
        bound_sqrt2=sq,
        bound_conjecture=conj,
        is_counterexample_thm=n > 4 and not sq.holds,
        is_counterexample_conj=n > 4 and not conj.holds,
    )


def bound_report(g: ExperimentGraph, cap: int | None = None) -> DimensionReport:
    return bound_report_for(g.vertex_count, dimension(g, cap))


def check_monoedge_property(g: ExperimentGraph, colors=None) -> list[tuple[int, int]]:
    """(vertex, colour) pairs lacking a monochromatic edge of that colour.

    By default the colours checked are those whose monochromatic colouring
    is feasible; pass ``colors`` to check another set (e.g. every colour in
    use).
    """
    if colors is None:
        colors = sorted(feasible_mono_colors(g))
    mono_at = [set() for _ in range(g.vertex_count)]
    for e in g.edges:
        if e.monochromatic():
            mono_at[e.u].add(e.color_at_u)
            mono_at[e.v].add(e.color_at_u)
    return [(v, i) for v in range(g.vertex_count) for i in colors if i not in mono_at[v]]


def feasible_mono_colors(g: ExperimentGraph) -> set[int]:
    """Colours whose monochromatic colouring is induced by some matching."""
    found = set()
    for i in g.colors_used():
        sub = ExperimentGraph(
            g.vertex_count,
            tuple(e for e in g.edges if e.color_at_u == i and e.color_at_v == i),
        )
        if g.vertex_count and has_perfect_matching(sub):
            found.add(i)
    return found


def color_degrees(g: ExperimentGraph, i: int) -> list[int]:
    return [color_degree(g, v, i) for v in range(g.vertex_count)]


__all__ = [
    "Comparison",
    "DimensionReport",
    "Verdict",
    "bound_report",
    "bound_report_for",
    "check_monoedge_property",
    "color_degrees",
    "dimension",
    "feasible_mono_colors",
    "require_valid",
    "verify",
]
