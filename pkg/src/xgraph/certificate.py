"""Structural certificates for the dimension bound mu <= n / sqrt(2).

For a valid graph and a colour ``i`` the vertices split into ``R`` (colour
degree 1 in ``i``) and ``U`` (degree >= 2).  The ``i``-coloured isolated
edges match up ``R``; picking one of them, {u, v}, the representative
sparse graph chi collects, for every colour that ``u`` (resp. ``v``) cannot
reach through ``U``, one monochromatic edge of that colour at ``u`` (resp.
``v``).  ``certificate_report`` evaluates every counting inequality of the
bound's derivation on a concrete graph with integer arithmetic.

Several inequalities are only derived for edge-minimum graphs.  They are
always evaluated, but they are asserted (count towards ``passed``) only
when the graph is a fixpoint of ``sparsify.prune_to_fixpoint``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import LemmaViolation, MonoedgePropertyError, PreconditionError
from .graph import ExperimentGraph, color_degree
from .sparsify import find_color_isolated_edges, is_fixpoint
from .validity import Verdict, require_valid, verify

HYP_VALID = "valid simple graph"
HYP_MINIMUM = "edge-minimum"


@dataclass(frozen=True)
class SparsePartition:
    color: int
    R: frozenset[int]
    U: frozenset[int]
    isolated_matching: tuple[tuple[int, int], ...]

    @property
    def perfect_on_R(self) -> bool:
        # isolated edges have both ends in R and never share a vertex
        return 2 * len(self.isolated_matching) == len(self.R)


def partition_RU(
    g: ExperimentGraph, i: int, verdict: Verdict | None = None, strict: bool = True
) -> SparsePartition:
    """Split the vertices by their colour degree in ``i``.

    With ``strict`` the isolated ``i``-edges must form a perfect matching of
    ``G[R]``, which holds on pruned graphs but not on arbitrary valid ones.
    """
    verdict = require_valid(g, verdict)
    if i not in verdict.feasible_mono_colors:
        raise PreconditionError(f"monochromatic colouring of colour {i} is not feasible", verdict)
    R, U = set(), set()
    for v in range(g.vertex_count):
        d = color_degree(g, v, i)
        if d == 0:
            raise MonoedgePropertyError(
                f"monoedge property violated: vertex {v} has no half-edge of colour {i}", verdict
            )
        (R if d == 1 else U).add(v)
    M = tuple(p for p in find_color_isolated_edges(g) if g.edge(*p).color_at_u == i)
    part = SparsePartition(i, frozenset(R), frozenset(U), M)
    if strict and not part.perfect_on_R:
        raise PreconditionError(
            f"isolated {i}-edges do not perfectly match G[R]; prune the graph first", verdict
        )
    return part


def select_base_edge(p: SparsePartition) -> tuple[int, int]:
    if not p.isolated_matching:
        raise PreconditionError(f"no isolated edge of colour {p.color}")
    return min(p.isolated_matching)


@dataclass(frozen=True)
class RepresentativeSparseGraph:
    base_edge: tuple[int, int]
    chi_u: tuple[tuple[int, int], ...]
    chi_v: tuple[tuple[int, int], ...]
    R: frozenset[int] = field(repr=False)

    def __post_init__(self):
        u, v = self.base_edge
        for a, b in self.chi:
            if a not in self.R or b not in self.R:
                raise LemmaViolation(f"chi edge {(a, b)} leaves R")
            if u not in (a, b) and v not in (a, b):
                raise LemmaViolation(f"chi edge {(a, b)} avoids both base endpoints")
        if set(self.chi_u) & set(self.chi_v) != {self.base_edge}:
            raise LemmaViolation("chi_u and chi_v must share exactly the base edge")
        if len(self.chi) != len(self.chi_u) + len(self.chi_v) - 1:
            raise LemmaViolation("|chi| != |chi_u| + |chi_v| - 1")

    @property
    def chi(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(set(self.chi_u) | set(self.chi_v)))


def _side(g: ExperimentGraph, p: SparsePartition, x: int, colors) -> tuple[tuple[int, int], ...]:
    picked = []
    for c in colors:
        if any(g.edges[k].color_at(x) == c and g.edges[k].other(x) in p.U for k in g.incident[x]):
            continue
        mono = sorted(
            g.edges[k].other(x)
            for k in g.incident[x]
            if g.edges[k].monochromatic() and g.edges[k].color_at_u == c
        )
        if not mono:
            raise MonoedgePropertyError(
                f"monoedge property violated: no monochromatic edge of colour {c} at vertex {x}"
            )
        w = mono[0]
        if w not in p.R:
            raise LemmaViolation(f"monochromatic {c}-edge at {x} reaches U without a U-witness", g)
        picked.append((min(x, w), max(x, w)))
    return tuple(picked)


def build_chi(
    g: ExperimentGraph, p: SparsePartition, base: tuple[int, int], colors=None
) -> RepresentativeSparseGraph:
    """Representative sparse graph for ``base``; ``u`` is its smaller endpoint.

    ``colors`` defaults to the feasible monochromatic colours.  Ties among
    monochromatic edges go to the smallest other endpoint.
    """
    if base not in p.isolated_matching:
        raise PreconditionError(f"{base} is not an isolated edge of colour {p.color}")
    if colors is None:
        colors = sorted(verify(g).feasible_mono_colors)
    u, v = base
    return RepresentativeSparseGraph(base, _side(g, p, u, colors), _side(g, p, v, colors), p.R)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    scope: str
    inequality: str
    holds: bool
    hypothesis: str = HYP_VALID
    hypothesis_met: bool = True
    applicable: bool = True

    @property
    def asserted(self) -> bool:
        return self.applicable and self.hypothesis_met

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        if self.holds:
            return "ok"
        return "FAIL" if self.hypothesis_met else "unasserted"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "scope": self.scope,
            "inequality": self.inequality,
            "holds": self.holds,
            "applicable": self.applicable,
            "hypothesis": self.hypothesis,
            "hypothesis_met": self.hypothesis_met,
            "status": self.status,
        }


@dataclass
class CertificateReport:
    n: int
    mu: int
    fixpoint: bool
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, name, scope, lhs, op, rhs, hypothesis=HYP_VALID, applicable=True):
        holds = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs}[op]
        met = self.fixpoint if hypothesis == HYP_MINIMUM else True
        self.records.append(
            CheckRecord(name, scope, f"{lhs} {op} {rhs}", holds, hypothesis, met, applicable)
        )

    def not_applicable(self, name, scope, why, hypothesis=HYP_VALID):
        self.records.append(CheckRecord(name, scope, why, True, hypothesis, True, False))

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.asserted and not r.holds]

    @property
    def passed(self) -> bool:
        return not self.failures

    def names(self) -> set[str]:
        return {r.name for r in self.records}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu,
            "fixpoint": self.fixpoint,
            "passed": self.passed,
            "checks": [r.to_json() for r in self.records],
        }

    def table(self) -> str:
        rows = [("check", "scope", "inequality", "status")]
        rows += [(r.name, r.scope, r.inequality, r.status) for r in self.records]
        widths = [max(len(row[k]) for row in rows) for k in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        head = f"n={self.n} mu={self.mu} fixpoint={'yes' if self.fixpoint else 'no'}"
        return head + "\n" + "\n".join(lines) + f"\nresult: {'PASS' if self.passed else 'FAIL'}\n"


def certificate_report(g: ExperimentGraph, colors=None, cap: int | None = None) -> CertificateReport:
    """Evaluate every certificate for every colour and every base edge.

    ``colors`` restricts the per-colour sweep; the global checks are always
    evaluated.
    """
    verdict = require_valid(g, verify(g, cap), nonvacuous=True)
    n, mu = g.vertex_count, verdict.mu
    feasible = sorted(verdict.feasible_mono_colors)
    sweep = feasible if colors is None else [c for c in feasible if c in set(colors)]
    lab = g.vertex_label
    rep = CertificateReport(n, mu, is_fixpoint(g, cap))
    big = n > 4

    threshold = 2 * mu - n + 1
    for v in range(n):
        ones = sum(1 for i in feasible if color_degree(g, v, i) == 1)
        rep.add("deg_obs", f"v={lab(v)}", ones, ">=", threshold)

    iso = [p for p in find_color_isolated_edges(g) if g.edge(*p).color_at_u in verdict.feasible_mono_colors]
    per_color = {i: sum(1 for p in iso if g.edge(*p).color_at_u == i) for i in feasible}
    rep.add("large_col_iso_edges", "all", 2 * len(iso), ">=", threshold * n, HYP_MINIMUM)
    top = max(feasible, key=lambda i: (per_color[i], -i))
    rep.add(
        "large_red_matching", f"color={top}", 2 * mu * per_color[top], ">=", (2 * mu - n) * n, HYP_MINIMUM
    )

    for i in feasible:
        if i != top and i not in sweep:
            continue
        p = partition_RU(g, i, verdict, strict=False)
        if i == top:
            rep.add("R_bound", f"color={i}", mu * len(p.R), ">=", (2 * mu - n) * n, HYP_MINIMUM)
            rep.add("U_bound", f"color={i}", mu * len(p.U), "<=", n * n - n * mu, HYP_MINIMUM)
        if i not in sweep:
            continue
        rep.add("R_plus_U", f"color={i}", len(p.R) + len(p.U), "==", n)
        rep.add("M_perfect_on_R", f"color={i}", 2 * len(p.isolated_matching), "==", len(p.R), HYP_MINIMUM)
        if not p.isolated_matching:
            rep.not_applicable("sumoftwo", f"color={i}", "no isolated edge")
            continue
        if len(p.isolated_matching) < 2:
            rep.not_applicable("struct_lemma", f"color={i}", "fewer than two isolated edges", HYP_MINIMUM)
        for base in p.isolated_matching:
            chi = build_chi(g, p, base, feasible)
            u, v = base
            scope = f"color={i} base={{{lab(u)},{lab(v)}}}"
            rep.add("chi_u_cover", scope, mu, "<=", len(p.U) + len(chi.chi_u))
            rep.add("chi_v_cover", scope, mu, "<=", len(p.U) + len(chi.chi_v))
            rep.add("sumoftwo", scope, 2 * mu, "<=", 2 * len(p.U) + len(chi.chi) + 1)
            if big:
                rep.add("boundchi", scope, len(chi.chi), "<=", len(p.R) - 1, HYP_MINIMUM)
            else:
                rep.not_applicable("boundchi", scope, "needs n > 4", HYP_MINIMUM)
            chi_set = set(chi.chi)
            for other in p.isolated_matching:
                if other == base:
                    continue
                a, b = other
                cross = {tuple(sorted(e)) for e in ((u, a), (u, b), (v, a), (v, b))}
                sub = f"{scope} other={{{lab(a)},{lab(b)}}}"
                if big:
                    rep.add("struct_lemma", sub, len(cross & chi_set), "<=", 2, HYP_MINIMUM)
                else:
                    rep.not_applicable("struct_lemma", sub, "needs n > 4", HYP_MINIMUM)

    if big:
        rep.add("main_bound", "all", 2 * mu * mu, "<=", n * n)
    else:
        rep.not_applicable("main_bound", "all", "needs n > 4")
    return rep
