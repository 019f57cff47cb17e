"""Exhaustive search for maximum-dimension valid graphs, and polynomial export.

The search works one colour count ``k`` at a time, from the largest
possible down.  A graph of dimension ``k`` has a perfect matching in each
colour, so every colour class is seeded with one perfect matching (the k
seeds are pairwise edge-disjoint); the remaining vertex pairs are then
enumerated as absent or coloured.  Each completed colouring is reduced to
its isomorphism class, and only then are weights from the alphabet assigned
by backtracking against the validity equations.

Only graphs whose colours all have a feasible monochromatic colouring are
produced.  That loses nothing: deleting the edges of an infeasible colour
keeps validity and the dimension.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import io, kernels
from .errors import InputError, LemmaViolation, MatchingCapExceeded, UnsupportedError
from .gaussian import GaussianRational, I, ONE
from .graph import (
    ExperimentGraph,
    HalfColoredEdge,
    canonical_code_raw,
    canonical_key,
    complete_pairs,
    decode_canonical,
)
from .matching import enumerate_perfect_matchings, matching_cap
from .validity import verify

SEARCH_MAX_VERTICES = 8
DEFAULT_BUDGET = 10**8
CHECKPOINT_EVERY = 10**6
CHECKPOINT_FORMAT = "xgraph-search-checkpoint/1"

ALPHABETS = {
    "one": (ONE,),
    "pm1": (ONE, -ONE),
    "i4": (ONE, -ONE, I, -I),
}


def _alphabet(values) -> tuple[GaussianRational, ...]:
    if isinstance(values, str):
        try:
            return ALPHABETS[values]
        except KeyError:
            raise InputError(f"unknown weight alphabet {values!r}; use one of {sorted(ALPHABETS)}") from None
    out = []
    for w in values:
        w = GaussianRational.coerce(w)
        if w not in out:
            out.append(w)
    return tuple(out)


@dataclass(frozen=True)
class SearchSpace:
    n: int
    max_colors: int
    weight_alphabet: tuple = ALPHABETS["i4"]
    mono_only: bool = True
    up_to_iso: bool = True
    base_graph: ExperimentGraph | None = None

    def __post_init__(self):
        alpha = _alphabet(self.weight_alphabet)
        object.__setattr__(self, "weight_alphabet", alpha)
        if not alpha:
            raise InputError("weight alphabet is empty")
        if any(not w for w in alpha):
            raise InputError("weight alphabet must exclude 0")
        if self.n < 2 or self.n % 2:
            raise InputError("n must be even and at least 2 (odd n has no perfect matching)")
        if self.n > SEARCH_MAX_VERTICES:
            raise UnsupportedError(f"search is limited to n <= {SEARCH_MAX_VERTICES}")
        if self.max_colors < 1:
            raise InputError("max_colors must be at least 1")
        if self.base_graph is not None and self.base_graph.vertex_count != self.n:
            raise InputError("base graph must have n vertices")

    def pairs(self) -> list[tuple[int, int]]:
        if self.base_graph is not None:
            return [e.pair for e in self.base_graph.edges]
        return complete_pairs(self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_colors": self.max_colors,
            "weight_alphabet": [w.to_json(abbreviate=True) for w in self.weight_alphabet],
            "mono_only": self.mono_only,
            "up_to_iso": self.up_to_iso,
            "base_graph": self.pairs() if self.base_graph is not None else None,
        }


@dataclass
class SearchResult:
    best_mu: int
    witnesses: list[ExperimentGraph]
    explored: int
    pruned: int
    complete: bool
    found: dict[str, int] = field(default_factory=dict, repr=False)
    representatives: dict[str, ExperimentGraph] = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        per_k: dict[str, int] = {}
        for mu in self.found.values():
            per_k[str(mu)] = per_k.get(str(mu), 0) + 1
        return {
            "best_mu": self.best_mu,
            "complete": self.complete,
            "explored": self.explored,
            "pruned": self.pruned,
            "valid_classes_by_mu": dict(sorted(per_k.items())),
            "witnesses": [io.graph_to_dict(g) for g in self.witnesses],
        }


class _BudgetExceeded(Exception):
    pass


class _Counter:
    def __init__(self, explored, pruned, budget):
        self.explored = explored
        self.pruned = pruned
        self.budget = budget

    def tick(self, k=1):
        self.explored += k
        if self.explored > self.budget:
            raise _BudgetExceeded


# seeds -------------------------------------------------------------------------


def _seeds(space: SearchSpace, k: int, pairs) -> list[tuple[tuple[int, int], ...]]:
    """Colour-class seeds: k pairwise edge-disjoint perfect matchings."""
    us = [u for u, _ in pairs]
    vs = [v for _, v in pairs]
    pms = [frozenset(pairs[i] for i in m) for m in kernels.perfect_matchings(space.n, us, vs, 10**9)]
    if space.up_to_iso and space.base_graph is None:
        # every perfect matching of K_n is equivalent to {01, 23, ...}
        first = frozenset((2 * j, 2 * j + 1) for j in range(space.n // 2))
        rest = [m for m in pms if not m & first]
        out = []
        for combo in itertools.combinations(range(len(rest)), k - 1):
            chosen = [rest[i] for i in combo]
            if _disjoint(chosen):
                out.append((first, *chosen))
    elif space.up_to_iso:
        out = [tuple(pms[i] for i in c) for c in itertools.combinations(range(len(pms)), k) if _disjoint([pms[i] for i in c])]
    else:
        out = [tuple(pms[i] for i in c) for c in itertools.permutations(range(len(pms)), k) if _disjoint([pms[i] for i in c])]
    return [tuple(tuple(sorted(m)) for m in seed) for seed in out]


def _disjoint(ms) -> bool:
    seen = set()
    for m in ms:
        if seen & m:
            return False
        seen |= m
    return True


# weights -------------------------------------------------------------------------


def _equations(n, raw, cap=None):
    """Validity equations of a coloured skeleton, raw edges sorted by pair.

    Returns ``[(coloring, [matching, ...], target)]`` in colouring order;
    matchings are tuples of edge indices.
    """
    cap = matching_cap(cap)
    ms = kernels.perfect_matchings(n, [e[0] for e in raw], [e[1] for e in raw], cap + 1)
    if len(ms) > cap:
        raise MatchingCapExceeded(cap)
    groups: dict[tuple, list] = {}
    for m in ms:
        col = [0] * n
        for idx in m:
            u, v, cu, cv = raw[idx][:4]
            col[u], col[v] = cu, cv
        groups.setdefault(tuple(col), []).append(m)
    return [(c, groups[c], 1 if len(set(c)) <= 1 else 0) for c in sorted(groups)]


def _unit_alphabet(alpha) -> bool:
    return all(w.is_gaussian_integer() and w.norm() == 1 for w in alpha)


def _solve_weights(n, raw, alpha, counter, eqs, parity):
    """First weight vector (alphabet indices, lexicographic) meeting every equation."""
    if parity:
        # a sum of m units of Z[i] has re+im of the parity of m
        for _, mons, target in eqs:
            if len(mons) % 2 != target:
                return None
    exact = all(w.is_gaussian_integer() for w in alpha)
    values = [complex(w) for w in alpha] if exact else list(alpha)
    active = sorted({idx for _, mons, _ in eqs for m in mons for idx in m})
    pos = {idx: p for p, idx in enumerate(active)}
    checks = [[] for _ in active]
    for _, mons, target in eqs:
        last = max(pos[idx] for m in mons for idx in m)
        checks[last].append(([tuple(pos[i] for i in m) for m in mons], target))
    choice = [0] * len(active)
    cur = [values[0]] * len(active)

    def rec(p):
        if p == len(active):
            return True
        for a, val in enumerate(values):
            counter.tick()
            choice[p] = a
            cur[p] = val
            ok = True
            for mons, target in checks[p]:
                total = 0
                for m in mons:
                    prod = 1
                    for q in m:
                        prod = prod * cur[q]
                    total = total + prod
                if total != target:
                    ok = False
                    break
            if ok and rec(p + 1):
                return True
        return False

    if not rec(0):
        return None
    out = [0] * len(raw)
    for idx, p in pos.items():
        out[idx] = choice[p]
    return out


def _is_reduced(n, raw, eqs) -> bool:
    covered = {idx for _, mons, _ in eqs for m in mons for idx in m}
    if len(covered) != len(raw):
        return False
    deg = [{} for _ in range(n)]
    for u, v, cu, cv, _ in raw:
        deg[u][cu] = deg[u].get(cu, 0) + 1
        deg[v][cv] = deg[v].get(cv, 0) + 1
    for u, v, cu, cv, _ in raw:
        if cu == cv and min(deg[u][cu], deg[v][cv]) == 1 and max(deg[u][cu], deg[v][cv]) >= 2:
            return False
    return True


# exploration -----------------------------------------------------------------------


@dataclass
class _Options:
    reduced: bool = False
    cap: int | None = None


def _explore_seed(space, k, seed, pairs, seen, found, counter, opts):
    """Enumerate completions of one seed; new classes go into ``seen``/``found``."""
    n = space.n
    fixed = {}
    for c, m in enumerate(seed):
        for p in m:
            fixed[p] = c
    free = [p for p in pairs if p not in fixed]
    if space.mono_only:
        options = [None] + [(c, c) for c in range(k)]
    else:
        options = [None] + [(a, b) for a in range(k) for b in range(k)]
    base = [(u, v, c, c, 0) for (u, v), c in fixed.items()]
    threshold = 2 * k - n + 1
    alpha = space.weight_alphabet
    parity = _unit_alphabet(alpha)
    for assign in itertools.product(options, repeat=len(free)):
        counter.tick()
        raw = base + [(u, v, o[0], o[1], 0) for (u, v), o in zip(free, assign) if o is not None]
        raw.sort()
        if threshold > 0 and not _deg_obs_ok(n, k, raw, threshold):
            counter.pruned += 1
            continue
        if space.up_to_iso and space.base_graph is None:
            code = canonical_code_raw(n, raw, k)
            key = canonical_key(n, k, (), code).decode()
        else:
            code = None
            if space.up_to_iso:
                # vertices stay on the skeleton; only colours are renamed
                raw = _rename_colors(raw)
            key = json.dumps(raw)
        if key in seen:
            counter.pruned += 1
            continue
        seen.add(key)
        if code is not None:
            rep = decode_canonical(n, k, (), code)
            raw = [(e.u, e.v, e.color_at_u, e.color_at_v, 0) for e in rep.edges]
        eqs = _equations(n, raw, opts.cap)
        if opts.reduced and not _is_reduced(n, raw, eqs):
            counter.pruned += 1
            continue
        sol = _solve_weights(n, raw, alpha, counter, eqs, parity)
        if sol is None:
            counter.pruned += 1
            continue
        g = ExperimentGraph(n, tuple(HalfColoredEdge(u, v, cu, cv, alpha[sol[j]]) for j, (u, v, cu, cv, _) in enumerate(raw)))
        found[key] = (k, g)


def _rename_colors(raw):
    cmap: dict[int, int] = {}
    for _, _, cu, cv, _ in raw:
        cmap.setdefault(cu, len(cmap))
        cmap.setdefault(cv, len(cmap))
    return [(u, v, cmap[cu], cmap[cv], w) for u, v, cu, cv, w in raw]


def _deg_obs_ok(n, k, raw, threshold) -> bool:
    deg = [[0] * k for _ in range(n)]
    for u, v, cu, cv, _ in raw:
        deg[u][cu] += 1
        deg[v][cv] += 1
    return all(sum(1 for d in row if d == 1) >= threshold for row in deg)


def _run_chunk(space, k, seeds, budget, opts):
    # worker entry point; each worker keeps its own duplicate set
    counter = _Counter(0, 0, budget)
    seen, found = set(), {}
    complete = True
    pairs = space.pairs()
    try:
        for seed in seeds:
            _explore_seed(space, k, seed, pairs, seen, found, counter, opts)
    except _BudgetExceeded:
        complete = False
    return found, counter.explored, counter.pruned, complete


# checkpoints ---------------------------------------------------------------------


def _write_checkpoint(path, space, opts, k, next_seed, counter, seen, found):
    doc = {
        "format": CHECKPOINT_FORMAT,
        "space": space.to_json(),
        "reduced": opts.reduced,
        "k": k,
        "next_seed": next_seed,
        "explored": counter.explored,
        "pruned": counter.pruned,
        "seen": sorted(seen),
        "found": {key: {"mu": mu, "graph": io.graph_to_dict(g)} for key, (mu, g) in sorted(found.items())},
    }
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(doc, sort_keys=True))
    os.replace(tmp, path)


def _read_checkpoint(path, space, opts):
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != CHECKPOINT_FORMAT:
        raise InputError(f"{path}: not a search checkpoint")
    if doc["space"] != json.loads(json.dumps(space.to_json())) or doc["reduced"] != opts.reduced:
        raise InputError(f"{path}: checkpoint was written for a different search space")
    found = {key: (rec["mu"], io.graph_from_dict(rec["graph"])) for key, rec in doc["found"].items()}
    return doc["k"], doc["next_seed"], doc["explored"], doc["pruned"], set(doc["seen"]), found


# driver --------------------------------------------------------------------------


def search_max_dimension(
    space: SearchSpace,
    budget: int = DEFAULT_BUDGET,
    target_mu: int | None = None,
    collect_all: bool = False,
    reduced: bool = False,
    workers: int = 1,
    checkpoint=None,
    resume=None,
    checkpoint_every: int = CHECKPOINT_EVERY,
    cap: int | None = None,
) -> SearchResult:
    """Largest dimension reachable in ``space``, with one witness per class.

    Colour counts are tried from ``min(max_colors, n-1)`` down to
    ``target_mu`` (default 1), stopping at the first count that has a valid
    graph unless ``collect_all``.  ``budget`` bounds the explored nodes
    (colourings plus weight assignments); when it runs out the result is
    returned with ``complete=False``.  ``reduced`` keeps only graphs that
    are fixpoints of the pruning rules.

    ``checkpoint`` names a file rewritten every ``checkpoint_every`` nodes
    (at seed boundaries) and on exit; ``resume`` continues from one.
    Checkpointing needs ``workers == 1``.
    """
    opts = _Options(reduced, cap)
    if workers < 1:
        raise InputError("workers must be at least 1")
    if workers > 1 and (checkpoint or resume):
        raise InputError("checkpointing is only supported with a single worker")
    kmax = min(space.max_colors, space.n - 1)
    kmin = 1 if target_mu is None else target_mu
    if kmin < 1:
        raise InputError("target_mu must be at least 1")
    ks = list(range(kmax, kmin - 1, -1))
    pairs = space.pairs()

    seen: set[str] = set()
    found: dict[str, tuple[int, ExperimentGraph]] = {}
    counter = _Counter(0, 0, budget)
    start_k, start_seed = (ks[0] if ks else 0), 0
    if resume is not None and Path(resume).exists():
        start_k, start_seed, counter.explored, counter.pruned, seen, found = _read_checkpoint(resume, space, opts)
    complete = True
    last_mark = counter.explored

    for k in ks:
        if k > start_k:
            continue
        if any(mu > k for mu, _ in found.values()) and not collect_all:
            break
        seeds = _seeds(space, k, pairs)
        first = start_seed if k == start_k else 0
        if workers == 1:
            for idx in range(first, len(seeds)):
                local_seen, local_found = set(seen), {}
                snap = (counter.explored, counter.pruned)
                try:
                    _explore_seed(space, k, seeds[idx], pairs, local_seen, local_found, counter, opts)
                except _BudgetExceeded:
                    complete = False
                    if checkpoint:
                        counter.explored, counter.pruned = snap
                        _write_checkpoint(checkpoint, space, opts, k, idx, counter, seen, found)
                        counter.explored = budget + 1
                    break
                seen = local_seen
                found.update(local_found)
                if checkpoint and counter.explored - last_mark >= checkpoint_every:
                    _write_checkpoint(checkpoint, space, opts, k, idx + 1, counter, seen, found)
                    last_mark = counter.explored
        else:
            chunks = [seeds[first + j :: workers] for j in range(workers)]
            remaining = max(budget - counter.explored, 0)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_chunk, *zip(*[(space, k, c, remaining, opts) for c in chunks])))
            for part_found, explored, pruned, ok in parts:
                for key in sorted(part_found):
                    found.setdefault(key, part_found[key])
                counter.explored += explored
                counter.pruned += pruned
                complete = complete and ok
        if not complete:
            break
        if checkpoint and k - 1 >= kmin:
            _write_checkpoint(checkpoint, space, opts, k - 1, 0, counter, seen, found)
        if not collect_all and any(mu == k for mu, _ in found.values()):
            break

    if checkpoint and complete:
        _write_checkpoint(checkpoint, space, opts, 0, 0, counter, seen, found)

    best = max((mu for mu, _ in found.values()), default=0)
    witnesses = [g for key, (mu, g) in sorted(found.items()) if mu == best]
    for g in witnesses:
        v = verify(g, cap)
        if not v.is_valid or v.mu != best:
            raise LemmaViolation("search produced a witness that fails verification", g)
    return SearchResult(
        best_mu=best,
        witnesses=witnesses,
        explored=min(counter.explored, budget),
        pruned=counter.pruned,
        complete=complete,
        found={key: mu for key, (mu, _) in sorted(found.items())},
        representatives={key: g for key, (_, g) in sorted(found.items())},
    )


# polynomial export -----------------------------------------------------------------


def polynomial_system(g: ExperimentGraph, cap: int | None = None):
    """``[(coloring, [[pair, ...], ...], rhs)]``: one equation per feasible colouring.

    Monomials are listed in matching enumeration order; weights of ``g``
    are ignored.
    """
    out: dict[tuple, list] = {}
    for p in enumerate_perfect_matchings(g, cap):
        col = [0] * g.vertex_count
        for idx in p.edges:
            e = g.edges[idx]
            col[e.u], col[e.v] = e.color_at_u, e.color_at_v
        out.setdefault(tuple(col), []).append([g.edges[idx].pair for idx in p.edges])
    return [(c, out[c], 1 if len(set(c)) <= 1 else 0) for c in sorted(out)]


def export_polynomial_system(g: ExperimentGraph, cap: int | None = None) -> str:
    lab = g.vertex_label
    lines = []
    for _, monomials, rhs in polynomial_system(g, cap):
        terms = ["*".join(f"x_{lab(u)}_{lab(v)}" for u, v in m) or "1" for m in monomials]
        lines.append(" + ".join(terms) + f" = {rhs}")
    return "\n".join(lines) + ("\n" if lines else "")


__all__ = [
    "ALPHABETS",
    "SearchResult",
    "SearchSpace",
    "export_polynomial_system",
    "polynomial_system",
    "search_max_dimension",
]
