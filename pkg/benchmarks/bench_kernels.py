"""Compare the compiled and pure-Python kernels on the search workload.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--graphs N] [--skip-search]
"""

import argparse
import itertools
import os
import random
import subprocess
import sys
import time

from xgraph import kernels
from xgraph.graph import _vertex_cells


def dense_graph(n, rng):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = sorted(p for p in pairs if rng.random() < 0.8)
    return n, [(u, v, rng.randrange(3), rng.randrange(3), 0) for u, v in chosen]


def symmetric_graph(n, rng):
    # one colour, near-regular: the invariant cells barely split, so the
    # canonical search has to branch
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = sorted(p for p in pairs if rng.random() < 0.5)
    return n, [(u, v, 0, 0, 0) for u, v in chosen]


def search_seconds(backend):
    env = dict(os.environ, XGRAPH_PURE_PYTHON="1" if backend == "python" else "0")
    code = (
        "import time\n"
        "from xgraph.search import SearchSpace, search_max_dimension\n"
        "t = time.perf_counter()\n"
        "search_max_dimension(SearchSpace(6, 3, 'pm1'), target_mu=3)\n"
        "print(time.perf_counter() - t)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def matching_args(n, raw):
    return n, [e[0] for e in raw], [e[1] for e in raw], 10**7


def canon_args(n, raw):
    colmat, wmat = [-1] * (n * n), [0] * (n * n)
    for u, v, cu, cv, _ in raw:
        colmat[u * n + v], colmat[v * n + u] = cu, cv
    pos_cell, cell_of = _vertex_cells(n, raw)
    return n, colmat, wmat, pos_cell, cell_of, 3, 1


def timed(fn, cases, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in cases:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", type=int, default=200)
    ap.add_argument("--skip-search", action="store_true", help="Skip the end-to-end search timing.")
    args = ap.parse_args()
    rng = random.Random(0)
    graphs = {n: [dense_graph(n, rng) for _ in range(args.graphs)] for n in (6, 8, 10)}
    symmetric = {n: [symmetric_graph(n, rng) for _ in range(args.graphs)] for n in (6, 8, 10)}
    backends = kernels.backends()
    print(f"backends available: {', '.join(sorted(backends))} (selected: {kernels.BACKEND})")
    print(f"{'kernel':<20}{'n':>3}" + "".join(f"{name:>12}" for name in sorted(backends)) + f"{'speedup':>10}")
    for kernel, build in (("perfect_matchings", matching_args), ("canonical_code", canon_args)):
        for n, gs in graphs.items():
            cases = [build(*g) for g in gs]
            times = {name: timed(getattr(impl, kernel), cases, args.repeat) for name, impl in backends.items()}
            row = f"{kernel:<20}{n:>3}" + "".join(f"{times[name]:>11.3f}s" for name in sorted(times))
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)
    for n, gs in symmetric.items():
        cases = [canon_args(*g) for g in gs]
        times = {name: timed(impl.canonical_code, cases, args.repeat) for name, impl in backends.items()}
        row = f"{'canonical (1 col)':<20}{n:>3}" + "".join(f"{times[name]:>11.3f}s" for name in sorted(times))
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)
    if not args.skip_search:
        times = {name: search_seconds(name) for name in backends}
        row = f"{'search n=6 d=3':<20}{6:>3}" + "".join(f"{times[name]:>11.3f}s" for name in sorted(times))
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)
    for a, b in itertools.combinations(sorted(backends), 2):
        same = all(
            getattr(backends[a], k)(*f(*g)) == getattr(backends[b], k)(*f(*g))
            for k, f in (("perfect_matchings", matching_args), ("canonical_code", canon_args))
            for g in graphs[6][:20]
        )
        print(f"outputs {a} vs {b}: {'identical' if same else 'DIFFER'}")


if __name__ == "__main__":
    main()
