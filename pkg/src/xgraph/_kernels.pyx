# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Outputs are identical to ``_pykernels``."""

from libc.stdlib cimport malloc, free


cdef struct MatchState:
    int n
    int *fwd_start
    int *fwd_edge
    int *fwd_other
    char *covered
    int *stack
    int depth
    long limit
    long found


cdef int _match_rec(MatchState *s, int v, list out) except -1:
    cdef int i, k, w
    while v < s.n and s.covered[v]:
        v += 1
    if v == s.n:
        out.append(tuple([s.stack[i] for i in range(s.depth)]))
        s.found += 1
        return 1 if s.found >= s.limit else 0
    s.covered[v] = 1
    for i in range(s.fwd_start[v], s.fwd_start[v + 1]):
        w = s.fwd_other[i]
        if s.covered[w]:
            continue
        s.covered[w] = 1
        s.stack[s.depth] = s.fwd_edge[i]
        s.depth += 1
        if _match_rec(s, v + 1, out):
            return 1
        s.depth -= 1
        s.covered[w] = 0
    s.covered[v] = 0
    return 0


def perfect_matchings(int n, us, vs, long limit):
    cdef list out = []
    cdef int m = len(us)
    cdef int k, v
    cdef MatchState s
    if n % 2 or limit <= 0:
        return out
    if n == 0:
        out.append(())
        return out
    s.n = n
    s.limit = limit
    s.found = 0
    s.depth = 0
    s.fwd_start = <int *> malloc((n + 1) * sizeof(int))
    s.fwd_edge = <int *> malloc((m + 1) * sizeof(int))
    s.fwd_other = <int *> malloc((m + 1) * sizeof(int))
    s.covered = <char *> malloc(n * sizeof(char))
    s.stack = <int *> malloc((n // 2 + 1) * sizeof(int))
    try:
        for v in range(n + 1):
            s.fwd_start[v] = 0
        for v in range(n):
            s.covered[v] = 0
        for k in range(m):
            s.fwd_start[<int> us[k] + 1] += 1
        for v in range(n):
            s.fwd_start[v + 1] += s.fwd_start[v]
        # edges arrive sorted by (u, v), so a running fill keeps index order
        for k in range(m):
            s.fwd_edge[k] = k
            s.fwd_other[k] = vs[k]
        _match_rec(&s, 0, out)
    finally:
        free(s.fwd_start)
        free(s.fwd_edge)
        free(s.fwd_other)
        free(s.covered)
        free(s.stack)
    return out


cdef struct CanonState:
    int n
    int m
    int ncolors
    int nweights
    int *col
    int *wid
    int *pos_cell
    int *cell_of
    int *code
    int *best
    int have_best
    int *sigma
    char *used
    int *cmap
    int *assigned
    int nassigned


cdef inline int _token(CanonState *s, int a, int b):
    cdef int x = s.sigma[a]
    cdef int y = s.sigma[b]
    cdef int ca = s.col[x * s.n + y]
    cdef int cb
    if ca < 0:
        return 0
    cb = s.col[y * s.n + x]
    if s.cmap[ca] < 0:
        s.cmap[ca] = s.nassigned
        s.assigned[s.nassigned] = ca
        s.nassigned += 1
    if s.cmap[cb] < 0:
        s.cmap[cb] = s.nassigned
        s.assigned[s.nassigned] = cb
        s.nassigned += 1
    return 1 + (s.cmap[ca] * s.ncolors + s.cmap[cb]) * s.nweights + s.wid[x * s.n + y]


cdef int _canon_rec(CanonState *s, int b, int less):
    cdef int i, x, a, t, ref, mark, state, ok
    cdef int updated = 0
    cdef int base = b * (b - 1) // 2
    if b == s.n:
        for i in range(s.m):
            s.best[i] = s.code[i]
        s.have_best = 1
        return 1
    for x in range(s.n):
        if s.used[x] or s.cell_of[x] != s.pos_cell[b]:
            continue
        s.used[x] = 1
        s.sigma[b] = x
        mark = s.nassigned
        state = less or not s.have_best
        ok = 1
        for a in range(b):
            t = _token(s, a, b)
            s.code[base + a] = t
            if not state:
                ref = s.best[base + a]
                if t > ref:
                    ok = 0
                    break
                if t < ref:
                    state = 1
        if ok and _canon_rec(s, b + 1, state):
            updated = 1
            less = 0
        while s.nassigned > mark:
            s.nassigned -= 1
            s.cmap[s.assigned[s.nassigned]] = -1
        s.used[x] = 0
    return updated


def canonical_code(int n, colmat, wmat, pos_cell, cell_of, int ncolors, int nweights):
    cdef int i
    cdef CanonState s
    cdef int nc = ncolors if ncolors > 0 else 1
    s.n = n
    s.m = n * (n - 1) // 2
    s.ncolors = ncolors
    s.nweights = nweights
    s.have_best = 0
    s.nassigned = 0
    s.col = <int *> malloc((n * n + 1) * sizeof(int))
    s.wid = <int *> malloc((n * n + 1) * sizeof(int))
    s.pos_cell = <int *> malloc((n + 1) * sizeof(int))
    s.cell_of = <int *> malloc((n + 1) * sizeof(int))
    s.code = <int *> malloc((s.m + 1) * sizeof(int))
    s.best = <int *> malloc((s.m + 1) * sizeof(int))
    s.sigma = <int *> malloc((n + 1) * sizeof(int))
    s.used = <char *> malloc((n + 1) * sizeof(char))
    s.cmap = <int *> malloc(nc * sizeof(int))
    s.assigned = <int *> malloc(nc * sizeof(int))
    try:
        for i in range(n * n):
            s.col[i] = colmat[i]
            s.wid[i] = wmat[i]
        for i in range(n):
            s.pos_cell[i] = pos_cell[i]
            s.cell_of[i] = cell_of[i]
            s.used[i] = 0
        for i in range(nc):
            s.cmap[i] = -1
        _canon_rec(&s, 0, 0)
        if not s.have_best:
            return ()
        return tuple([s.best[i] for i in range(s.m)])
    finally:
        free(s.col)
        free(s.wid)
        free(s.pos_cell)
        free(s.cell_of)
        free(s.code)
        free(s.best)
        free(s.sigma)
        free(s.used)
        free(s.cmap)
        free(s.assigned)
