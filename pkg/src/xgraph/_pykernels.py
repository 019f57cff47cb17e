"""Pure-Python kernels.  Same signatures and outputs as ``_kernels.pyx``."""


def perfect_matchings(n, us, vs, limit):
    """Perfect matchings of a simple graph as tuples of edge indices.

    ``us``/``vs`` list the edge endpoints with ``us[k] < vs[k]``, sorted
    lexicographically.  Branches on the lowest uncovered vertex and tries
    its edges in index order, so the output is lexicographic on the sorted
    index tuples.  At most ``limit`` matchings are returned.
    """
    if n % 2 or limit <= 0:
        return []
    out = []
    if n == 0:
        out.append(())
        return out
    forward = [[] for _ in range(n)]
    for k in range(len(us)):
        forward[us[k]].append((k, vs[k]))
    covered = [False] * n
    stack = []

    def rec(v):
        while v < n and covered[v]:
            v += 1
        if v == n:
            out.append(tuple(stack))
            return len(out) >= limit
        covered[v] = True
        for k, w in forward[v]:
            if covered[w]:
                continue
            covered[w] = True
            stack.append(k)
            if rec(v + 1):
                return True
            stack.pop()
            covered[w] = False
        covered[v] = False
        return False

    rec(0)
    return out


def canonical_code(n, colmat, wmat, pos_cell, cell_of, ncolors, nweights):
    """Lexicographically least edge code over cell-respecting relabellings.

    ``colmat[x*n+y]`` is the colour of edge {x,y} at x (``-1`` if absent) and
    ``wmat[x*n+y]`` its weight id.  New label ``p`` may only be given to an
    old vertex ``x`` with ``cell_of[x] == pos_cell[p]``.  Pairs are emitted
    in colex order and colours renamed by first appearance, so the code is
    invariant under colour permutations as well.
    """
    m = n * (n - 1) // 2
    best = [None]
    code = [0] * m
    sigma = [0] * n
    used = [False] * n
    cmap = [-1] * max(ncolors, 1)
    assigned = []  # colours renamed so far, in order

    def token(a, b):
        x = sigma[a]
        y = sigma[b]
        ca = colmat[x * n + y]
        if ca < 0:
            return 0
        cb = colmat[y * n + x]
        if cmap[ca] < 0:
            cmap[ca] = len(assigned)
            assigned.append(ca)
        if cmap[cb] < 0:
            cmap[cb] = len(assigned)
            assigned.append(cb)
        return 1 + (cmap[ca] * ncolors + cmap[cb]) * nweights + wmat[x * n + y]

    def rec(b, less):
        # less: current prefix is already strictly below best's prefix.
        # Returns True when best was replaced inside this subtree, after
        # which the prefix up to here equals best's and comparisons resume.
        if b == n:
            best[0] = list(code)
            return True
        updated = False
        base = b * (b - 1) // 2
        cell = pos_cell[b]
        for x in range(n):
            if used[x] or cell_of[x] != cell:
                continue
            used[x] = True
            sigma[b] = x
            mark = len(assigned)
            state = less or best[0] is None
            ok = True
            for a in range(b):
                t = token(a, b)
                code[base + a] = t
                if not state:
                    ref = best[0][base + a]
                    if t > ref:
                        ok = False
                        break
                    if t < ref:
                        state = True
            if ok and rec(b + 1, state):
                updated = True
                less = False
            while len(assigned) > mark:
                cmap[assigned.pop()] = -1
            used[x] = False
        return updated

    rec(0, False)
    return tuple(best[0]) if best[0] is not None else ()
