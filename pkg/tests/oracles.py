"""Brute-force reference computations, independent of the library's fast paths."""

from __future__ import annotations

import itertools
from functools import lru_cache


def words(n, q):
    return list(itertools.product(range(q), repeat=n))


def confusable_naive(x, y, nbrs):
    for i in range(len(x)):
        if x[i] != y[i] and all(x[j] == y[j] for j in nbrs[i]):
            return True
    return False


def max_independent_set(vertices, conflict):
    """Exact independence number by include/exclude recursion with memoisation."""
    k = len(vertices)
    adj = [0] * k
    for a in range(k):
        for b in range(a + 1, k):
            if conflict(vertices[a], vertices[b]):
                adj[a] |= 1 << b
                adj[b] |= 1 << a

    @lru_cache(maxsize=None)
    def solve(mask):
        if mask == 0:
            return 0
        v = mask.bit_length() - 1
        rest = mask & ~(1 << v)
        skip = solve(rest)
        take = 1 + solve(rest & ~adj[v])
        return max(skip, take)

    return solve((1 << k) - 1)


def max_rdss_size(g, q):
    nbrs = g.out_neighbors
    return max_independent_set(words(g.n, q), lambda x, y: confusable_naive(x, y, nbrs))


def det_mod(m, q):
    """Leibniz determinant mod q."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += -prod if inversions % 2 else prod
    return total % q


def rank_by_minors(m, q):
    rows, cols = len(m), len(m[0])
    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                if det_mod([[m[r][c] for c in cs] for r in rs], q):
                    return k
    return 0


def minrank_by_minors(g, q):
    """Minimum over every fitting matrix (all nonzero diagonals, no normalisation)."""
    n = g.n
    edges = g.edges()
    best = n
    for diag in itertools.product(range(1, q), repeat=n):
        for vals in itertools.product(range(q), repeat=len(edges)):
            a = [[0] * n for _ in range(n)]
            for i in range(n):
                a[i][i] = diag[i]
            for (i, j), v in zip(edges, vals):
                a[i][j] = v
            best = min(best, rank_by_minors(a, q))
    return best


def add(u, v, q):
    return tuple((a + b) % q for a, b in zip(u, v))


def sub(u, v, q):
    return tuple((a - b) % q for a, b in zip(u, v))


def min_translate_cover(code, n, q):
    """Fewest translates of ``code`` covering Z_q^n (depth-first set cover).

    Some optimal cover contains the zero translate, and the smallest
    uncovered word must be covered by one of ``w - c`` for ``c`` in the code.
    """
    space = words(n, q)
    index = {w: k for k, w in enumerate(space)}
    full = (1 << len(space)) - 1

    def mask_of(x):
        m = 0
        for c in code:
            m |= 1 << index[add(c, x, q)]
        return m

    masks = {x: mask_of(x) for x in space}
    best = [len(space)]

    def dfs(covered, used):
        if covered == full:
            best[0] = min(best[0], used)
            return
        if used + 1 >= best[0]:
            return
        low = (~covered & full) & -(~covered & full)
        w = space[low.bit_length() - 1]
        for c in code:
            dfs(covered | masks[sub(w, c, q)], used + 1)

    dfs(masks[(0,) * n], 1)
    return best[0]


def best_step_scan(f, n, q):
    """Plain scan over every z: (z, covered count) minimising uncovered, smallest z first."""
    f = set(f)
    best = None
    for z in words(n, q):
        cov = len(f | {add(x, z, q) for x in f})
        if best is None or cov > best[1]:
            best = (z, cov)
    return best
