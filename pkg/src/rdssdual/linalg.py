"""Gaussian elimination over a prime field F_q.

Matrices are sequences of rows of ints.  GF(2) has a bitset fast path used
by the minrank enumerator.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .alphabet import require_prime

Matrix = Sequence[Sequence[int]]


def rref(a: Matrix, q: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns of ``a`` over F_q."""
    require_prime(q)
    rows = [[x % q for x in row] for row in a]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(x - f * y) % q for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_gf(a: Matrix, q: int) -> int:
    return len(rref(a, q)[1])


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of rows packed as int bitmasks."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
    return len(basis)


def nullspace_basis(a: Matrix, q: int) -> list[list[int]]:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    reduced, pivots = rref(a, q)
    ncols = len(a[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = (-row[f]) % q
        basis.append(v)
    return basis


def span(vectors: Sequence[Sequence[int]], q: int, length: int) -> list[tuple[int, ...]]:
    """All F_q combinations of ``vectors``; the first vector's coefficient varies fastest."""
    out = []
    for coeffs in itertools.product(range(q), repeat=len(vectors)):
        coeffs = coeffs[::-1]
        w = [0] * length
        for c, v in zip(coeffs, vectors):
            if c:
                w = [(x + c * y) % q for x, y in zip(w, v)]
        out.append(tuple(w))
    return out


def independent_rows(a: Matrix, q: int) -> list[int]:
    """Indices of the first rows (in order) that form a basis of the row space."""
    chosen: list[int] = []
    current = 0
    for i in range(len(a)):
        r = rank_gf([a[k] for k in chosen] + [a[i]], q)
        if r > current:
            chosen.append(i)
            current = r
    return chosen


def express_in_rows(basis: Matrix, target: Sequence[int], q: int) -> list[int]:
    """Coefficients ``lam`` with ``sum_k lam[k] * basis[k] == target`` over F_q.

    ``basis`` must be linearly independent and ``target`` in its span.
    """
    k = len(basis)
    # Solve basis^T lam = target.
    aug = [[basis[r][c] for r in range(k)] + [target[c]] for c in range(len(target))]
    reduced, pivots = rref(aug, q)
    if k in pivots:
        raise ValueError("target is not in the span of the basis rows")
    lam = [0] * k
    for row, p in zip(reduced, pivots):
        lam[p] = row[k]
    return lam
