"""Exact searches: largest recoverable codes, minrank, and nullspace codes.

The largest RDSS code on ``G`` is a maximum independent set of the
confusion graph on Z_q^n.  That graph is never built: confusability of
``x, y`` depends only on ``y - x`` (see
:func:`~rdssdual.confusion.confusion_differences`), so adjacency rows are
computed on demand from one boolean array over differences.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .alphabet import DEFAULT_MAX_SPACE, require_prime, word_space
from .confusion import Codebook, confusion_differences
from .errors import BudgetExceeded, NotFitting, SpaceExceeded
from .graph import StorageGraph
from .linalg import gf2_rank, nullspace_basis, rank_gf, span

DEFAULT_TIME_BUDGET = 60.0

# Above these sizes the clique-cover bound and the adjacency cache are skipped.
CLIQUE_BOUND_LIMIT = 4096
ROW_CACHE_LIMIT = 1 << 15
# Graph automorphisms are enumerated by brute force up to this many vertices.
AUTOMORPHISM_LIMIT = 7


@dataclass(frozen=True)
class FittingMatrix:
    """An ``n x n`` matrix over F_q with nonzero diagonal, supported on edges.

    Row ``i`` is read as the parity check ``sum_j a_ij x_j = 0``; with a unit
    diagonal this is ``x_i = sum_{j in N(i)} -a_ij x_j``.
    """

    graph: StorageGraph
    q: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        require_prime(self.q)
        g = self.graph
        rows = tuple(tuple(int(x) % self.q for x in row) for row in self.entries)
        if len(rows) != g.n or any(len(r) != g.n for r in rows):
            raise NotFitting(f"matrix must be {g.n} x {g.n}")
        for i, row in enumerate(rows):
            if row[i] == 0:
                raise NotFitting(f"zero diagonal entry at row {i + 1}")
            allowed = set(g.out_neighbors[i]) | {i}
            for j, x in enumerate(row):
                if x and j not in allowed:
                    raise NotFitting(f"entry ({i + 1}, {j + 1}) is nonzero off the graph")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return self.graph.n

    def rank(self) -> int:
        return rank_gf(self.entries, self.q)

    def format(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


@dataclass(frozen=True)
class SearchResult:
    codebook: Codebook
    size: int
    exact: bool
    nodes_explored: int
    elapsed: float

    @property
    def dim(self) -> float:
        return math.log(self.size, self.codebook.q)


@dataclass(frozen=True)
class MinrankResult:
    rank: int
    witness: FittingMatrix
    matrices_checked: int


def _bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _greedy_code(space, bad: np.ndarray) -> list[int]:
    """First-fit code in rank order; always contains the zero word."""
    offsets = np.flatnonzero(bad)
    blocked = np.zeros(space.size, dtype=bool)
    chosen = []
    for r in range(space.size):
        if blocked[r]:
            continue
        chosen.append(r)
        if offsets.size:
            blocked[space.shift(offsets, space.digits[r])] = True
    return chosen


def automorphisms(g: StorageGraph) -> list[tuple[int, ...]]:
    """Vertex permutations preserving every directed edge (identity only above the limit)."""
    ident = tuple(range(g.n))
    if g.n > AUTOMORPHISM_LIMIT:
        return [ident]
    nbrs = [set(x) for x in g.out_neighbors]
    degs = [len(x) for x in nbrs]
    out = []
    for perm in itertools.permutations(range(g.n)):
        if any(degs[perm[i]] != degs[i] for i in range(g.n)):
            continue
        if all({perm[j] for j in nbrs[i]} == nbrs[perm[i]] for i in range(g.n)):
            out.append(perm)
    return out


def _orbit_duplicates(g: StorageGraph, supports: np.ndarray) -> set[int]:
    """Positions whose support is an automorphic image of an earlier one's.

    Relabelling the nonzero symbols of each coordinate and permuting vertices
    by an automorphism both fix the zero word and preserve confusability, so
    two candidates with such supports lead to equally large codes.
    """
    perms = automorphisms(g)
    seen: set[frozenset] = set()
    dup = set()
    for k, row in enumerate(supports):
        support = frozenset(np.flatnonzero(row).tolist())
        if support in seen:
            dup.add(k)
            continue
        for perm in perms:
            seen.add(frozenset(perm[i] for i in support))
    return dup


def rdss_exact(
    g: StorageGraph,
    q: int,
    max_space: int = DEFAULT_MAX_SPACE,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> SearchResult:
    """Largest RDSS code on ``g`` by branch and bound.

    The zero word is fixed into the solution; every maximum code has a
    translate containing it.  Branching visits candidates in rank order and
    prunes with a greedy clique cover of the remaining candidates (each
    clique of mutually confusable words contributes at most one codeword),
    which is never weaker than the plain ``|current| + |candidates|`` bound.
    The second codeword is only tried once per orbit of supports under the
    graph's automorphisms.
    If ``time_budget`` runs out the best code found so far is returned with
    ``exact=False``.
    """
    start = time.monotonic()
    deadline = start + time_budget
    space = word_space(g.n, q, max_space)
    bad = confusion_differences(g, q, max_space)

    best = _greedy_code(space, bad)
    nodes = 0

    cands = np.flatnonzero(~bad)
    cands = cands[cands != 0]
    c = int(cands.size)
    cand_digits = space.digits[cands]
    rows: dict[int, int] = {}

    def adj(k: int) -> int:
        row = rows.get(k)
        if row is None:
            diff = space.ranks_of((cand_digits - cand_digits[k]) % q)
            row = _bits_to_int(bad[diff])
            if c <= ROW_CACHE_LIMIT:
                rows[k] = row
        return row

    def frame(mask: int) -> list:
        order = []
        m = mask
        while m:
            low = m & -m
            order.append(low.bit_length() - 1)
            m ^= low
        if len(order) <= CLIQUE_BOUND_LIMIT:
            bounds = [0] * len(order)
            cliques: list[int] = []
            for idx in range(len(order) - 1, -1, -1):
                v = order[idx]
                row = adj(v)
                for ci, members in enumerate(cliques):
                    if members & ~row == 0:
                        cliques[ci] = members | (1 << v)
                        break
                else:
                    cliques.append(1 << v)
                bounds[idx] = len(cliques)
        else:
            bounds = list(range(len(order), 0, -1))
        return [order, bounds, 0, mask]

    exact = True
    path: list[int] = []
    if time.monotonic() >= deadline:
        exact = False
        stack = []
    else:
        nodes = 1
        stack = [frame((1 << c) - 1)] if c else []
    root_skip = _orbit_duplicates(g, cand_digits != 0) if stack else set()
    while stack:
        if time.monotonic() >= deadline:
            exact = False
            break
        top = stack[-1]
        order, bounds, idx, rem = top
        if idx >= len(order) or 1 + len(path) + bounds[idx] <= len(best):
            stack.pop()
            if path:
                path.pop()
            continue
        v = order[idx]
        top[2] = idx + 1
        rem &= ~(1 << v)
        top[3] = rem
        if not path and v in root_skip:
            continue
        path.append(v)
        if 1 + len(path) > len(best):
            best = [0] + [int(cands[k]) for k in path]
        nxt = rem & ~adj(v)
        if nxt:
            nodes += 1
            stack.append(frame(nxt))
        else:
            path.pop()

    words = tuple(space.word(r) for r in sorted(best))
    return SearchResult(
        codebook=Codebook(words, q),
        size=len(words),
        exact=exact,
        nodes_explored=nodes,
        elapsed=time.monotonic() - start,
    )


def minrank(
    g: StorageGraph,
    q: int,
    max_space: int = DEFAULT_MAX_SPACE,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> MinrankResult:
    """Minimum rank over F_q of a matrix fitting ``g``, by full enumeration.

    The diagonal is fixed to 1 (scaling a row by a nonzero constant keeps
    its rank and support).  Edge entries are enumerated in row-major order,
    each over ``0..q-1``, first edge most significant; the first matrix of
    minimum rank is the witness.
    """
    require_prime(q)
    edges = g.edges()
    total = q ** len(edges)
    if total > max_space:
        raise SpaceExceeded(f"{q}^{len(edges)} = {total} fitting matrices exceeds max_space={max_space}")
    deadline = time.monotonic() + time_budget
    n = g.n

    best_rank = n + 1
    best_entries = None
    checked = 0
    if q == 2:
        # Row i's edge bits are a contiguous block of the enumeration counter.
        degs = [len(nbrs) for nbrs in g.out_neighbors]
        shifts = []
        acc = len(edges)
        for d in degs:
            acc -= d
            shifts.append(acc)
        patterns = []
        for i, nbrs in enumerate(g.out_neighbors):
            table = []
            for bits in range(1 << len(nbrs)):
                row = 1 << i
                for k, j in enumerate(nbrs):
                    if bits >> (len(nbrs) - 1 - k) & 1:
                        row |= 1 << j
                table.append(row)
            patterns.append(table)
        masks = [(1 << d) - 1 for d in degs]
        for counter in range(total):
            if counter & 0x3FF == 0 and time.monotonic() > deadline:
                raise BudgetExceeded("minrank enumeration ran out of time")
            rows = [patterns[i][(counter >> shifts[i]) & masks[i]] for i in range(n)]
            r = gf2_rank(rows)
            checked += 1
            if r < best_rank:
                best_rank = r
                best_entries = [[(rows[i] >> j) & 1 for j in range(n)] for i in range(n)]
                if r == 1:
                    break
    else:
        for counter, values in enumerate(itertools.product(range(q), repeat=len(edges))):
            if counter & 0x3FF == 0 and time.monotonic() > deadline:
                raise BudgetExceeded("minrank enumeration ran out of time")
            a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for (i, j), x in zip(edges, values):
                a[i][j] = x
            r = rank_gf(a, q)
            checked += 1
            if r < best_rank:
                best_rank, best_entries = r, a
                if r == 1:
                    break
    witness = FittingMatrix(g, q, tuple(tuple(row) for row in best_entries))
    return MinrankResult(best_rank, witness, checked)


def nullspace_code(a: FittingMatrix) -> Codebook:
    """All ``x`` with ``a x = 0``; a linear RDSS code of dimension ``n - rank(a)``."""
    basis = nullspace_basis(a.entries, a.q)
    words = span(basis, a.q, a.n) if basis else [(0,) * a.n]
    return Codebook(tuple(words), a.q)


def linear_recovery(a: FittingMatrix, i: int, side: Sequence[int]) -> int:
    """``x_i`` from its neighbours, solving row ``i`` of ``a x = 0``."""
    q = a.q
    row = a.entries[i]
    acc = sum(row[j] * s for j, s in zip(a.graph.out_neighbors[i], side))
    return (-acc * pow(row[i], -1, q)) % q
