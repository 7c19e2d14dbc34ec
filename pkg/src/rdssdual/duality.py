"""Index codes from recoverable codes and back, and the two-sided bound report.

An RDSS code ``C`` whose translates ``C + x_0, ..., C + x_{m-1}`` cover
Z_q^n yields an index code: broadcast the index of a class containing the
input, and let receiver ``j`` run ``C``'s recovery function on its side
information shifted back by ``x_i``.  Conversely the largest fiber of any
index code's encoder is an RDSS code.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from .alphabet import (
    DEFAULT_MAX_SPACE,
    Word,
    check_word,
    is_prime,
    project,
    rank,
    require_prime,
    word_space,
    word_sub,
)
from .confusion import Codebook, RecoveryTable, recovery_table
from .covering import HYBRID, RANDOM, TranslateCover, greedy_cover, random_cover
from .errors import IncompleteCover, LengthMismatch, UncoveredWord
from .graph import StorageGraph
from .linalg import express_in_rows, independent_rows
from .search import DEFAULT_TIME_BUDGET, FittingMatrix, minrank, nullspace_code, rdss_exact


def symbols_needed(m: int, q: int) -> int:
    """Smallest ``L`` with ``q**L >= m``."""
    length, reach = 0, 1
    while reach < m:
        reach *= q
        length += 1
    return length


@dataclass(frozen=True)
class IndexCodeSpec:
    graph: StorageGraph
    base: Codebook
    cover: TranslateCover
    table: RecoveryTable

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def m(self) -> int:
        return self.cover.m

    @property
    def length_symbols(self) -> int:
        return symbols_needed(self.m, self.q)

    @functools.cached_property
    def _classes(self) -> np.ndarray:
        space = word_space(self.graph.n, self.q, max(self.q**self.graph.n, 1))
        base_ranks = np.array([rank(w, self.q) for w in self.base], dtype=np.int64)
        classes = np.full(space.size, -1, dtype=np.int64)
        for i, x in enumerate(self.cover.translates):
            hit = space.shift(base_ranks, x)
            fresh = hit[classes[hit] < 0]
            classes[fresh] = i
        return classes

    def encode(self, y: Sequence[int]) -> int:
        """Smallest ``i`` with ``y - x_i`` in the base code."""
        y = check_word(y, self.q, self.graph.n)
        i = int(self._classes[rank(y, self.q)])
        if i < 0:
            raise UncoveredWord(f"{y} lies in no translate of the base code")
        return i

    def decode(self, i: int, j: int, side: Sequence[int]) -> int:
        """Receiver ``j``'s symbol from class ``i`` and its side information."""
        x = self.cover.translates[i]
        if len(side) != len(self.graph.out_neighbors[j]):
            raise LengthMismatch(f"side information for vertex {j + 1} has wrong length")
        shifted = word_sub(side, project(x, self.graph.out_neighbors[j]), self.q)
        return (self.table.lookup(j, shifted) + x[j]) % self.q


def encode_index(spec: IndexCodeSpec, y: Sequence[int]) -> int:
    return spec.encode(y)


def decode_index(spec: IndexCodeSpec, i: int, j: int, side: Sequence[int]) -> int:
    return spec.decode(i, j, side)


def index_from_rdss(
    c: Codebook,
    g: StorageGraph,
    method: str = "greedy",
    seed: int = 0,
    m: int | None = None,
    max_space: int = DEFAULT_MAX_SPACE,
) -> IndexCodeSpec:
    """Index code whose classes are translates of the RDSS code ``c``.

    ``method`` is ``"greedy"`` (doubling to completion), ``"hybrid"``
    (doubling, then one translate per leftover word) or ``"random"`` (``m``
    translates from ``seed``; raises :class:`IncompleteCover` on failure).
    """
    table = recovery_table(c, g)
    if method == "greedy":
        cover = greedy_cover(c, "full", max_space)
    elif method == HYBRID:
        cover = greedy_cover(c, HYBRID, max_space)
    elif method == RANDOM:
        if m is None:
            raise ValueError("random covers need a translate count m")
        cover = random_cover(c, m, seed, max_space)
        if not cover.complete:
            raise IncompleteCover(
                f"{m} random translates (seed {seed}) leave {cover.uncovered_count} words uncovered"
            )
    else:
        raise ValueError(f"unknown method {method!r}")
    return IndexCodeSpec(g, c, cover, table)


@dataclass(frozen=True)
class LinearIndexCodeSpec:
    """Broadcast ``(A y)_r`` for a basis ``R`` of the rows of a fitting matrix ``A``."""

    matrix: FittingMatrix
    basis_rows: tuple[int, ...]
    coefficients: tuple[tuple[int, ...], ...]

    @property
    def q(self) -> int:
        return self.matrix.q

    @property
    def graph(self) -> StorageGraph:
        return self.matrix.graph

    @property
    def length_symbols(self) -> int:
        return len(self.basis_rows)

    def encode(self, y: Sequence[int]) -> tuple[int, ...]:
        a, q = self.matrix.entries, self.q
        return tuple(sum(x * v for x, v in zip(a[r], y)) % q for r in self.basis_rows)

    def decode(self, b: Sequence[int], i: int, side: Sequence[int]) -> int:
        q = self.q
        row = self.matrix.entries[i]
        ay_i = sum(lam * v for lam, v in zip(self.coefficients[i], b))
        known = sum(row[j] * s for j, s in zip(self.graph.out_neighbors[i], side))
        return ((ay_i - known) * pow(row[i], -1, q)) % q


def linear_index_from_fitting(a: FittingMatrix) -> LinearIndexCodeSpec:
    require_prime(a.q)
    basis = independent_rows(a.entries, a.q)
    rows = [a.entries[r] for r in basis]
    coeffs = tuple(tuple(express_in_rows(rows, a.entries[i], a.q)) for i in range(a.n))
    return LinearIndexCodeSpec(a, tuple(basis), coeffs)


def find_index_failure(code, g: StorageGraph, max_space: int = DEFAULT_MAX_SPACE) -> tuple[Word, int | None] | None:
    """First ``(y, j)`` where receiver ``j`` decodes ``y`` wrongly, or ``None``.

    ``code`` needs ``q``, ``encode(y)`` and ``decode(c, j, side)``; ``j`` is
    ``None`` when ``y`` cannot be encoded at all.
    """
    space = word_space(g.n, code.q, max_space)
    for r in range(space.size):
        y = space.word(r)
        try:
            sent = code.encode(y)
        except LookupError:
            return y, None
        for j, nbrs in enumerate(g.out_neighbors):
            try:
                got = code.decode(sent, j, project(y, nbrs))
            except LookupError:
                return y, j
            if got != y[j]:
                return y, j
    return None


def verify_index_code(code, g: StorageGraph, max_space: int = DEFAULT_MAX_SPACE) -> bool:
    return find_index_failure(code, g, max_space) is None


def rdss_from_index(
    encoding: Callable[[Word], Hashable] | Mapping[Word, Hashable],
    g: StorageGraph,
    q: int,
    max_space: int = DEFAULT_MAX_SPACE,
) -> Codebook:
    """The largest fiber of an index-code encoder, as a codebook.

    Ties go to the smallest class value.  The fiber is recoverable whenever
    ``encoding`` belongs to a decodable index code; nothing is checked here,
    so callers holding an arbitrary encoding should test it with ``is_rdss``.
    """
    encode = encoding.__getitem__ if isinstance(encoding, Mapping) else encoding
    space = word_space(g.n, q, max_space)
    fibers: dict[Hashable, list[Word]] = {}
    for r in range(space.size):
        y = space.word(r)
        fibers.setdefault(encode(y), []).append(y)
    value = min(fibers, key=lambda v: (-len(fibers[v]), v))
    return Codebook(tuple(fibers[value]), q)


_EPS = 1e-9


@dataclass(frozen=True)
class DualityReport:
    """Quantities on both sides of the RDSS / index-code sandwich.

    Dimensions and lengths are in q-ary symbols per vertex, so for block
    length ``p`` they are ``log_Q`` of sizes over the alphabet ``Q = q**p``.
    The constructed index length is ``ceil(log_q m) / p``; the upper check
    allows ``1/p`` on top of the bound for integer rounding.
    """

    n: int
    q: int
    p: int
    rdss_size: int
    rdss_exact: bool
    minrank: int | None
    linear_size: int | None
    linear_index_verified: bool | None
    index_classes: int
    index_classes_greedy: int
    index_classes_hybrid: int
    index_method: str
    index_verified: bool

    @property
    def alphabet(self) -> int:
        return self.q**self.p

    @property
    def rdss_dim(self) -> float:
        return math.log(self.rdss_size, self.q) / self.p

    @property
    def linear_dim(self) -> int | None:
        return None if self.minrank is None else self.n - self.minrank

    @property
    def index_length_symbols(self) -> int:
        return symbols_needed(self.index_classes, self.alphabet)

    @property
    def index_length(self) -> float:
        return symbols_needed(self.index_classes, self.q) / self.p

    @property
    def thm1_lower(self) -> float:
        return self.n - self.rdss_dim

    @property
    def thm1_upper(self) -> float:
        lnq = math.log(self.q)
        inner = min(self.p * self.n * lnq, 1 + self.p * self.rdss_dim * lnq)
        return self.n - self.rdss_dim + math.log(inner, self.q) / self.p

    @property
    def lower_length_symbols(self) -> int:
        """Fewest q-ary symbols any index code can use: smallest ``L`` with ``S * q^L >= q^(pn)``."""
        return symbols_needed(-(-self.q ** (self.p * self.n) // self.rdss_size), self.q)

    @property
    def index_length_optimal(self) -> bool:
        return symbols_needed(self.index_classes, self.q) == self.lower_length_symbols

    @property
    def slack(self) -> float:
        return 1 / self.p

    @property
    def verdict_lower(self) -> bool:
        # n - log_q(S)/p <= L/p  <=>  q^(pn) <= S * q^L
        length = symbols_needed(self.index_classes, self.q)
        return self.q ** (self.p * self.n) <= self.rdss_size * self.q**length

    @property
    def verdict_upper(self) -> bool:
        return self.index_length <= self.thm1_upper + self.slack + _EPS

    @property
    def verdict_eq6(self) -> bool | None:
        if self.minrank is None:
            return None
        return self.rdss_size >= self.q ** (self.n - self.minrank)

    @property
    def eq6_strict(self) -> bool | None:
        if self.minrank is None:
            return None
        return self.rdss_size > self.q ** (self.n - self.minrank)

    @property
    def passed(self) -> bool:
        checks = [self.verdict_lower, self.verdict_upper, self.verdict_eq6, self.index_verified,
                  self.linear_index_verified]
        return all(c is not False for c in checks)

    def items(self) -> list[tuple[str, str]]:
        def fmt(v) -> str:
            if v is None:
                return "n/a"
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return f"{v:.6f}"
            return str(v)

        rows = [
            ("n", self.n),
            ("q", self.q),
            ("p", self.p),
            ("rdss_size", self.rdss_size),
            ("rdss_dim", self.rdss_dim),
            ("rdss_exact", self.rdss_exact),
            ("minrank", self.minrank),
            ("linear_dim", self.linear_dim),
            ("linear_size", self.linear_size),
            ("linear_index_verified", self.linear_index_verified),
            ("index_classes", self.index_classes),
            ("index_classes_greedy", self.index_classes_greedy),
            ("index_classes_hybrid", self.index_classes_hybrid),
            ("index_method", self.index_method),
            ("index_length_symbols", self.index_length_symbols),
            ("index_length", self.index_length),
            ("index_verified", self.index_verified),
            ("thm1_lower", self.thm1_lower),
            ("thm1_upper", self.thm1_upper),
            ("index_lower_symbols", self.lower_length_symbols),
            ("index_length_optimal", self.index_length_optimal),
            ("upper_slack", self.slack),
            ("verdict_lower", self.verdict_lower),
            ("verdict_upper", self.verdict_upper),
            ("verdict_eq6", self.verdict_eq6),
        ]
        if self.eq6_strict is not None:
            rows.append(("strictness", "rdss_dim > n - minrank" if self.eq6_strict else "rdss_dim = n - minrank"))
        rows.append(("all_pass", self.passed))
        return [(k, fmt(v)) for k, v in rows]

    def format(self) -> str:
        return "\n".join(f"{k} = {v}" for k, v in self.items()) + "\n"

    def format_table(self) -> str:
        rows = self.items()
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows) + "\n"


def _build_report(g: StorageGraph, q: int, p: int, max_space: int, time_budget: float) -> tuple[DualityReport, dict]:
    alphabet = q**p
    search = rdss_exact(g, alphabet, max_space, time_budget)
    code = search.codebook

    mr = linear_size = linear_ok = None
    details: dict = {"search": search}
    if p == 1 and is_prime(q):
        res = minrank(g, q, max_space, time_budget)
        mr = res.rank
        lin_code = nullspace_code(res.witness)
        linear_size = len(lin_code)
        linear_ok = verify_index_code(linear_index_from_fitting(res.witness), g, max_space)
        details.update(minrank=res, linear_code=lin_code)

    greedy = index_from_rdss(code, g, "greedy", max_space=max_space)
    hybrid = index_from_rdss(code, g, HYBRID, max_space=max_space)
    chosen = hybrid if hybrid.m < greedy.m else greedy
    details.update(greedy=greedy, hybrid=hybrid, chosen=chosen)
    report = DualityReport(
        n=g.n,
        q=q,
        p=p,
        rdss_size=search.size,
        rdss_exact=search.exact,
        minrank=mr,
        linear_size=linear_size,
        linear_index_verified=linear_ok,
        index_classes=chosen.m,
        index_classes_greedy=greedy.m,
        index_classes_hybrid=hybrid.m,
        index_method=chosen.cover.method,
        index_verified=verify_index_code(chosen, g, max_space),
    )
    return report, details


def duality_report(
    g: StorageGraph,
    q: int,
    max_space: int = DEFAULT_MAX_SPACE,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> DualityReport:
    """Exact RDSS size, minrank and a constructed index code, with the bound checks.

    The linear rows (minrank and the nullspace code) are filled in only for
    prime ``q``.
    """
    return _build_report(g, q, 1, max_space, time_budget)[0]


def vector_report(
    g: StorageGraph,
    q: int,
    p: int,
    max_space: int = DEFAULT_MAX_SPACE,
    time_budget: float = DEFAULT_TIME_BUDGET,
) -> DualityReport:
    """The same pipeline over blocks of ``p`` symbols, i.e. the alphabet ``q**p``.

    With ``p == 1`` this is exactly :func:`duality_report`.
    """
    if p < 1:
        raise ValueError("block length p must be at least 1")
    return _build_report(g, q, p, max_space, time_budget)[0]
