"""Symbols, words over Z_q, rank/unrank enumeration and prime-field scalars.

Words are plain tuples of ints.  Ranks enumerate Z_q^n in lexicographic
order with the most significant digit first, so ``itertools.product`` order
and rank order coincide.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import IndexOutOfRange, LengthMismatch, NotPrime, SpaceExceeded, ZeroInverse

Word = tuple[int, ...]

DEFAULT_MAX_SPACE = 2**20


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise NotPrime(f"q={q} is not prime; linear operations need a prime field")


@dataclass(frozen=True)
class Alphabet:
    q: int
    is_prime: bool = field(init=False)

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"alphabet size must be at least 2, got {self.q}")
        object.__setattr__(self, "is_prime", is_prime(self.q))


def check_word(w: Sequence[int], q: int, n: int | None = None) -> Word:
    """Return ``w`` as a tuple after checking symbols (and length, if given)."""
    w = tuple(int(s) for s in w)
    if n is not None and len(w) != n:
        raise LengthMismatch(f"word {w} has length {len(w)}, expected {n}")
    for s in w:
        if not 0 <= s < q:
            raise IndexOutOfRange(f"symbol {s} outside [0, {q})")
    return w


def unrank(idx: int, n: int, q: int) -> Word:
    if not 0 <= idx < q**n:
        raise IndexOutOfRange(f"index {idx} outside [0, {q}^{n})")
    digits = [0] * n
    for pos in range(n - 1, -1, -1):
        idx, digits[pos] = divmod(idx, q)
    return tuple(digits)


def rank(w: Sequence[int], q: int) -> int:
    r = 0
    for s in w:
        if not 0 <= s < q:
            raise IndexOutOfRange(f"symbol {s} outside [0, {q})")
        r = r * q + s
    return r


def all_words(n: int, q: int) -> Iterator[Word]:
    """Every word of Z_q^n, in rank order."""
    return itertools.product(range(q), repeat=n)


def zero_word(n: int) -> Word:
    return (0,) * n


def _same_length(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise LengthMismatch(f"lengths differ: {len(u)} vs {len(v)}")


def word_add(u: Sequence[int], v: Sequence[int], q: int) -> Word:
    _same_length(u, v)
    return tuple((a + b) % q for a, b in zip(u, v))


def word_sub(u: Sequence[int], v: Sequence[int], q: int) -> Word:
    _same_length(u, v)
    return tuple((a - b) % q for a, b in zip(u, v))


def word_scale(c: int, u: Sequence[int], q: int) -> Word:
    return tuple((c * a) % q for a in u)


def project(w: Sequence[int], positions: Sequence[int]) -> Word:
    """Subsequence of ``w`` at the given 0-based, strictly increasing positions."""
    prev = -1
    for p in positions:
        if not 0 <= p < len(w):
            raise IndexOutOfRange(f"position {p} outside word of length {len(w)}")
        if p <= prev:
            raise IndexOutOfRange("positions must be strictly increasing")
        prev = p
    return tuple(w[p] for p in positions)


def field_inv(a: int, q: int) -> int:
    require_prime(q)
    a %= q
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    return pow(a, -1, q)


def format_word(w: Sequence[int], q: int) -> str:
    if q <= 10:
        return "".join(str(s) for s in w)
    return ",".join(str(s) for s in w)


def parse_word(text: str, q: int, n: int | None = None) -> Word:
    text = text.strip()
    if q <= 10:
        if not text.isdigit() and text != "":
            raise ValueError(f"bad word {text!r}")
        symbols = [int(c) for c in text]
    else:
        symbols = [int(tok) for tok in text.split(",")] if text else []
    return check_word(symbols, q, n)


def check_space(n: int, q: int, max_space: int = DEFAULT_MAX_SPACE) -> int:
    size = q**n
    if size > max_space:
        raise SpaceExceeded(f"{q}^{n} = {size} words exceeds max_space={max_space}")
    return size


class WordSpace:
    """Vectorised view of Z_q^n: row ``r`` of ``digits`` is ``unrank(r)``."""

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.size = q**n
        self.weights = np.array([q ** (n - 1 - i) for i in range(n)], dtype=np.int64)
        ranks = np.arange(self.size, dtype=np.int64)
        self.digits = ((ranks[:, None] // self.weights[None, :]) % q).astype(np.int64)

    def ranks_of(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self.weights

    def shift(self, ranks: np.ndarray | Iterable[int], x: Sequence[int], sign: int = 1) -> np.ndarray:
        """Ranks of ``w + sign*x`` for every ``w`` in ``ranks``."""
        ranks = np.asarray(ranks, dtype=np.int64)
        moved = (self.digits[ranks] + sign * np.asarray(x, dtype=np.int64)) % self.q
        return self.ranks_of(moved)

    def mask(self, words: Iterable[Sequence[int]]) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        for w in words:
            out[rank(w, self.q)] = True
        return out

    def word(self, r: int) -> Word:
        return tuple(int(s) for s in self.digits[r])


@functools.lru_cache(maxsize=8)
def _cached_space(n: int, q: int) -> WordSpace:
    return WordSpace(n, q)


def word_space(n: int, q: int, max_space: int = DEFAULT_MAX_SPACE) -> WordSpace:
    check_space(n, q, max_space)
    return _cached_space(n, q)
