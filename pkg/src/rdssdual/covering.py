"""Covering Z_q^n by translates of a fixed set.

Sets of words are handled as boolean masks over ranks.  The greedy cover
repeatedly doubles the covered set, ``F <- F | (F + z)``, with ``z`` chosen
to minimise what is left uncovered; the average over all ``z`` of the
uncovered fraction after one doubling is exactly the square of the current
one, so the best ``z`` at least squares it.

Random covers draw translates from ``numpy.random.default_rng(seed)``
(PCG64), so a seed pins the cover on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Iterable, NamedTuple, Sequence

import numpy as np

from .alphabet import (
    DEFAULT_MAX_SPACE,
    Word,
    format_word,
    parse_word,
    rank,
    word_add,
    word_scale,
    word_space,
    word_sub,
    zero_word,
)
from .confusion import Codebook
from .errors import NoGenerators, ParseError

GREEDY = "greedy"
HYBRID = "hybrid"
RANDOM = "random"


@dataclass(frozen=True)
class TranslateCover:
    """Translates ``x_0 = 0, x_1, ...`` of ``base`` and their coverage.

    For greedy and hybrid covers the first ``2**t`` translates are the
    subset sums of ``generators`` in binary counting order: translate ``k``
    is the sum of the generators whose bit is set in ``k``.  The remaining
    translates (hybrid only) are the per-point finishers.  ``history`` holds
    the covered count after each doubling step, starting with ``|base|``.
    """

    base: Codebook
    translates: tuple[Word, ...]
    generators: tuple[Word, ...] = ()
    method: str = GREEDY
    complete: bool = False
    uncovered_count: int = 0
    history: tuple[int, ...] = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return len(self.translates)

    @property
    def finishers(self) -> tuple[Word, ...]:
        if self.method == RANDOM:
            return ()
        return self.translates[2 ** len(self.generators):]


class CoverCheck(NamedTuple):
    complete: bool
    uncovered: list[Word]


def uncovered_fraction(f: Collection, q: int, n: int) -> Fraction:
    return 1 - Fraction(len(f), q**n)


def bes_sum(c: Iterable[Sequence[int]], b: Iterable[Sequence[int]], q: int, n: int,
            max_space: int = DEFAULT_MAX_SPACE) -> int:
    """``sum over all x of |(C + x) & B|``, by direct summation."""
    space = word_space(n, q, max_space)
    c_ranks = np.array([rank(w, q) for w in c], dtype=np.int64)
    b_mask = space.mask(b)
    if c_ranks.size == 0:
        return 0
    total = 0
    for r in range(space.size):
        total += int(b_mask[space.shift(c_ranks, space.digits[r])].sum())
    return total


def _shift_mask(space, mask: np.ndarray, z: Sequence[int]) -> np.ndarray:
    out = np.zeros(space.size, dtype=bool)
    out[space.shift(np.flatnonzero(mask), z)] = True
    return out


def _overlaps(space, mask: np.ndarray) -> np.ndarray:
    """``|F & (F + z)|`` for every ``z``, as the group autocorrelation of ``F``.

    Index ``r`` of the result corresponds to ``z = unrank(r)``.  Computed with
    an ``n``-dimensional DFT over ``(Z_q)^n``; entries are integers, so
    rounding recovers them exactly at the supported sizes.
    """
    cube = mask.reshape((space.q,) * space.n).astype(float)
    spec = np.fft.fftn(cube)
    corr = np.fft.ifftn(spec * np.conj(spec)).real
    return np.rint(corr).astype(np.int64).reshape(-1)


def _best_step(space, mask: np.ndarray) -> tuple[Word, np.ndarray]:
    size = int(mask.sum())
    overlaps = _overlaps(space, mask)
    best = int(np.argmin(overlaps))
    z = space.word(best)
    new = mask | _shift_mask(space, mask, z)
    if int(new.sum()) != 2 * size - int(overlaps[best]):
        raise ArithmeticError("overlap spectrum disagrees with the direct union")
    return z, new


def best_doubling_step(f: Iterable[Sequence[int]], q: int, n: int,
                       max_space: int = DEFAULT_MAX_SPACE) -> tuple[Word, set[Word]]:
    """The ``z`` leaving the fewest words outside ``F | (F + z)``; ties go to the smallest rank."""
    space = word_space(n, q, max_space)
    mask = space.mask(f)
    if not mask.any():
        raise ValueError("cannot double an empty set")
    z, new = _best_step(space, mask)
    return z, {space.word(int(r)) for r in np.flatnonzero(new)}


def _coverage(space, base_ranks: np.ndarray, translates: Iterable[Sequence[int]]) -> np.ndarray:
    covered = np.zeros(space.size, dtype=bool)
    for x in translates:
        covered[space.shift(base_ranks, x)] = True
    return covered


def _base_ranks(c: Codebook) -> np.ndarray:
    return np.array([rank(w, c.q) for w in c], dtype=np.int64)


def _contracts(before: int, after: int, total: int) -> bool:
    """Uncovered fraction after a step is at most the square of the one before."""
    return (total - after) * total <= (total - before) ** 2


def greedy_cover(c: Codebook, variant: str = "full", max_space: int = DEFAULT_MAX_SPACE) -> TranslateCover:
    """Cover Z_q^n by translates of ``c`` through greedy doubling.

    ``variant="full"`` doubles until everything is covered, giving ``2**t``
    translates.  ``variant="hybrid"`` stops doubling once at most
    ``q**n / |c|`` words remain uncovered and then adds one translate
    ``p - c_0`` per remaining word ``p`` (``c_0`` the smallest codeword), in
    rank order.
    """
    if variant not in ("full", HYBRID):
        raise ValueError(f"unknown variant {variant!r}")
    q, n = c.q, c.n
    space = word_space(n, q, max_space)
    total = space.size
    mask = space.mask(c)
    translates: list[Word] = [zero_word(n)]
    generators: list[Word] = []
    history = [int(mask.sum())]
    threshold = Fraction(total, len(c))

    def keep_doubling() -> bool:
        left = total - history[-1]
        if left == 0:
            return False
        return variant == "full" or left > threshold

    while keep_doubling():
        z, new = _best_step(space, mask)
        if not _contracts(history[-1], int(new.sum()), total):
            raise ArithmeticError("greedy step failed to square the uncovered fraction")
        generators.append(z)
        translates += [word_add(x, z, q) for x in translates]
        mask = new
        history.append(int(mask.sum()))

    if variant == HYBRID:
        c0 = c.words[0]
        for r in np.flatnonzero(~mask):
            translates.append(word_sub(space.word(int(r)), c0, q))
        mask = np.ones(total, dtype=bool)

    return TranslateCover(
        base=c,
        translates=tuple(translates),
        generators=tuple(generators),
        method=GREEDY if variant == "full" else HYBRID,
        complete=bool(mask.all()),
        uncovered_count=int(total - mask.sum()),
        history=tuple(history),
    )


def random_cover(c: Codebook, m: int, seed: int = 0, max_space: int = DEFAULT_MAX_SPACE) -> TranslateCover:
    if m < 1:
        raise ValueError("a cover needs at least one translate")
    space = word_space(c.n, c.q, max_space)
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, space.size, size=m - 1)
    translates = (zero_word(c.n),) + tuple(space.word(int(r)) for r in draws)
    covered = _coverage(space, _base_ranks(c), translates)
    return TranslateCover(
        base=c,
        translates=translates,
        method=RANDOM,
        complete=bool(covered.all()),
        uncovered_count=int((~covered).sum()),
    )


def cover_valid(cv: TranslateCover, max_space: int = DEFAULT_MAX_SPACE) -> CoverCheck:
    space = word_space(cv.base.n, cv.base.q, max_space)
    covered = _coverage(space, _base_ranks(cv.base), cv.translates)
    missing = [space.word(int(r)) for r in np.flatnonzero(~covered)]
    return CoverCheck(not missing, missing)


def cover_subspace_closure(cv: TranslateCover, q: int | None = None) -> TranslateCover:
    """Replace the subset sums by the full Z_q span of the generators.

    Finisher translates are kept together with their nonzero multiples.  The
    result covers everything the input covered.
    """
    if not cv.generators:
        raise NoGenerators("the cover has no doubling generators")
    q = cv.base.q if q is None else q
    n = cv.base.n
    seen: set[Word] = set()
    out: list[Word] = []

    def add(w: Word) -> None:
        if w not in seen:
            seen.add(w)
            out.append(w)

    for coeffs in _counting(q, len(cv.generators)):
        w = zero_word(n)
        for k, g in zip(coeffs, cv.generators):
            if k:
                w = word_add(w, word_scale(k, g, q), q)
        add(w)
    for f in cv.finishers:
        for k in range(1, q):
            add(word_scale(k, f, q))
    return TranslateCover(
        base=cv.base,
        translates=tuple(out),
        generators=cv.generators,
        method=cv.method,
        complete=cv.complete,
        uncovered_count=cv.uncovered_count,
        history=cv.history,
    )


def _counting(q: int, t: int):
    """Coefficient vectors in base-``q`` counting order, first coordinate fastest."""
    for k in range(q**t):
        digits = []
        for _ in range(t):
            k, d = divmod(k, q)
            digits.append(d)
        yield digits


def size_bound(c: Codebook, variant: str) -> float:
    """Translate-count bound with slack for power-of-two rounding."""
    ratio = c.q**c.n / len(c)
    if variant == "full":
        return max(1.0, 2 * ratio * c.n * math.log(c.q))
    return 2 * ratio * (math.log(len(c)) + 1) + 2


def serialize_cover(cv: TranslateCover, base_ref: str = "-") -> str:
    q = cv.base.q
    flagged = {2**i for i in range(len(cv.generators))}
    lines = [f"base={base_ref} m={cv.m} method={cv.method}"]
    for k, x in enumerate(cv.translates):
        lines.append(("g " if k in flagged else "") + format_word(x, q))
    return "\n".join(lines) + "\n"


def parse_cover(text: str, base: Codebook) -> TranslateCover:
    """Read a serialized cover; completeness is recomputed, not trusted."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty cover file")
    fields = {}
    for tok in lines[0].split():
        key, sep, value = tok.partition("=")
        if not sep:
            raise ParseError(f"bad header token {tok!r}", 1)
        fields[key] = value
    if not {"m", "method"} <= fields.keys():
        raise ParseError("header needs m= and method=", 1)
    translates, generators = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        is_gen = line.startswith("g ")
        try:
            w = parse_word(line[2:] if is_gen else line, base.q, base.n)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), lineno) from None
        translates.append(w)
        if is_gen:
            generators.append(w)
    if len(translates) != int(fields["m"]):
        raise ParseError(f"header declares m={fields['m']}, found {len(translates)} translates")
    cv = TranslateCover(base=base, translates=tuple(translates), generators=tuple(generators),
                        method=fields["method"])
    check = cover_valid(cv)
    return TranslateCover(base=base, translates=cv.translates, generators=cv.generators,
                          method=cv.method, complete=check.complete,
                          uncovered_count=len(check.uncovered))
