"""Confusability, recoverability of codebooks, and recovery lookup tables.

Two words are confusable on a graph when they differ at some vertex ``i``
while agreeing on all of ``N(i)``.  A codebook is recoverable (an RDSS code)
exactly when it holds no confusable pair; its recovery functions are then
well defined on the projections that occur, and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .alphabet import (
    DEFAULT_MAX_SPACE,
    Alphabet,
    Word,
    check_word,
    format_word,
    parse_word,
    project,
    rank,
    word_add,
    word_space,
    word_sub,
)
from .errors import ConfusablePair, LengthMismatch, ParseError, UnknownProjection
from .graph import StorageGraph


@dataclass(frozen=True)
class Codebook:
    """A nonempty set of distinct words, stored sorted by rank."""

    words: tuple[Word, ...]
    q: int
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        Alphabet(self.q)
        if not self.words:
            raise ValueError("a codebook needs at least one word")
        n = len(self.words[0])
        words = tuple(sorted((check_word(w, self.q, n) for w in self.words), key=lambda w: rank(w, self.q)))
        members = frozenset(words)
        if len(members) != len(words):
            raise ValueError("codebook contains duplicate words")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "_members", members)

    @classmethod
    def from_strings(cls, words: Iterable[str], q: int) -> Codebook:
        return cls(tuple(parse_word(w, q) for w in words), q)

    @property
    def n(self) -> int:
        return len(self.words[0])

    @property
    def dim(self) -> float:
        return math.log(len(self.words), self.q)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._members

    def translate(self, a: Sequence[int]) -> Codebook:
        return Codebook(tuple(word_add(x, a, self.q) for x in self.words), self.q)


def confusable(x: Sequence[int], y: Sequence[int], g: StorageGraph) -> bool:
    if len(x) != len(y) or len(x) != g.n:
        raise LengthMismatch(f"words of length {len(x)}, {len(y)} on a graph with {g.n} vertices")
    return any(
        x[i] != y[i] and all(x[j] == y[j] for j in g.out_neighbors[i]) for i in range(g.n)
    )


def confusion_differences(g: StorageGraph, q: int, max_space: int = DEFAULT_MAX_SPACE) -> np.ndarray:
    """Boolean array over ranks: ``out[r]`` iff ``x`` and ``x + unrank(r)`` are confusable.

    Confusability only depends on the difference of the two words, so this
    one array describes every edge of the confusion graph.
    """
    space = word_space(g.n, q, max_space)
    nonzero = space.digits != 0
    out = np.zeros(space.size, dtype=bool)
    for i, nbrs in enumerate(g.out_neighbors):
        hit = nonzero[:, i]
        if nbrs:
            hit = hit & ~nonzero[:, list(nbrs)].any(axis=1)
        out |= hit
    return out


def _check_lengths(c: Codebook, g: StorageGraph) -> None:
    if c.n != g.n:
        raise LengthMismatch(f"codewords have length {c.n}, graph has {g.n} vertices")


@dataclass(frozen=True)
class RecoveryTable:
    """Per-vertex partial maps from the projection on ``N(i)`` to ``x_i``."""

    graph: StorageGraph
    q: int
    tables: tuple[Mapping[Word, int], ...]

    def lookup(self, i: int, side: Sequence[int]) -> int:
        try:
            return self.tables[i][tuple(side)]
        except KeyError:
            raise UnknownProjection(
                f"projection {tuple(side)} on N({i + 1}) does not occur in the codebook"
            ) from None

    def translated(self, a: Sequence[int]) -> RecoveryTable:
        """Tables for ``C + a``: ``f'_i(s) = f_i(s - a|N(i)) + a_i``."""
        new = []
        for i, table in enumerate(self.tables):
            shift = project(a, self.graph.out_neighbors[i])
            new.append({word_add(k, shift, self.q): (v + a[i]) % self.q for k, v in table.items()})
        return RecoveryTable(self.graph, self.q, tuple(new))


def recovery_table(c: Codebook, g: StorageGraph) -> RecoveryTable:
    _check_lengths(c, g)
    tables = []
    for i, nbrs in enumerate(g.out_neighbors):
        table: dict[Word, int] = {}
        owner: dict[Word, Word] = {}
        for x in c:
            key = project(x, nbrs)
            if key in table:
                if table[key] != x[i]:
                    raise ConfusablePair(owner[key], x, i)
            else:
                table[key] = x[i]
                owner[key] = x
        tables.append(table)
    return RecoveryTable(g, c.q, tuple(tables))


def is_rdss(c: Codebook, g: StorageGraph) -> bool:
    try:
        recovery_table(c, g)
    except ConfusablePair:
        return False
    return True


def repair(x: Sequence[int | None], i: int, table: RecoveryTable) -> int:
    """Recover the erased symbol at vertex ``i`` from the rest of ``x``.

    ``x[i]`` is ignored (it may be ``None``).
    """
    side = tuple(x[j] for j in table.graph.out_neighbors[i])
    return table.lookup(i, side)


def untranslate_side(side: Sequence[int], a: Sequence[int], i: int, g: StorageGraph, q: int) -> Word:
    return word_sub(side, project(a, g.out_neighbors[i]), q)


def parse_codebook(text: str) -> Codebook:
    header = None
    words: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            tokens = line.split()
            if len(tokens) != 3:
                raise ParseError("expected header 'n q count'", lineno)
            try:
                header = tuple(int(t) for t in tokens)
            except ValueError:
                raise ParseError("header values must be integers", lineno) from None
            continue
        n, q, _ = header
        try:
            words.append(parse_word(line, q, n))
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), lineno) from None
    if header is None:
        raise ParseError("missing header line")
    n, q, count = header
    if len(words) != count:
        raise ParseError(f"header declares {count} words, found {len(words)}")
    try:
        return Codebook(tuple(words), q)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def load_codebook(path: str | Path) -> Codebook:
    return parse_codebook(Path(path).read_text(encoding="utf-8"))


def serialize_codebook(c: Codebook) -> str:
    lines = [f"{c.n} {c.q} {len(c)}"] + [format_word(w, c.q) for w in c]
    return "\n".join(lines) + "\n"
