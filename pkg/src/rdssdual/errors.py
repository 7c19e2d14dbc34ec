"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RdssError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(RdssError, IndexError):
    pass


class LengthMismatch(RdssError, ValueError):
    pass


class NotPrime(RdssError, ValueError):
    pass


class ZeroInverse(RdssError, ZeroDivisionError):
    pass


class SpaceExceeded(RdssError):
    """The requested enumeration is larger than the configured ``max_space``."""


class BudgetExceeded(RdssError):
    """A search that cannot report partial results ran out of time."""


class ParseError(RdssError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoop(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class BadSize(RdssError, ValueError):
    pass


class NotRdss(RdssError, ValueError):
    """The codebook is not recoverable on the given graph."""


class ConfusablePair(NotRdss):
    """Two codewords agree on ``N(i)`` but differ at ``i``.

    ``vertex`` is 0-based; the message shows it 1-based.
    """

    def __init__(self, x: tuple[int, ...], y: tuple[int, ...], vertex: int):
        self.x = x
        self.y = y
        self.vertex = vertex
        super().__init__(
            f"codewords {x} and {y} are confusable at vertex {vertex + 1}"
        )


class UnknownProjection(RdssError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown projection"


class UncoveredWord(RdssError, LookupError):
    """A word lies in no class of a (defective) translate cover."""


class NotFitting(RdssError, ValueError):
    pass


class NoGenerators(RdssError, ValueError):
    pass


class IncompleteCover(RdssError):
    pass
