"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class EnvelopeError(Exception):
    """Base class for all errors raised by graphenv."""


class GraphError(EnvelopeError, ValueError):
    """Invalid graph description. ``token`` names the offending label or pair."""

    def __init__(self, token, message: str | None = None):
        self.token = token
        super().__init__(message or f"{type(self).__name__}: {token!r}")


class DuplicateVertex(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class GraphFormatError(EnvelopeError, ValueError):
    """The graph document is structurally malformed."""


class LatticeTooLarge(EnvelopeError):
    def __init__(self, predicted: int, guard: int):
        self.predicted = predicted
        self.guard = guard
        super().__init__(
            f"subgraph lattice has more than {guard} elements "
            f"(at least {predicted}); raise the guard to proceed"
        )


class IndexOutOfRange(EnvelopeError, IndexError):
    pass


class LatticeMismatch(EnvelopeError, ValueError):
    pass


class CapExceeded(EnvelopeError):
    """An exhaustive builtin was asked to work on too many vertices."""


class OracleCapExceeded(EnvelopeError):
    def __init__(self, index: int, count: int, cap: int):
        self.index = index
        self.count = count
        self.cap = cap
        super().__init__(
            f"subgraph #{index} has {count} nonempty subgraphs, oracle cap is {cap}"
        )


class WeightFileError(EnvelopeError, ValueError):
    """Problem with a weight document. ``descriptor`` identifies the entry."""

    def __init__(self, descriptor, message: str | None = None):
        self.descriptor = descriptor
        super().__init__(message or f"{type(self).__name__}: {descriptor}")


class MissingSubgraph(WeightFileError):
    pass


class UnknownSubgraph(WeightFileError):
    pass


class DuplicateEntry(WeightFileError):
    pass


class NegativeWeight(WeightFileError):
    pass


class MalformedNumber(WeightFileError):
    pass
