"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RecolorError(Exception):
    """Base class for all library errors."""


class ParseError(RecolorError, ValueError):
    def __init__(self, message: str, line: int | None = None, pos: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"byte {pos}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.pos = pos


class LoopRejected(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class EmptySet(RecolorError, ValueError):
    pass


class ZeroMultiplicity(RecolorError, ValueError):
    pass


class TooLarge(RecolorError, ValueError):
    pass


class PatternTooLarge(TooLarge):
    pass


class NotPrimeEligible(RecolorError, ValueError):
    """Raised when a graph is disconnected or a join (co-disconnected)."""


class NotPrime(RecolorError, ValueError):
    pass


class LengthMismatch(RecolorError, ValueError):
    pass


class StateSpaceTooLarge(RecolorError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"state space has at least {count} colorings (budget {budget})")
        self.count = count
        self.budget = budget


class ImproperEndpoint(RecolorError, ValueError):
    pass


class PreconditionViolated(RecolorError, ValueError):
    pass


class SubgraphNotMixing(RecolorError):
    pass


class PaletteTooSmall(RecolorError, ValueError):
    pass


class BudgetExhausted(RecolorError):
    def __init__(self, message: str = "search budget exhausted", trace=None):
        super().__init__(message)
        self.trace = trace


class NoPath(RecolorError):
    """No schedule exists. ``certified`` is True when a full census proved it."""

    def __init__(self, message: str = "no recoloring path", certified: bool = False, trace=None):
        super().__init__(message)
        self.certified = certified
        self.trace = trace
