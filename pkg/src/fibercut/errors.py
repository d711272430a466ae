"""Exception hierarchy shared by every module."""
from __future__ import annotations


class FibercutError(Exception):
    """Base class for all library errors."""


class SurfaceError(FibercutError):
    pass


class DanglingHalfEdge(SurfaceError):
    pass


class EmptySurface(SurfaceError):
    pass


class DisconnectedSurface(SurfaceError):
    pass


class PathError(FibercutError):
    pass


class InvalidPath(PathError):
    pass


class NotEmbedded(PathError):
    pass


class NonDiskRegionUnresolved(PathError):
    pass


class LoopNotEmbedded(PathError):
    pass


class LoopNullHomotopic(PathError):
    pass


class SelfCrossingCountWrong(PathError):
    pass


class NotAnArc(PathError):
    pass


class MonodromyError(FibercutError):
    pass


class NotPositiveWord(MonodromyError):
    pass


class RightVeeringViolation(MonodromyError):
    """Raised by the self-test hook when a positive word produces a non-veering arc."""


class MixedPositivity(MonodromyError):
    pass


class CutNotFiber(FibercutError):
    pass


class RestrictionFailed(FibercutError):
    """The monodromy could not be carried to the cut surface."""


class ZeroTwist(FibercutError):
    pass


class NotFiberPreserving(FibercutError):
    pass


class NotMinimal(FibercutError):
    pass


class HypothesesUnmet(FibercutError):
    pass


class ComplexityBudgetExceeded(FibercutError):
    pass


class BudgetExhaustedWithoutClosure(FibercutError):
    """The oracle search hit its move budget before its frontier closed."""

    def __init__(self, message: str, upper_bound: int | None = None):
        super().__init__(message)
        self.upper_bound = upper_bound


class SceneError(FibercutError):
    """DSL diagnostics carry a 1-based line and column."""

    kind = "SceneError"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.kind} at {self.line}:{self.column}: {self.message}"


class SceneSyntaxError(SceneError):
    kind = "SyntaxError"


class UnknownName(SceneError):
    kind = "UnknownName"


class ValidationError(SceneError):
    kind = "ValidationError"


class SceneDanglingHalfEdge(ValidationError, DanglingHalfEdge):
    """A surface block whose half-edges are not all placed and paired."""

    kind = "DanglingHalfEdge"
