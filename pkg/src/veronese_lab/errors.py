"""Exception hierarchy shared by every module of the package."""


class VeroneseLabError(Exception):
    """Base class for all errors raised by veronese_lab."""


class DivisionByZero(VeroneseLabError, ZeroDivisionError):
    pass


class RingMismatch(VeroneseLabError, ValueError):
    pass


class FieldMismatch(VeroneseLabError, ValueError):
    pass


class ParseError(VeroneseLabError, ValueError):
    pass


class OrderUnsuitable(VeroneseLabError, ValueError):
    pass


class NotZeroDimensional(VeroneseLabError, ValueError):
    pass


class DegreeCapExceeded(VeroneseLabError, RuntimeError):
    pass


class ShapePositionFailure(VeroneseLabError, RuntimeError):
    pass


class ExtensionCapExceeded(VeroneseLabError, RuntimeError):
    """The splitting field of a scheme is larger than the configured cap."""


class PointNotOnScheme(VeroneseLabError, ValueError):
    pass


class DegreeMismatch(VeroneseLabError, ValueError):
    pass


class DegenerateConfiguration(VeroneseLabError, ValueError):
    pass


class DegenerateWeb(VeroneseLabError, ValueError):
    pass


class RankTooLow(VeroneseLabError, ValueError):
    pass


class RankDeficient(VeroneseLabError, ValueError):
    pass


class DependentPoints(VeroneseLabError, ValueError):
    pass


class ConstraintInfeasible(VeroneseLabError, RuntimeError):
    pass


class NotInvertible(VeroneseLabError, ValueError):
    pass


class UncoveredMonomial(VeroneseLabError, KeyError):
    pass


class NoSolution(VeroneseLabError, ValueError):
    pass


class NonUnique(VeroneseLabError, ValueError):
    """The linear system has a positive-dimensional solution space."""

    def __init__(self, message, dimension, particular=None, basis=None):
        super().__init__(message)
        self.dimension = dimension
        self.particular = particular
        self.basis = basis or []


class RetriesExhausted(VeroneseLabError, RuntimeError):
    pass
