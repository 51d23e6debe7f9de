"""Exception hierarchy shared by every module of the package."""


class GeometryError(ValueError):
    """Base class for all errors raised by cauchymix."""


class DomainError(GeometryError):
    """A point lies outside the open domain of a generator or function."""


class OutOfRangeError(GeometryError):
    """A dual coordinate is not attained by the gradient on the domain."""


class ConvergenceError(GeometryError):
    """An iterative solver hit its iteration cap."""


class WeightError(GeometryError):
    """Weights are not positive or do not sum to one."""


class ParamError(GeometryError):
    """Invalid distribution parameters (e.g. a nonpositive scale)."""


class DimensionError(GeometryError):
    """Operands have mismatched dimensions."""


class NotPositiveDefiniteError(GeometryError):
    """A matrix expected to be symmetric positive-definite is not."""


class NoConvergenceError(GeometryError):
    """Quadrature refinement cap reached before meeting the tolerance.

    The last estimate and the last gap between successive refinements are
    kept on the exception so callers can decide whether to use them.
    """

    def __init__(self, message, estimate, gap):
        super().__init__(message)
        self.estimate = estimate
        self.gap = gap
