"""Exception types shared across the package."""


class RingcapError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(RingcapError, ValueError):
    """A scalar argument is outside the mathematical domain of a function."""


class ArgumentError(RingcapError, ValueError):
    """Invalid construction parameters (mesh sizes, shape parameters, ...)."""


class MeshError(RingcapError):
    """A mesh does not meet the requirements of the requested operation."""


class GeometryError(RingcapError):
    """The geometry is invalid (intersecting components, point in wrong region)."""


class SingularityError(RingcapError):
    """A kernel evaluation produced a non-finite value."""


class ConvergenceError(RingcapError):
    """An iterative procedure failed to reach its tolerance.

    Carries the final residual and, when available, the per-iteration
    history of the quantity being driven to zero.
    """

    def __init__(self, message, residual=None, history=None):
        super().__init__(message)
        self.residual = residual
        self.history = list(history) if history is not None else []


class EvaluationError(RingcapError):
    """A point evaluation was requested outside the valid region."""


class BranchError(RingcapError):
    """The argument lies on (or too close to) a branch cut."""


class NoOracleError(RingcapError, KeyError):
    """No closed-form value is known for the requested configuration."""
