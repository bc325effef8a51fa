"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ConvergenceError(RuntimeError):
    """Raised when a numeric routine exhausts its budget before reaching tolerance."""


class TailBoundError(ConvergenceError):
    """Raised when a tail-bound remainder cannot be driven below the required share
    of the tolerance, so the semi-infinite integral cannot be truncated safely."""
