"""Exception types shared by the whole package.

The CLI maps each class to a distinct exit code.
"""


class DomainError(ValueError):
    """Input violates a mathematical precondition (invalid element, bad index, ...)."""


class NotGeodesicError(DomainError):
    """A partial product was requested on a non-geodesic pair."""


class NumericalError(RuntimeError):
    """A numerical routine (root finding, path tracking) failed to converge."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace or {}


class BudgetExceeded(RuntimeError):
    """An enumeration hit its node cap; results are never silently truncated."""
