"""Exception types shared across the package."""


class LadderLabError(Exception):
    """Base class for all package errors."""


class DomainError(LadderLabError):
    """Argument outside the documented domain of an operation."""


class ToleranceError(LadderLabError):
    """Requested tolerance could not be met. Carries the best estimate."""

    def __init__(self, message, best_value=None, best_error=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_error = best_error


class BracketError(LadderLabError):
    """A root bracket could not be established or refined."""


class CacheCorruptionError(LadderLabError):
    """Persisted checkpoint data violates its invariants."""


class InfeasibleError(LadderLabError):
    """A requested evaluation violates a feasibility guard."""
