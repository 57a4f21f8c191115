"""Exception hierarchy shared by all modules."""


class ConfmetaError(Exception):
    """Base class for library errors."""


class ParameterDomainError(ConfmetaError, ValueError):
    """A distribution or family parameter is outside its admissible set."""


class DomainError(ConfmetaError, ValueError):
    """A parameter value or region lies outside the parameter space."""


class ArgumentError(ConfmetaError, ValueError):
    """Invalid call argument (empty input, bad ordering, nonpositive count...)."""


class RangeError(ConfmetaError, ValueError):
    """A target level is not attained by a monotone function.

    ``lower`` and ``upper`` carry the achievable extremes so that callers
    can map degenerate discrete cases onto endpoint set estimates.
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class AccuracyError(ConfmetaError, ArithmeticError):
    """Numerical routine failed to reach the requested tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class MomentError(ConfmetaError, ArithmeticError):
    """Requested moment or expectation does not exist."""


class MultimodalityError(ConfmetaError, ValueError):
    """Density maximum is not unique."""


class CapabilityError(ConfmetaError, TypeError):
    """Object lacks a capability required by the operation."""
