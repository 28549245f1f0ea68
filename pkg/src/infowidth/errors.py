"""Exception and warning types raised across the package."""


class InfoWidthError(Exception):
    """Base class for every error raised by infowidth."""


class DomainError(InfoWidthError, ValueError):
    """An argument lies outside the domain of the requested quantity."""


class OutOfRangeError(DomainError):
    """A description length or member count is outside the achievable range."""


class UnsupportedRepresentationError(InfoWidthError, TypeError):
    """The operation needs an explicit member list but got a profiled collection."""


class UndefinedValueError(InfoWidthError, ArithmeticError):
    """Cost or efficiency requested for a property that conveys zero information."""


class UnsupportedMethodError(InfoWidthError, ValueError):
    """No evaluation route exists for the requested (method, property) pair."""


class InfeasibleSamplingError(InfoWidthError, RuntimeError):
    """A rejection sampler cannot be expected to terminate within its budget."""


class PreconditionWarning(UserWarning):
    """An asymptotic formula was evaluated outside the regime it was derived for."""
