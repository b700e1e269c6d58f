"""
Exception hierarchy shared by the numerical modules and the CLI.
"""

from typing import Optional


class ExitTimeError(Exception):
    """Base class for every error raised by the package."""


class InvalidParameterError(ExitTimeError, ValueError):
    """A parameter lies outside the domain where the operation is defined."""


class PoleError(InvalidParameterError):
    """Gamma-type function evaluated at a pole (nonpositive integer)."""


class PreconditionError(ExitTimeError, ValueError):
    """A geometric precondition failed, e.g. the point is not interior."""


class DomainParseError(ExitTimeError, ValueError):
    """The textual domain specification could not be parsed."""


class ConvergenceError(ExitTimeError):
    """A series or quadrature did not meet its stopping rule."""

    def __init__(self, message: str, partial: Optional[complex] = None, terms: int = 0):
        super().__init__(message)
        self.partial = partial
        self.terms = terms


class DivergentSeriesError(ConvergenceError):
    """The series diverges at the requested argument."""


class AllPathsTruncatedError(ExitTimeError):
    """Every simulated path reached max_steps without leaving the domain."""

    def __init__(self, message: str, truncated_mean: float = float("nan")):
        super().__init__(message)
        self.truncated_mean = truncated_mean
