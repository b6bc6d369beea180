"""Shared exception types for the harmonia library."""

from __future__ import annotations


class HarmoniaError(Exception):
    """Base class for every error raised by this library."""


class DomainError(HarmoniaError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(HarmoniaError, ValueError):
    """A structural parameter violates its documented constraint."""


class EvaluationError(HarmoniaError, ArithmeticError):
    """An evaluator produced a non-finite value or is undefined at a point.

    ``abscissa`` carries the offending point when one exists.
    """

    def __init__(self, message: str, abscissa: float | None = None):
        super().__init__(message)
        self.abscissa = abscissa


class AccuracyError(HarmoniaError, ArithmeticError):
    """A computation could not meet its accuracy target within budget.

    Keyword arguments are stored in ``values`` so callers can inspect the
    conflicting or partial results (for instance the two disagreeing paths
    of a cross-validated special function).
    """

    def __init__(self, message: str, **values: float):
        super().__init__(message)
        self.values = values


class PreconditionError(HarmoniaError):
    """A documented precondition does not hold (e.g. uncertified instance)."""


class ConfigError(HarmoniaError, ValueError):
    """A sweep configuration is invalid or yields an empty corpus."""
