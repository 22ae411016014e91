"""Semantic exception types shared across the package."""

from __future__ import annotations


class CubesecError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CubesecError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OverflowRangeError(DomainError):
    """An argument would force an intermediate outside the representable range."""


class NonConvergenceError(CubesecError, RuntimeError):
    """The subdivision budget ran out before the requested tolerance was met.

    The best available result, with an honest error estimate, is attached
    as the ``result`` attribute.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class DivergenceError(CubesecError, RuntimeError):
    """Successive truncation doublings grew the integral without bound."""


class ExtrapolationInstabilityError(CubesecError, RuntimeError):
    """A limit-extrapolation sequence failed to converge monotonically."""


class BracketError(CubesecError, ValueError):
    """A root bracket does not contain a sign change."""


class SeriesCapError(CubesecError, RuntimeError):
    """The series truncation cap binds before the requested tail bound is met."""
