"""Exception hierarchy for cf-tailbound.

Each error also derives from the closest builtin so callers that only know
about ValueError/RuntimeError keep working.
"""

from __future__ import annotations


class TailBoundError(Exception):
    """Base class for every failure raised by the library."""


class ParameterDomainError(TailBoundError, ValueError):
    """A parameter lies outside its documented domain."""


class SampleFormatError(ParameterDomainError):
    """A sample file could not be parsed."""


class RejectedPolynomialError(TailBoundError, ValueError):
    """The trigonometric polynomial failed the non-negativity check."""


class DivisionDomainError(TailBoundError, ValueError):
    """The constant coefficient a_0 is not positive."""


class AnalyticityDomainError(TailBoundError, ValueError):
    """s lies outside the analyticity radius or strip of the CF."""


class UnsupportedError(TailBoundError, ValueError):
    """The requested method needs metadata the CF does not carry."""


class UnsupportedOracleError(UnsupportedError):
    """No closed-form CDF is available for the distribution."""


class IntegrandDomainError(TailBoundError, ArithmeticError):
    """The integrand produced a non-finite or complex value."""


class BoundOverflowError(TailBoundError, OverflowError):
    """An exponential, sinh or imaginary-axis value overflowed."""


class ConvergenceError(TailBoundError, RuntimeError):
    """Adaptive quadrature exhausted its evaluation budget."""


class InternalConsistencyError(TailBoundError, RuntimeError):
    """Two computations that must agree did not."""
