"""
Exceptions raised by the numerical core.
"""

from typing import Sequence


class DeformedQMError(Exception):
    """Base class for all toolkit failures."""


class DomainError(DeformedQMError, ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConvergenceError(DeformedQMError, ArithmeticError):
    """An iterative procedure did not reach its tolerance within its cap."""

    def __init__(self, message: str, offending_powers: Sequence[int] = ()) -> None:
        super().__init__(message)
        self.offending_powers = tuple(offending_powers)


class BracketNotFoundError(ConvergenceError):
    """The root scan ran out of range before bracketing enough roots."""


class QuadratureError(DeformedQMError, ArithmeticError):
    """The integrand produced a non-finite sample."""


class FactorialOverflowError(DeformedQMError, OverflowError):
    """A deformed factorial exceeds the double-precision range."""
