"""
Data models shared by the numerical modules.
Defines Dimension, DeformedPolynomial, ParityFunction, WeightedIntegral and GridDensity.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

import numpy as np
from numpy.polynomial import polynomial as P

from src.core.config import check_dimension
from src.core.errors import DomainError

RealFunction = Callable[[float], Any]


@dataclass(frozen=True)
class Dimension:
    """Space dimension D of the fractional-dimensional system."""

    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", check_dimension(self.value))

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class DeformedPolynomial:
    """Polynomial in the monomial basis, tagged with the dimension it is differentiated in.

    Attributes:
        coeffs: Coefficient of xi**k at index k
        d: Space dimension used by the deformed derivative and integral
    """

    coeffs: tuple[float, ...]
    d: float = 1.0

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs) or (0.0,)
        if not all(math.isfinite(c) for c in coeffs):
            raise DomainError("Polynomial coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "d", check_dimension(self.d))

    @classmethod
    def monomial(cls, power: int, d: float, coefficient: float = 1.0) -> "DeformedPolynomial":
        """Build coefficient * xi**power."""
        return cls((0.0,) * power + (coefficient,), d)

    @classmethod
    def constant(cls, value: float, d: float) -> "DeformedPolynomial":
        return cls((value,), d)

    @property
    def degree(self) -> int:
        """Highest index with a nonzero coefficient (0 for constants)."""
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) if nonzero.size else 0

    def as_array(self, length: Optional[int] = None) -> np.ndarray:
        """Return the coefficients as an array, zero padded to ``length``."""
        values = np.asarray(self.coeffs, dtype=float)
        if length is None or length <= values.size:
            return values
        return np.pad(values, (0, length - values.size))

    def trimmed(self) -> "DeformedPolynomial":
        return DeformedPolynomial(self.coeffs[: self.degree + 1], self.d)

    def __call__(self, xi):
        return P.polyval(xi, self.coeffs)

    def even_part(self) -> "DeformedPolynomial":
        return self._select_parity(0)

    def odd_part(self) -> "DeformedPolynomial":
        return self._select_parity(1)

    def _select_parity(self, remainder: int) -> "DeformedPolynomial":
        """Keep the coefficients whose index has the given parity."""
        return DeformedPolynomial(
            tuple(c if k % 2 == remainder else 0.0 for k, c in enumerate(self.coeffs)),
            self.d,
        )

    def reflect(self) -> "DeformedPolynomial":
        """Apply the reflection operator, (Rp)(xi) = p(-xi)."""
        return DeformedPolynomial(
            tuple(-c if k % 2 else c for k, c in enumerate(self.coeffs)), self.d
        )

    def derivative(self) -> "DeformedPolynomial":
        """Ordinary derivative."""
        return DeformedPolynomial(tuple(P.polyder(self.coeffs)), self.d)

    def antiderivative(self) -> "DeformedPolynomial":
        """Ordinary antiderivative with zero constant term."""
        return DeformedPolynomial(tuple(P.polyint(self.coeffs)), self.d)

    def shift_down(self) -> "DeformedPolynomial":
        """Divide by xi; the constant coefficient must vanish."""
        if self.coeffs[0] != 0.0:
            raise DomainError("Polynomial with a constant term is not divisible by xi")
        return DeformedPolynomial(self.coeffs[1:], self.d)

    def to_parity_function(self) -> "ParityFunction":
        return ParityFunction(self.even_part(), self.odd_part(), self.d)

    def _check_compatible(self, other: "DeformedPolynomial") -> None:
        if other.d != self.d:
            raise DomainError(f"Cannot combine polynomials with D={self.d} and D={other.d}")

    def __add__(self, other: "DeformedPolynomial") -> "DeformedPolynomial":
        self._check_compatible(other)
        return DeformedPolynomial(tuple(P.polyadd(self.coeffs, other.coeffs)), self.d)

    def __sub__(self, other: "DeformedPolynomial") -> "DeformedPolynomial":
        self._check_compatible(other)
        return DeformedPolynomial(tuple(P.polysub(self.coeffs, other.coeffs)), self.d)

    def __neg__(self) -> "DeformedPolynomial":
        return DeformedPolynomial(tuple(-c for c in self.coeffs), self.d)

    def __mul__(self, other) -> "DeformedPolynomial":
        if isinstance(other, DeformedPolynomial):
            self._check_compatible(other)
            return DeformedPolynomial(tuple(P.polymul(self.coeffs, other.coeffs)), self.d)
        return DeformedPolynomial(tuple(float(other) * c for c in self.coeffs), self.d)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ParityFunction:
    """Function of one real variable stored as explicit even and odd parts.

    The reflection operator R leaves the even part alone and flips the sign of the odd part.
    """

    even_part: RealFunction
    odd_part: RealFunction
    d: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", check_dimension(self.d))

    @classmethod
    def from_function(cls, f: RealFunction, d: float) -> "ParityFunction":
        """Split an arbitrary callable into its even and odd parts."""
        return cls(
            lambda xi: (f(xi) + f(-xi)) / 2,
            lambda xi: (f(xi) - f(-xi)) / 2,
            d,
        )

    def __call__(self, xi):
        return self.even_part(xi) + self.odd_part(xi)

    def reflect(self) -> "ParityFunction":
        odd_part = self.odd_part
        return ParityFunction(self.even_part, lambda xi: -odd_part(xi), self.d)

    def parity_violation(self, samples: Iterable[float]) -> float:
        """Largest deviation from the parity invariants over the sample points."""
        deviations = [abs(self.odd_part(0.0))]
        for xi in samples:
            deviations.append(abs(self.even_part(-xi) - self.even_part(xi)))
            deviations.append(abs(self.odd_part(-xi) + self.odd_part(xi)))
        return float(max(deviations))


@dataclass(frozen=True)
class WeightedIntegral:
    """Result of integrating against the weight sigma(D)/2 * |xi|**(D-1)."""

    value: float
    abs_error_estimate: float
    d: float
    interval: tuple[float, float]
    converged: bool = True


@dataclass(frozen=True)
class GridDensity:
    """Sampled probability density with its weighted integral."""

    d: float
    n: int
    xi: tuple[float, ...]
    rho: tuple[float, ...]
    integral: float
    label: str = field(default="")

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.xi, self.rho))

    @property
    def normalization_residual(self) -> float:
        return abs(self.integral - 1.0)

    @property
    def max_density(self) -> float:
        return max(self.rho)

    def density_at(self, xi: float) -> float:
        """Return the sampled density at the grid point closest to ``xi``."""
        index = int(np.argmin(np.abs(np.asarray(self.xi) - xi)))
        return self.rho[index]
