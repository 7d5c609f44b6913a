"""
The D-deformed derivative d_D = d/dxi + (D-1)/(2 xi) (1 - R) and its inverse.

Polynomials are handled exactly through the D-factor rules; arbitrary functions go through
their even/odd split and a Richardson-extrapolated central difference.
"""

import logging
import math
from typing import NamedTuple

from src.core.errors import ConvergenceError, DomainError
from src.core.models import DeformedPolynomial, ParityFunction, WeightedIntegral
from src.core.quadrature import DEFAULT_TOLERANCE, integrate_weighted
from src.core.special_functions import d_factor, sigma

logger = logging.getLogger(__name__)

RICHARDSON_STEP = 1e-2
RICHARDSON_LEVELS = 4


class SeriesIntegral(NamedTuple):
    """Partial sum of the deformed-integral series with a bound on the dropped tail."""

    polynomial: DeformedPolynomial
    tail_bound: float
    terms_used: int


# --- Exact rules on polynomials ---

def deformed_derivative_poly(p: DeformedPolynomial) -> DeformedPolynomial:
    """Apply d_D termwise: xi^n -> [n]_D xi^(n-1)."""
    coeffs = tuple(d_factor(k, p.d) * c for k, c in enumerate(p.coeffs))[1:]
    return DeformedPolynomial(coeffs, p.d)


def deformed_integral_poly(p: DeformedPolynomial) -> DeformedPolynomial:
    """Right inverse of d_D with zero constant term: xi^n -> xi^(n+1) / [n+1]_D."""
    coeffs = [0.0]
    for k, c in enumerate(p.coeffs):
        divisor = d_factor(k + 1, p.d)
        if divisor == 0:
            raise DomainError(f"[{k + 1}]_D vanishes for D={p.d}")
        coeffs.append(c / divisor)
    return DeformedPolynomial(tuple(coeffs), p.d)


def deformed_derivative_gaussian(p: DeformedPolynomial, beta: float) -> DeformedPolynomial:
    """Polynomial part of d_D[P(xi) exp(-beta xi^2)], i.e. d_D P - 2 beta xi P.

    The Gaussian is even, so d_D passes through it like an ordinary factor.
    """
    xi = DeformedPolynomial.monomial(1, p.d)
    return deformed_derivative_poly(p) - (2 * beta) * (xi * p)


# --- Series form of the deformed integral ---

def _geometric_ratios(p: DeformedPolynomial) -> dict[int, float]:
    """Per even power n present in p, the ratio (D-1)/(n+1) the series advances by."""
    return {
        n: (p.d - 1) / (n + 1)
        for n, c in enumerate(p.coeffs)
        if n % 2 == 0 and c != 0.0
    }


def _series_step(term: DeformedPolynomial) -> DeformedPolynomial:
    """Next series term: integral of (D-1)/(2 xi) (1 - R) applied to the previous one."""
    return ((term.d - 1) * term.odd_part().shift_down()).antiderivative()


def deformed_integral_series(p: DeformedPolynomial, terms: int) -> SeriesIntegral:
    """Deformed integral as the alternating series sum_m (-1)^m I_m of repeated ordinary integrals.

    Odd powers of p terminate after one correction; each even power xi^n contributes a geometric
    series in (D-1)/(n+1).

    Raises:
        DomainError: for terms < 1
        ConvergenceError: when some even power has |(D-1)/(n+1)| >= 1; the offending powers
            are attached to the exception
    """
    if terms < 1:
        raise DomainError(f"Need at least one series term, got {terms}")

    ratios = _geometric_ratios(p)
    offending = sorted(n for n, ratio in ratios.items() if abs(ratio) >= 1)
    if offending:
        raise ConvergenceError(
            f"Deformed integral series diverges for D={p.d} at powers {offending}",
            offending_powers=offending,
        )

    term = p.antiderivative()
    total = term
    used = 1
    for m in range(1, terms):
        term = _series_step(term)
        if not any(term.coeffs):
            break
        total = total + term if m % 2 == 0 else total - term
        used += 1

    tail_bound = max(
        (
            abs(p.coeffs[n]) / (n + 1) * abs(ratio) ** terms / (1 - abs(ratio))
            for n, ratio in ratios.items()
            if ratio != 0.0
        ),
        default=0.0,
    )
    logger.debug("Deformed integral series: %d terms, tail bound %g", used, tail_bound)
    return SeriesIntegral(total.trimmed(), tail_bound, used)


# --- Numeric functions ---

def _richardson_derivative(g, x: float, step: float = RICHARDSON_STEP) -> complex:
    """Central difference at x, extrapolated over step halvings to cancel h^2, h^4, ... errors."""
    table = []
    for level in range(RICHARDSON_LEVELS):
        h = step / 2**level
        table.append((g(x + h) - g(x - h)) / (2 * h))
    for order in range(1, RICHARDSON_LEVELS):
        weight = 4**order
        table = [(weight * table[i + 1] - table[i]) / (weight - 1) for i in range(len(table) - 1)]
    return table[0]


def deformed_derivative_numeric(f: ParityFunction, xi: float, step: float = RICHARDSON_STEP):
    """Evaluate (d_D f)(xi) = f'(xi) + (D-1) f_odd(xi) / xi.

    At xi = 0 the last term takes its limit (D-1) f_odd'(0). Accuracy is about 1e-9 relative for
    functions that vary on scales of order one.
    """
    derivative = _richardson_derivative(f, xi, step)
    if xi == 0:
        return derivative + (f.d - 1) * _richardson_derivative(f.odd_part, 0.0, step)
    return derivative + (f.d - 1) * f.odd_part(xi) / xi


def momentum_numeric(f: ParityFunction, xi: float, step: float = RICHARDSON_STEP) -> complex:
    """Deformed momentum operator p_D = -i d_D applied to f at xi."""
    return -1j * deformed_derivative_numeric(f, xi, step)


def deformed_definite_integral(
    f: ParityFunction, a: float, tol: float = DEFAULT_TOLERANCE
) -> WeightedIntegral:
    """Deformed integral of f from 0 to a, the function F with F(0) = 0 and d_D F = f.

    The odd part integrates as usual; the even part contributes
    sgn(a) |a|^(1-D) * integral_0^|a| f_even(s) s^(D-1) ds.
    """
    if not math.isfinite(a):
        raise DomainError(f"Upper limit must be finite, got {a!r}")
    if a == 0:
        return WeightedIntegral(0.0, 0.0, f.d, (0.0, 0.0))

    magnitude = abs(a)
    odd = integrate_weighted(f.odd_part, 1.0, 0.0, magnitude, tol)
    even = integrate_weighted(f.even_part, f.d, 0.0, magnitude, tol)
    scale = math.copysign(magnitude ** (1 - f.d), a) * 2 / sigma(f.d)
    return WeightedIntegral(
        value=odd.value + scale * even.value,
        abs_error_estimate=odd.abs_error_estimate + abs(scale) * even.abs_error_estimate,
        d=f.d,
        interval=(0.0, a),
        converged=odd.converged and even.converged,
    )
