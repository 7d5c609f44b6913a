"""
D-dependent scalar building blocks: the solid-angle factor, D-factors, deformed factorials,
Bessel functions and the deformed exponential, cosine and sine.

Every series here is an ascending power series whose terms follow t_n = t_{n-1} * factor / divisor(n).
Terms are summed with math.fsum; when the terms cancel heavily the sum is redone with mpmath
at enough digits to absorb the cancellation.
"""

import cmath
import logging
import math
from typing import Any, Callable, Union

import mpmath
from scipy import special

from src.core.config import check_dimension, check_index
from src.core.errors import ConvergenceError, DomainError, FactorialOverflowError

logger = logging.getLogger(__name__)

SERIES_REL_TOL = 1e-16
SERIES_MAX_TERMS = 10_000
CANCELLATION_RATIO = 8.0  # sum of |terms| allowed per unit of |sum| before resumming
EXTENDED_GUARD_DIGITS = 34
BESSEL_X_MAX = 60.0
BESSEL_NU_MIN = -1.0
LOG_DOUBLE_MAX = math.log(1.7976931348623157e308)

Number = Union[float, complex]
TermFunction = Callable[[Any, Any], Any]
FactorFunction = Callable[[Any], Any]
DivisorFunction = Callable[[int, Any], Any]


# --- Series engine ---

def _sum_series(
    x: Number,
    parameter: float,
    first: TermFunction,
    factor: FactorFunction,
    divisor: DivisorFunction,
) -> Number:
    """Sum t_0 = first(x, p), t_n = t_{n-1} * factor(x) / divisor(n, p) to convergence."""
    terms = _float_terms(x, parameter, first, factor, divisor)
    value = _compensated_sum(terms)
    magnitude = math.fsum(abs(term) for term in terms)
    if magnitude <= CANCELLATION_RATIO * abs(value):
        return value
    logger.debug(
        "Series at x=%r cancels (sum |t|=%.3g, |sum|=%.3g); resumming in mpmath",
        x, magnitude, abs(value),
    )
    exact = _extended_series(x, parameter, first, factor, divisor, magnitude)
    return exact if isinstance(x, complex) else exact.real


def _float_terms(
    x: Number,
    parameter: float,
    first: TermFunction,
    factor: FactorFunction,
    divisor: DivisorFunction,
) -> list:
    """Generate series terms in double precision until the relative tail bound is met."""
    term = first(x, parameter)
    step = factor(x)
    terms = [term]
    partial = term
    for n in range(1, SERIES_MAX_TERMS):
        term = term * step / divisor(n, parameter)
        terms.append(term)
        partial += term
        if not cmath.isfinite(partial):
            raise ConvergenceError(f"Series overflowed at x={x!r} after {n} terms")
        if abs(term) <= SERIES_REL_TOL * abs(partial):
            return terms
    raise ConvergenceError(
        f"Series at x={x!r} did not converge within {SERIES_MAX_TERMS} terms"
    )


def _compensated_sum(terms: list) -> Number:
    if any(isinstance(term, complex) for term in terms):
        return complex(
            math.fsum(term.real for term in terms),
            math.fsum(term.imag for term in terms),
        )
    return math.fsum(terms)


def _extended_series(
    x: Number,
    parameter: float,
    first: TermFunction,
    factor: FactorFunction,
    divisor: DivisorFunction,
    magnitude: float,
) -> complex:
    """Resum a cancelling series in mpmath with enough digits to cover the cancellation."""
    digits = EXTENDED_GUARD_DIGITS + max(0, math.ceil(math.log10(magnitude)))
    with mpmath.workdps(digits):
        p = mpmath.mpf(parameter)
        z = mpmath.mpmathify(x)
        term = first(z, p)
        step = factor(z)
        total = term
        negligible = mpmath.mpf(magnitude) * mpmath.mpf(10) ** (-digits)
        for n in range(1, SERIES_MAX_TERMS):
            term = term * step / divisor(n, p)
            total += term
            if abs(term) <= negligible:
                return complex(total)
    raise ConvergenceError(
        f"Series at x={x!r} did not converge within {SERIES_MAX_TERMS} terms"
    )


def _unit_term(x, parameter):
    return 1


def _identity(x):
    return x


def _negative_square(x):
    return -x * x


def _d_factor_value(n: int, d):
    """[n]_D without validation; works for float and mpmath d."""
    return n if n % 2 == 0 else (n - 1) + d


# --- Scalar building blocks ---

def log_sigma(d) -> float:
    """log sigma(D) = log 2 + D/2 log pi - log Gamma(D/2), finite for every valid D."""
    d = check_dimension(d)
    return float(math.log(2) + d / 2 * math.log(math.pi) - special.gammaln(d / 2))


def sigma(d) -> float:
    """Solid-angle factor sigma(D) = 2 pi^(D/2) / Gamma(D/2)."""
    return math.exp(log_sigma(d))


def d_factor(n: int, d) -> float:
    """D-factor [n]_D = n + (D-1)/2 * (1 - (-1)^n): n for even n, n + D - 1 for odd n."""
    n = check_index(n)
    d = check_dimension(d)
    return float(_d_factor_value(n, d))


def d_factorial(n: int, d) -> float:
    """D-deformed factorial [n]_D! from its gamma-function closed form.

    Raises:
        FactorialOverflowError: when the value exceeds the double range
            (n around 170 for D <= 3).
    """
    n = check_index(n)
    d = check_dimension(d)
    half = n // 2
    upper = (n + d) / 2 if n % 2 == 0 else (n + d + 1) / 2
    log_value = (
        n * math.log(2)
        + special.gammaln(half + 1)
        + special.gammaln(upper)
        - special.gammaln(d / 2)
    )
    if log_value > LOG_DOUBLE_MAX:
        raise FactorialOverflowError(f"[{n}]_D! with D={d} exceeds the double range")
    # Gamma(upper) / Gamma(D/2) as a Pochhammer symbol stays finite when both gammas overflow.
    return math.ldexp(float(special.gamma(half + 1) * special.poch(d / 2, upper - d / 2)), n)


def d_factorial_product(n: int, d) -> float:
    """[n]_D! as the iterated product [n]_D [n-1]_D ... [1]_D."""
    n = check_index(n)
    d = check_dimension(d)
    return float(math.prod(_d_factor_value(k, d) for k in range(1, n + 1)))


# --- Bessel functions ---

def _bessel_divisor(k: int, nu):
    return k * (nu + k)


def _bessel_j_factor(x):
    return -x * x / 4


def _bessel_i_factor(x):
    return x * x / 4


def _check_bessel_arguments(nu: float, x: float) -> None:
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("Bessel order and argument must be finite")
    if nu < BESSEL_NU_MIN:
        raise DomainError(f"Bessel order must be >= {BESSEL_NU_MIN}, got {nu}")
    if abs(x) > BESSEL_X_MAX:
        raise DomainError(f"|x| must be <= {BESSEL_X_MAX} for the series evaluation, got {x}")


def _bessel(nu: float, x: float, factor: FactorFunction, reflection_sign: int) -> float:
    """Shared ascending series (x/2)^nu / Gamma(nu+1) * sum (+-x^2/4)^k / (k! (nu+1)_k)."""
    nu = float(nu)
    x = float(x)
    _check_bessel_arguments(nu, x)
    if nu < 0 and nu.is_integer():
        return reflection_sign ** int(-nu) * _bessel(-nu, x, factor, reflection_sign)
    if x < 0:
        if not nu.is_integer():
            raise DomainError("Negative arguments need an integer Bessel order")
        return (-1) ** int(nu) * _bessel(nu, -x, factor, reflection_sign)
    if x == 0:
        if nu == 0:
            return 1.0
        if nu > 0:
            return 0.0
        raise DomainError(f"Bessel function of order {nu} diverges at the origin")
    series = _sum_series(x, nu, _unit_term, factor, _bessel_divisor)
    return float((x / 2) ** nu * special.rgamma(nu + 1) * series)


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu >= -1 and |x| <= 60."""
    return _bessel(nu, x, _bessel_j_factor, reflection_sign=-1)


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function I_nu(x) for nu >= -1 and |x| <= 60."""
    return _bessel(nu, x, _bessel_i_factor, reflection_sign=1)


# --- Deformed exponential, cosine and sine ---

def _as_argument(x) -> Number:
    return complex(x) if isinstance(x, complex) else float(x)


def _as_real_argument(x) -> float:
    if isinstance(x, complex):
        raise DomainError("Use deformed_exp for complex arguments")
    return float(x)


def _exp_divisor(n: int, d):
    return _d_factor_value(n, d)


def _cos_divisor(n: int, d):
    return _d_factor_value(2 * n, d) * _d_factor_value(2 * n - 1, d)


def _sin_first(x, d):
    return x / _d_factor_value(1, d)


def _sin_divisor(n: int, d):
    return _d_factor_value(2 * n + 1, d) * _d_factor_value(2 * n, d)


def deformed_exp(x: Number, d) -> Number:
    """Deformed exponential E_D(x) = sum x^n / [n]_D!, for real or complex x."""
    d = check_dimension(d)
    return _sum_series(_as_argument(x), d, _unit_term, _identity, _exp_divisor)


def deformed_cos(x: float, d) -> float:
    """Deformed cosine COS_D(x) = sum (-1)^n x^(2n) / [2n]_D!."""
    d = check_dimension(d)
    return _sum_series(_as_real_argument(x), d, _unit_term, _negative_square, _cos_divisor)


def deformed_sin(x: float, d) -> float:
    """Deformed sine SIN_D(x) = sum (-1)^(n-1) x^(2n-1) / [2n-1]_D!."""
    d = check_dimension(d)
    return _sum_series(_as_real_argument(x), d, _sin_first, _negative_square, _sin_divisor)


def _closed_form_prefactor(x: float, d: float) -> float:
    """Gamma(D/2) (|x|/2)^(1-D/2), the common factor of the Bessel closed forms."""
    return math.exp(special.gammaln(d / 2) + (1 - d / 2) * math.log(abs(x) / 2))


def deformed_exp_closed(x: float, d) -> float:
    """E_D(x) = Gamma(D/2)(x/2)^(1-D/2) [I_(D/2-1)(x) + I_(D/2)(x)], continued to x <= 0 by parity."""
    d = check_dimension(d)
    x = _as_real_argument(x)
    if x == 0:
        return 1.0
    prefactor = _closed_form_prefactor(x, d)
    even = prefactor * bessel_i(d / 2 - 1, abs(x))
    odd = prefactor * bessel_i(d / 2, abs(x))
    return even + odd if x > 0 else even - odd


def deformed_cos_closed(x: float, d) -> float:
    """COS_D(x) = Gamma(D/2)(x/2)^(1-D/2) J_(D/2-1)(x), an even function."""
    d = check_dimension(d)
    x = _as_real_argument(x)
    if x == 0:
        return 1.0
    return _closed_form_prefactor(x, d) * bessel_j(d / 2 - 1, abs(x))


def deformed_sin_closed(x: float, d) -> float:
    """SIN_D(x) = Gamma(D/2)(x/2)^(1-D/2) J_(D/2)(x), an odd function."""
    d = check_dimension(d)
    x = _as_real_argument(x)
    if x == 0:
        return 0.0
    value = _closed_form_prefactor(x, d) * bessel_j(d / 2, abs(x))
    return value if x > 0 else -value
