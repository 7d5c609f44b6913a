"""
Integration against the fractional-dimensional weight sigma(D)/2 * |xi|^(D-1).

Each half-line piece is mapped by u = |xi|^D / D, so du = |xi|^(D-1) dxi absorbs the weight
and the origin singularity for D < 1 disappears. scipy's adaptive QUADPACK routine refines the
mapped integral to the requested tolerance and supplies the error estimate.
"""

import logging
import math
from typing import Callable

from scipy import integrate

from src.core.config import check_dimension
from src.core.errors import DomainError, QuadratureError
from src.core.models import WeightedIntegral
from src.core.special_functions import sigma

logger = logging.getLogger(__name__)

RealFunction = Callable[[float], float]

DEFAULT_TOLERANCE = 1e-10
QUAD_SUBINTERVAL_LIMIT = 200
# Whole-line integrands must decay like a Gaussian: they are probed at +-DECAY_PROBE
# and treated as zero beyond XI_CUTOFF.
DECAY_PROBE = 20.0
DECAY_LIMIT = 1e-30
XI_CUTOFF = 40.0


def _sample(g: RealFunction, xi: float) -> float:
    value = float(g(xi))
    if not math.isfinite(value):
        raise QuadratureError(f"Integrand is not finite at xi={xi!r}")
    return value


def _quad(integrand: RealFunction, lo: float, hi: float, tol: float) -> tuple[float, float, bool]:
    """Run QUADPACK and report whether it met the tolerance."""
    result = integrate.quad(
        integrand,
        lo,
        hi,
        epsabs=tol,
        epsrel=tol,
        limit=QUAD_SUBINTERVAL_LIMIT,
        full_output=1,
    )
    value, error = result[0], result[1]
    converged = len(result) == 3
    if not converged:
        logger.warning(
            "Quadrature on [%g, %g] missed tolerance %g (error estimate %g): %s",
            lo, hi, tol, error, result[3],
        )
    return value, error, converged


def _half_line_piece(
    g: RealFunction, d: float, start: float, stop: float, tol: float
) -> tuple[float, float, bool]:
    """Integral of g(s) s^(D-1) over [start, stop] with 0 <= start < stop."""

    def mapped(u: float) -> float:
        return _sample(g, (d * u) ** (1 / d))

    return _quad(mapped, start**d / d, stop**d / d, tol)


def _infinite_half_line(g: RealFunction, d: float, tol: float) -> tuple[float, float, bool]:
    """Integral of g(s) s^(D-1) over (0, inf), mapped to (0, 1) by u = t / (1 - t)."""

    def mapped(t: float) -> float:
        u = t / (1 - t)
        xi = (d * u) ** (1 / d)
        if xi > XI_CUTOFF:
            return 0.0
        return _sample(g, xi) / (1 - t) ** 2

    return _quad(mapped, 0.0, 1.0, tol)


def _check_decay(f: RealFunction) -> None:
    for xi in (DECAY_PROBE, -DECAY_PROBE):
        if abs(f(xi)) > DECAY_LIMIT:
            raise DomainError(
                f"Integrand is {f(xi)!r} at xi={xi}; whole-line integration needs Gaussian decay"
            )


def integrate_weighted(
    f: RealFunction, d, lo: float, hi: float, tol: float = DEFAULT_TOLERANCE
) -> WeightedIntegral:
    """Integrate f against sigma(D)/2 |xi|^(D-1) over the finite interval [lo, hi].

    Args:
        f: Real integrand, integrable against the weight
        d: Space dimension
        lo, hi: Interval bounds with lo <= hi; an interval containing 0 is split there
        tol: Absolute and relative tolerance handed to the adaptive integrator

    Returns:
        WeightedIntegral with the value, the combined error estimate and a converged flag
    """
    d = check_dimension(d)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"Need finite bounds with lo <= hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise DomainError("Tolerance must be positive")

    pieces = []
    if lo < 0:
        pieces.append(_half_line_piece(lambda s: f(-s), d, max(0.0, -hi), -lo, tol))
    if hi > 0:
        pieces.append(_half_line_piece(f, d, max(0.0, lo), hi, tol))

    half_sigma = sigma(d) / 2
    return WeightedIntegral(
        value=half_sigma * math.fsum(piece[0] for piece in pieces),
        abs_error_estimate=half_sigma * math.fsum(piece[1] for piece in pieces),
        d=d,
        interval=(lo, hi),
        converged=all(piece[2] for piece in pieces),
    )


def integrate_whole_line(
    f: RealFunction, d, tol: float = DEFAULT_TOLERANCE
) -> WeightedIntegral:
    """Integrate f against the weight over the whole real line.

    f must decay at least like a Gaussian envelope: |f(+-20)| <= 1e-30, and f is treated as
    zero for |xi| > 40.
    """
    d = check_dimension(d)
    if tol <= 0:
        raise DomainError("Tolerance must be positive")
    _check_decay(f)

    positive = _infinite_half_line(f, d, tol)
    negative = _infinite_half_line(lambda s: f(-s), d, tol)
    half_sigma = sigma(d) / 2
    return WeightedIntegral(
        value=half_sigma * (positive[0] + negative[0]),
        abs_error_estimate=half_sigma * (positive[1] + negative[1]),
        d=d,
        interval=(-math.inf, math.inf),
        converged=positive[2] and negative[2],
    )
