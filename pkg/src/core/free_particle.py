"""
Deformed plane waves Psi_p(xi) = A_p E_D(i p xi) = A_p [COS_D(p xi) + i SIN_D(p xi)].
"""

import math
from dataclasses import dataclass

from scipy import special

from src.core.calculus import momentum_numeric
from src.core.config import check_dimension
from src.core.errors import DomainError
from src.core.models import ParityFunction
from src.core.special_functions import deformed_cos, deformed_sin, log_sigma


def _check_momentum(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p <= 0:
        raise DomainError(f"Momentum must be finite and positive, got {p!r}")
    return p


def plane_wave_amplitude(p: float, d) -> float:
    """A_p = 1 / (2^(D/2-1) Gamma(D/2)) * sqrt(p^(D-1) / (2 sigma(D))); 1/sqrt(2 pi) at D = 1.

    Assembled in log space so large D neither overflows Gamma(D/2) nor underflows sigma(D).
    """
    p = _check_momentum(p)
    d = check_dimension(d)
    log_amplitude = (
        -(d / 2 - 1) * math.log(2)
        - special.gammaln(d / 2)
        + 0.5 * ((d - 1) * math.log(p) - math.log(2) - log_sigma(d))
    )
    return math.exp(log_amplitude)


@dataclass(frozen=True)
class PlaneWave:
    """Momentum eigenfunction with eigenvalue p."""

    p: float
    d: float
    amplitude: float

    def __call__(self, xi: float) -> complex:
        x = self.p * xi
        return self.amplitude * complex(deformed_cos(x, self.d), deformed_sin(x, self.d))

    def as_parity_function(self) -> ParityFunction:
        """Even part A_p COS_D(p xi), odd part i A_p SIN_D(p xi)."""
        return ParityFunction(
            lambda xi: self.amplitude * deformed_cos(self.p * xi, self.d),
            lambda xi: 1j * self.amplitude * deformed_sin(self.p * xi, self.d),
            self.d,
        )


def plane_wave(p: float, d) -> PlaneWave:
    d = check_dimension(d)
    return PlaneWave(_check_momentum(p), d, plane_wave_amplitude(p, d))


def plane_wave_eval(p: float, d, xi: float) -> complex:
    """Psi_p(xi) for p > 0."""
    return plane_wave(p, d)(xi)


def momentum_residual(wave: PlaneWave, xi: float) -> float:
    """|P Psi_p(xi) - p Psi_p(xi)| with P = -i d_D applied numerically."""
    return abs(momentum_numeric(wave.as_parity_function(), xi) - wave.p * wave(xi))
