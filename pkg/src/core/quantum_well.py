"""
Particle in an infinite well of unit width, |xi| <= 1/2, in D dimensions.

Even states are A COS_D(k xi) with COS_D(k/2) = 0, odd states A SIN_D(k xi) with
SIN_D(k/2) = 0, and E = k^2/2. The boundary conditions are solved on the Bessel closed forms,
whose prefactor never vanishes for x > 0, so the roots are Bessel zeros: x = k/2 runs through
the zeros of J_(D/2-1) (even) and J_(D/2) (odd).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Literal, NamedTuple

import numpy as np
from scipy import optimize

from src.core.config import (
    DEFAULT_DENSITY_POINTS,
    DEFAULT_XI_MIN_ABS,
    WELL_HALF_WIDTH,
    check_dimension,
    check_index,
)
from src.core.errors import BracketNotFoundError, DomainError
from src.core.models import GridDensity
from src.core.quadrature import DEFAULT_TOLERANCE, integrate_weighted
from src.core.special_functions import (
    BESSEL_X_MAX,
    deformed_cos,
    deformed_cos_closed,
    deformed_sin,
    deformed_sin_closed,
    sigma,
)

logger = logging.getLogger(__name__)

Parity = Literal["even", "odd"]

# Bracketing step in x = k/2; below the smallest zero spacing of J_nu for nu >= -1.
SCAN_STEP = math.pi / 8
# The scan may extend up to the Bessel working range, roughly 19 roots per parity.
SCAN_X_MAX = BESSEL_X_MAX
DEFAULT_ROOT_TOLERANCE = 1e-12

_BOUNDARY_FUNCTIONS: dict[str, Callable[[float, float], float]] = {
    "even": deformed_cos_closed,
    "odd": deformed_sin_closed,
}
_STATE_FUNCTIONS: dict[str, Callable[[float, float], float]] = {
    "even": deformed_cos,
    "odd": deformed_sin,
}


class EnergyLevel(NamedTuple):
    n: int
    parity: Parity
    k: float
    energy: float


@dataclass(frozen=True)
class EnergySpectrum:
    """Lowest well levels for one dimension, ordered by energy."""

    d: float
    levels: tuple[EnergyLevel, ...]
    tol: float = DEFAULT_ROOT_TOLERANCE

    def __len__(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> EnergyLevel:
        check_index(n)
        if n >= len(self.levels):
            raise DomainError(f"Spectrum holds {len(self.levels)} levels, asked for n={n}")
        return self.levels[n]

    @property
    def energies(self) -> list[float]:
        return [level.energy for level in self.levels]


def _boundary_roots(parity: Parity, d: float, count: int, tol: float) -> list[float]:
    """First ``count`` positive zeros of COS_D or SIN_D, bracketed on a grid of step pi/8."""
    g = _BOUNDARY_FUNCTIONS[parity]

    def boundary(x: float) -> float:
        return g(x, d)

    roots: list[float] = []
    # SIN_D vanishes at the origin; its first positive zero lies beyond j_(0,1) > pi/8.
    lo = 0.0 if parity == "even" else SCAN_STEP
    g_lo = boundary(lo)
    while len(roots) < count:
        hi = lo + SCAN_STEP
        if hi > SCAN_X_MAX:
            raise BracketNotFoundError(
                f"Only {len(roots)} {parity} roots below x={SCAN_X_MAX} for D={d}, needed {count}"
            )
        g_hi = boundary(hi)
        if g_hi == 0.0:
            roots.append(hi)
        elif g_lo * g_hi < 0:
            roots.append(optimize.bisect(boundary, lo, hi, xtol=tol / 2))
        lo, g_lo = hi, g_hi
    logger.debug("D=%g %s roots up to x=%g", d, parity, lo)
    return roots


@lru_cache(maxsize=512)
def _solve_spectrum(d: float, n_levels: int, tol: float) -> EnergySpectrum:
    even = _boundary_roots("even", d, (n_levels + 1) // 2, tol)
    odd = _boundary_roots("odd", d, n_levels // 2, tol)
    roots = sorted([(x, "even") for x in even] + [(x, "odd") for x in odd])
    levels = tuple(
        EnergyLevel(n, parity, 2 * x, 2 * x * x) for n, (x, parity) in enumerate(roots)
    )
    return EnergySpectrum(d, levels, tol)


def well_spectrum(d, n_levels: int, tol: float = DEFAULT_ROOT_TOLERANCE) -> EnergySpectrum:
    """Solve for the lowest ``n_levels`` states, each wavenumber to |dk| <= tol.

    Raises:
        DomainError: for n_levels < 1 or tol <= 0
        BracketNotFoundError: when the scan passes x = 60 before finding enough roots
    """
    d = check_dimension(d)
    check_index(n_levels, "n_levels")
    if n_levels < 1:
        raise DomainError("Need at least one level")
    if not tol > 0:
        raise DomainError("Tolerance must be positive")
    return _solve_spectrum(d, n_levels, float(tol))


@lru_cache(maxsize=1024)
def _amplitude(d: float, parity: Parity, k: float, tol: float) -> float:
    """A_n with sigma(D)/2 int_(-1/2)^(1/2) |xi|^(D-1) (A f(k xi))^2 dxi = 1."""
    f = _STATE_FUNCTIONS[parity]
    half = integrate_weighted(lambda xi: f(k * xi, d) ** 2, d, 0.0, WELL_HALF_WIDTH, tol)
    return 1 / math.sqrt(2 * half.value)


@dataclass(frozen=True)
class WellState:
    """Normalized well eigenfunction; zero outside |xi| <= 1/2."""

    n: int
    parity: Parity
    k: float
    amplitude: float
    d: float

    def __call__(self, xi: float) -> float:
        if abs(xi) > WELL_HALF_WIDTH:
            return 0.0
        return self.amplitude * _STATE_FUNCTIONS[self.parity](self.k * xi, self.d)


def well_state(spectrum: EnergySpectrum, n: int, tol: float = DEFAULT_TOLERANCE) -> WellState:
    level = spectrum.level(n)
    amplitude = _amplitude(spectrum.d, level.parity, level.k, tol)
    return WellState(n, level.parity, level.k, amplitude, spectrum.d)


def well_wavefunction(spectrum: EnergySpectrum, n: int, xi: float) -> float:
    """Psi_n(xi), normalized against the weight on the well."""
    return well_state(spectrum, n)(xi)


def well_density_grid(
    points: int = DEFAULT_DENSITY_POINTS, xi_min_abs: float = DEFAULT_XI_MIN_ABS, d=1.0
) -> list[float]:
    """Uniform grid on [-1/2, 1/2]; for D < 1 points with |xi| < xi_min_abs are dropped."""
    check_index(points, "points")
    if points < 2:
        raise DomainError("A density grid needs at least two points")
    d = check_dimension(d)
    grid = np.linspace(-WELL_HALF_WIDTH, WELL_HALF_WIDTH, points)
    if d < 1:
        if not xi_min_abs > 0:
            raise DomainError("xi_min_abs must be positive when D < 1")
        grid = grid[np.abs(grid) >= xi_min_abs]
    return [float(x) for x in grid]


def well_density(
    spectrum: EnergySpectrum, n: int, grid: Iterable[float], tol: float = DEFAULT_TOLERANCE
) -> GridDensity:
    """Sample rho_n(xi) = sigma(D)/2 |xi|^(D-1) Psi_n(xi)^2 on ``grid`` and integrate it over the well.

    Raises:
        DomainError: for grid points outside the well, or xi = 0 when D < 1
    """
    d = spectrum.d
    state = well_state(spectrum, n, tol)
    points = [float(x) for x in grid]
    if any(not math.isfinite(x) or abs(x) > WELL_HALF_WIDTH for x in points):
        raise DomainError("Density grid must lie within [-1/2, 1/2]")
    if d < 1 and 0.0 in points:
        raise DomainError(f"Density diverges at xi=0 for D={d}; drop the origin from the grid")

    half_sigma = sigma(d) / 2
    rho = tuple(half_sigma * abs(x) ** (d - 1) * state(x) ** 2 for x in points)
    integral = integrate_weighted(
        lambda xi: state(xi) ** 2, d, -WELL_HALF_WIDTH, WELL_HALF_WIDTH, tol
    )
    return GridDensity(
        d=d,
        n=n,
        xi=tuple(points),
        rho=rho,
        integral=integral.value,
        label=f"well n={n} D={d:g}",
    )


def energy_vs_dimension(
    d_grid: Iterable[float], n: int, tol: float = DEFAULT_ROOT_TOLERANCE
) -> list[tuple[float, float]]:
    """E_n sampled over a list of dimensions."""
    check_index(n)
    return [(float(d), well_spectrum(d, n + 1, tol).level(n).energy) for d in d_grid]
