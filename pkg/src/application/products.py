"""UI-independent orchestration that turns core results into tabular data products."""

import logging
import math
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Optional

import numpy as np

from src.application.presentation import OutputRecord
from src.core.config import (
    DEFAULT_DENSITY_POINTS,
    DEFAULT_XI_MIN_ABS,
    SWEEP_D_MAX,
    SWEEP_D_MIN,
    SWEEP_LEVELS,
    SWEEP_STEPS,
)
from src.core.errors import DeformedQMError, DomainError
from src.core.fock import DEFAULT_COHERENT_TOLERANCE, FOCK_MAX_DIMENSION, coherent_state
from src.core.oscillator import oscillator_density, oscillator_energy
from src.core.quantum_well import (
    DEFAULT_ROOT_TOLERANCE,
    EnergySpectrum,
    well_density,
    well_density_grid,
    well_spectrum,
)
from src.core.special_functions import d_factorial, deformed_cos, deformed_exp, deformed_sin

SolveSpectrum = Callable[[float, int, float], EnergySpectrum]

logger = logging.getLogger(__name__)

UNEXPECTED_ERROR = "Unexpected failure while computing the data product."
SPECIAL_FUNCTIONS: dict[str, Callable[[float, float], float]] = {
    "ed": deformed_exp,
    "cosd": deformed_cos,
    "sind": deformed_sin,
}
SPECIAL_CHOICES = (*SPECIAL_FUNCTIONS, "dfact")
DEFAULT_OSCILLATOR_XI_MAX = 5.0


@dataclass(frozen=True)
class ProductResult:
    """Outcome of building one data product without exposing CLI concerns."""

    command: str
    record: Optional[OutputRecord] = None
    error: Optional[str] = None

    @property
    def succeeded(self) -> bool:
        return self.record is not None


def dimension_grid(d_min: float, d_max: float, steps: int) -> list[float]:
    """``steps`` evenly spaced dimensions from d_min to d_max inclusive."""
    if steps < 1:
        raise DomainError(f"Need at least one step, got {steps}")
    if d_min <= 0 or d_max < d_min:
        raise DomainError(f"Need 0 < d_min <= d_max, got {d_min} and {d_max}")
    if steps == 1:
        return [float(d_min)]
    return [float(d) for d in np.linspace(d_min, d_max, steps)]


def _spectrum_rows(
    d: float, levels: int, tol: float, solve: SolveSpectrum
) -> list[tuple[float, int, float, float]]:
    spectrum = solve(d, levels, tol)
    return [(spectrum.d, level.n, level.k, level.energy) for level in spectrum.levels]


class DataProductService:
    """Build the CSV/JSON tables behind each CLI command, converting failures to data."""

    def __init__(self, solve_spectrum: Optional[SolveSpectrum] = None, workers: int = 1) -> None:
        self._solve_spectrum = solve_spectrum or well_spectrum
        self._workers = max(1, workers)

    def _build(self, command: str, builder: Callable[[], OutputRecord]) -> ProductResult:
        try:
            return ProductResult(command=command, record=builder())
        except DeformedQMError as exc:
            logger.error("%s failed: %s", command, exc)
            return ProductResult(command=command, error=f"{type(exc).__name__}: {exc}")
        except Exception:
            logger.exception("Unexpected error while building %s", command)
            return ProductResult(command=command, error=UNEXPECTED_ERROR)

    def well_energies(
        self,
        d_min: float = SWEEP_D_MIN,
        d_max: float = SWEEP_D_MAX,
        steps: int = SWEEP_STEPS,
        levels: int = SWEEP_LEVELS,
        tol: float = DEFAULT_ROOT_TOLERANCE,
    ) -> ProductResult:
        """Rows (D, n, k_n, E_n) sorted by D then n; the defaults give the energy-versus-dimension figure."""

        def build() -> OutputRecord:
            tasks = [(d, levels, tol, self._solve_spectrum) for d in dimension_grid(d_min, d_max, steps)]
            if self._workers > 1 and len(tasks) > 1:
                with Pool(processes=min(self._workers, len(tasks))) as pool:
                    per_dimension = pool.starmap(_spectrum_rows, tasks)
            else:
                per_dimension = [_spectrum_rows(*task) for task in tasks]
            return OutputRecord(
                command="well-energies",
                parameters={
                    "d_min": d_min,
                    "d_max": d_max,
                    "steps": steps,
                    "levels": levels,
                    "tol": tol,
                },
                columns=("D", "n", "k", "E"),
                rows=tuple(row for rows in per_dimension for row in rows),
            )

        return self._build("well-energies", build)

    def well_density(
        self,
        d: float,
        n: int,
        points: int = DEFAULT_DENSITY_POINTS,
        xi_min_abs: float = DEFAULT_XI_MIN_ABS,
        tol: float = DEFAULT_ROOT_TOLERANCE,
    ) -> ProductResult:
        """Rows (xi, rho) of one well state's probability density."""

        def build() -> OutputRecord:
            spectrum = self._solve_spectrum(d, n + 1, tol)
            density = well_density(spectrum, n, well_density_grid(points, xi_min_abs, d))
            return OutputRecord(
                command="well-density",
                parameters={"d": d, "n": n, "points": points, "xi_min_abs": xi_min_abs, "tol": tol},
                columns=("xi", "rho"),
                rows=tuple(density.points),
                metadata={
                    "energy": spectrum.level(n).energy,
                    "integral": density.integral,
                    "normalization_residual": density.normalization_residual,
                },
            )

        return self._build("well-density", build)

    def special_table(
        self,
        fn: str,
        d: float,
        x_min: float = 0.0,
        x_max: float = 1.0,
        points: int = 11,
        n_max: int = 10,
    ) -> ProductResult:
        """Table of E_D, COS_D or SIN_D over a uniform x grid, or [n]_D! for n = 0..n_max."""

        def build() -> OutputRecord:
            if fn == "dfact":
                parameters = {"fn": fn, "d": d, "n_max": n_max}
                columns = ("n", "value")
                rows = tuple((n, d_factorial(n, d)) for n in range(n_max + 1))
            elif fn in SPECIAL_FUNCTIONS:
                if points < 1:
                    raise DomainError("Need at least one sample point")
                f = SPECIAL_FUNCTIONS[fn]
                xs = [x_min] if points == 1 else np.linspace(x_min, x_max, points)
                parameters = {"fn": fn, "d": d, "x_min": x_min, "x_max": x_max, "points": points}
                columns = ("x", "value")
                rows = tuple((float(x), f(float(x), d)) for x in xs)
            else:
                raise DomainError(f"Unknown function {fn!r}; expected one of {SPECIAL_CHOICES}")
            return OutputRecord("special", parameters, columns, rows)

        return self._build("special", build)

    def coherent_distribution(
        self,
        d: float,
        alpha: complex,
        tol: float = DEFAULT_COHERENT_TOLERANCE,
        max_n: int = FOCK_MAX_DIMENSION,
    ) -> ProductResult:
        """Rows (n, |<n|alpha>|^2): the deformed Poisson distribution of a coherent state."""

        def build() -> OutputRecord:
            state = coherent_state(alpha, d, tol, max_n)
            probabilities = state.probabilities
            return OutputRecord(
                command="coherent",
                parameters={
                    "d": d,
                    "alpha_re": complex(alpha).real,
                    "alpha_im": complex(alpha).imag,
                    "tol": tol,
                    "max_n": max_n,
                },
                columns=("n", "probability"),
                rows=tuple(enumerate(probabilities)),
                metadata={
                    "sum": math.fsum(probabilities),
                    "truncation": len(probabilities),
                    "truncation_residual": state.truncation_residual,
                },
            )

        return self._build("coherent", build)

    def oscillator_density(
        self,
        d: float,
        n: int,
        points: int = DEFAULT_DENSITY_POINTS,
        xi_max: float = DEFAULT_OSCILLATOR_XI_MAX,
        xi_min_abs: float = DEFAULT_XI_MIN_ABS,
    ) -> ProductResult:
        """Rows (xi, rho) of the oscillator eigenstate density on [-xi_max, xi_max]."""

        def build() -> OutputRecord:
            if points < 2 or not xi_max > 0:
                raise DomainError("Need at least two points and a positive xi_max")
            grid = np.linspace(-xi_max, xi_max, points)
            if d < 1:
                grid = grid[np.abs(grid) >= xi_min_abs]
            density = oscillator_density(n, d, grid)
            return OutputRecord(
                command="oscillator-density",
                parameters={
                    "d": d,
                    "n": n,
                    "points": points,
                    "xi_max": xi_max,
                    "xi_min_abs": xi_min_abs,
                },
                columns=("xi", "rho"),
                rows=tuple(density.points),
                metadata={
                    "energy": oscillator_energy(n, d),
                    "integral": density.integral,
                    "normalization_residual": density.normalization_residual,
                },
            )

        return self._build("oscillator-density", build)
