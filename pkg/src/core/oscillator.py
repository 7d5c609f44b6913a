"""
The deformed harmonic oscillator in coordinate representation.

States are kept in Gaussian-kernel form chi(xi) = Q(xi) exp(-xi^2/2), with Q an exact
DeformedPolynomial. Every operator the oscillator needs (d_D, xi, the ladder operators and
the Hamiltonian) maps kernel polynomials to kernel polynomials through the rule
d_D[Q exp(-beta xi^2)] = (d_D Q - 2 beta xi Q) exp(-beta xi^2).
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from src.core.calculus import deformed_derivative_gaussian
from src.core.config import check_dimension, check_index
from src.core.errors import DomainError
from src.core.fock import build_ladder, coherent_state, fock_state, hamiltonian_matrix
from src.core.models import DeformedPolynomial, GridDensity, ParityFunction
from src.core.quadrature import DEFAULT_TOLERANCE, integrate_whole_line
from src.core.special_functions import d_factor, d_factorial, deformed_exp, sigma

logger = logging.getLogger(__name__)

# Monomial coefficients of H_n^D grow like 2^n n!/[n]_D!; past this order the monomial
# basis loses too many digits to cancellation.
HERMITE_MAX_N = 30
STATE_KERNEL_BETA = 0.5


@dataclass(frozen=True)
class DeformedHermite:
    """H_n^D(xi) = n!/[n]_D! (-1)^n exp(xi^2) d_D^n exp(-xi^2)."""

    n: int
    d: float
    poly: DeformedPolynomial

    def __call__(self, xi):
        return self.poly(xi)


@dataclass(frozen=True)
class OscillatorState:
    """Eigenfunction chi_n(xi) = norm_const * H_n^D(xi) * exp(-xi^2/2), energy n + D/2."""

    n: int
    d: float
    hermite: DeformedHermite
    norm_const: float

    @property
    def kernel(self) -> DeformedPolynomial:
        """Polynomial Q with chi_n = Q exp(-xi^2/2)."""
        return self.norm_const * self.hermite.poly

    def __call__(self, xi):
        return self.norm_const * self.hermite(xi) * np.exp(-np.square(xi) / 2)

    def as_parity_function(self) -> ParityFunction:
        kernel = self.kernel
        even, odd = kernel.even_part(), kernel.odd_part()
        return ParityFunction(
            lambda xi: even(xi) * math.exp(-xi * xi / 2),
            lambda xi: odd(xi) * math.exp(-xi * xi / 2),
            self.d,
        )


def _raise_kernel(q: DeformedPolynomial) -> DeformedPolynomial:
    """Kernel of (xi - d_D)[q exp(-xi^2/2)]."""
    xi = DeformedPolynomial.monomial(1, q.d)
    return xi * q - deformed_derivative_gaussian(q, STATE_KERNEL_BETA)


def _hermite_ratio(n: int, d: float) -> float:
    """n! / [n]_D!, accumulated as a product so neither factorial overflows."""
    return math.prod(k / d_factor(k, d) for k in range(1, n + 1))


@lru_cache(maxsize=256)
def hermite_d(n: int, d) -> DeformedHermite:
    """Deformed Hermite polynomial H_n^D for n <= 30.

    Built by applying (xi - d_D) n times to exp(-xi^2/2) in kernel form, which reproduces
    (-1)^n exp(xi^2/2) d_D^n exp(-xi^2), then scaling by n!/[n]_D!.
    """
    check_index(n)
    d = check_dimension(d)
    if n > HERMITE_MAX_N:
        raise DomainError(f"Hermite order must be <= {HERMITE_MAX_N}, got {n}")
    kernel = DeformedPolynomial.constant(1.0, d)
    for _ in range(n):
        kernel = _raise_kernel(kernel)
    return DeformedHermite(n, d, (_hermite_ratio(n, d) * kernel).trimmed())


def verify_rodrigues_identity(n: int, d) -> tuple[DeformedPolynomial, DeformedPolynomial]:
    """Kernel polynomials of both sides of (-1)^n e^(xi^2/2) d_D^n e^(-xi^2) = (xi - d_D)^n e^(-xi^2/2).

    The left side differentiates the kernel of exp(-xi^2) n times; the right side raises the
    kernel of exp(-xi^2/2) n times. Both multiply exp(-xi^2/2).
    """
    check_index(n)
    d = check_dimension(d)
    derived = DeformedPolynomial.constant(1.0, d)
    raised = DeformedPolynomial.constant(1.0, d)
    for _ in range(n):
        derived = deformed_derivative_gaussian(derived, 1.0)
        raised = _raise_kernel(raised)
    return ((-1) ** n * derived).trimmed(), raised.trimmed()


def oscillator_state(n: int, d) -> OscillatorState:
    """chi_n with norm_const = [n]_D! / (n! sqrt(pi^(D/2) 2^n [n]_D!)); pi^(-D/4) for n = 0."""
    hermite = hermite_d(n, d)
    d = hermite.d
    norm_const = math.sqrt(d_factorial(n, d)) / (
        math.factorial(n) * math.pi ** (d / 4) * 2 ** (n / 2)
    )
    return OscillatorState(n, d, hermite, norm_const)


def apply_raising(state: OscillatorState) -> DeformedPolynomial:
    """Kernel of a_D^dagger chi_n = (xi - d_D) chi_n / sqrt(2); equals sqrt([n+1]_D) chi_(n+1)."""
    return _raise_kernel(state.kernel) * (1 / math.sqrt(2))


def apply_hamiltonian(state: OscillatorState) -> DeformedPolynomial:
    """Kernel of (-1/2 d_D^2 + 1/2 xi^2) chi_n."""
    q = state.kernel
    first = deformed_derivative_gaussian(q, STATE_KERNEL_BETA)
    second = deformed_derivative_gaussian(first, STATE_KERNEL_BETA)
    xi_sq = DeformedPolynomial.monomial(2, q.d)
    return -0.5 * second + 0.5 * (xi_sq * q)


def overlap(left: OscillatorState, right: OscillatorState, tol: float = DEFAULT_TOLERANCE) -> float:
    """Weighted inner product <chi_m | chi_n> over the whole line."""
    if left.d != right.d:
        raise DomainError(f"States live in different dimensions: {left.d} and {right.d}")
    product = left.kernel * right.kernel
    return integrate_whole_line(lambda xi: product(xi) * math.exp(-xi * xi), left.d, tol).value


def oscillator_energy(n: int, d) -> float:
    """Exact eigenvalue E_n = n + D/2."""
    return check_index(n) + check_dimension(d) / 2


def energy_expectation_fock(n: int, d) -> float:
    """<n| 1/2 {a_D^dagger, a_D} |n> on a truncation large enough to keep |n> exact."""
    rep = build_ladder(check_index(n) + 2, d)
    state = fock_state(n, rep).coeffs
    return float(np.real(np.vdot(state, hamiltonian_matrix(rep) @ state)))


def energy_expectation(n: int, d, tol: float = DEFAULT_TOLERANCE) -> float:
    """<chi_n | H | chi_n> by whole-line quadrature with H applied exactly in kernel form."""
    state = oscillator_state(n, d)
    q = state.kernel
    hq = apply_hamiltonian(state)
    return integrate_whole_line(lambda xi: q(xi) * hq(xi) * math.exp(-xi * xi), state.d, tol).value


def coherent_wavefunction(alpha: complex, d, xi: float, tol: float = 1e-12) -> complex:
    """Phi_alpha(xi) = exp(-xi^2/2) / (sqrt(E_D(|alpha|^2)) pi^(D/4)) sum alpha^n H_n^D(xi) / (sqrt(2^n) n!).

    The sum stops where the coherent state's Fock truncation for ``tol`` does.

    Raises:
        ConvergenceError: when the truncation needs Hermite orders above 30
    """
    d = check_dimension(d)
    alpha = complex(alpha)
    cutoff = len(coherent_state(alpha, d, tol, max_n=HERMITE_MAX_N + 1).fock)
    logger.debug("Coherent wavefunction alpha=%s D=%g summed over %d Hermite terms", alpha, d, cutoff)

    total = 0j
    coefficient = 1 + 0j
    for n in range(cutoff):
        if n > 0:
            coefficient *= alpha / (math.sqrt(2) * n)
        total += coefficient * hermite_d(n, d)(xi)
    prefactor = math.exp(-xi * xi / 2) / (
        math.sqrt(deformed_exp(abs(alpha) ** 2, d)) * math.pi ** (d / 4)
    )
    return prefactor * total


def coherent_wavefunction_from_fock(alpha: complex, d, xi: float, tol: float = 1e-12) -> complex:
    """Phi_alpha(xi) = sum_n <xi|n> <n|alpha>, assembled from the oscillator and Fock modules."""
    state = coherent_state(alpha, d, tol, max_n=HERMITE_MAX_N + 1)
    return complex(
        sum(c * oscillator_state(n, state.d)(xi) for n, c in enumerate(state.fock.coeffs))
    )


def coherent_probability_density(alpha: complex, d, xi: float, tol: float = 1e-12) -> float:
    """sigma(D)/2 |xi|^(D-1) |Phi_alpha(xi)|^2."""
    d = check_dimension(d)
    return sigma(d) / 2 * abs(xi) ** (d - 1) * abs(coherent_wavefunction(alpha, d, xi, tol)) ** 2


def oscillator_density(n: int, d, grid: Iterable[float], tol: float = DEFAULT_TOLERANCE) -> GridDensity:
    """Sample rho_n(xi) = sigma(D)/2 |xi|^(D-1) chi_n(xi)^2 on ``grid`` and integrate it over the line.

    Raises:
        DomainError: for non-finite grid points, or xi = 0 when D < 1 (the density diverges there)
    """
    state = oscillator_state(n, d)
    d = state.d
    points = np.asarray(list(grid), dtype=float)
    if not np.all(np.isfinite(points)):
        raise DomainError("Grid points must be finite")
    if d < 1 and np.any(points == 0):
        raise DomainError(f"Density diverges at xi=0 for D={d}; drop the origin from the grid")

    half_sigma = sigma(d) / 2
    rho = half_sigma * np.abs(points) ** (d - 1) * np.square(state(points))
    integral = integrate_whole_line(lambda xi: float(state(xi)) ** 2, d, tol)
    return GridDensity(
        d=d,
        n=n,
        xi=tuple(float(x) for x in points),
        rho=tuple(float(r) for r in rho),
        integral=integral.value,
        label=f"oscillator n={n} D={d:g}",
    )
