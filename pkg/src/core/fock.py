"""
Truncated number-basis representation of the deformed ladder algebra.

a_D|n> = sqrt([n]_D)|n-1>, a_D^dagger|n> = sqrt([n+1]_D)|n+1>, and the commutator
[a_D, a_D^dagger] = 1 + (D-1)R. Matrices are dense and hold on indices n < N-1; the top
basis state is cut by the truncation.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.config import check_dimension, check_index
from src.core.errors import ConvergenceError, DomainError
from src.core.special_functions import d_factor, d_factorial, deformed_exp

logger = logging.getLogger(__name__)

FOCK_MAX_DIMENSION = 200
DEFAULT_COHERENT_TOLERANCE = 1e-12


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class LadderRep:
    """Dense N x N matrices of a_D, a_D^dagger and the reflection operator R."""

    dim_trunc: int
    d: float
    a: np.ndarray
    a_dagger: np.ndarray
    reflection: np.ndarray


@dataclass(frozen=True)
class FockVector:
    """Expansion coefficients on the number states |0>, ..., |N-1>."""

    coeffs: np.ndarray
    d: float

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.ndim != 1 or not np.all(np.isfinite(coeffs)):
            raise DomainError("Fock coefficients must be a finite one-dimensional array")
        object.__setattr__(self, "coeffs", _frozen(coeffs))
        object.__setattr__(self, "d", check_dimension(self.d))

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def apply(self, matrix: np.ndarray) -> "FockVector":
        """Act with an N x N operator matrix."""
        return FockVector(matrix @ self.coeffs, self.d)


@dataclass(frozen=True)
class CoherentState:
    """Normalized deformed coherent state truncated at len(fock) number states.

    Attributes:
        alpha: Eigenvalue of a_D
        fock: Coefficients c_n = alpha^n / sqrt([n]_D! E_D(|alpha|^2))
        truncation_residual: Upper bound on sum_{m >= N-1} |c_m|^2, which includes the
            last kept coefficient
    """

    alpha: complex
    fock: FockVector
    truncation_residual: float

    @property
    def d(self) -> float:
        return self.fock.d

    @property
    def probabilities(self) -> list[float]:
        return [float(abs(c) ** 2) for c in self.fock.coeffs]


def build_ladder(N: int, d) -> LadderRep:
    """Build the ladder matrices on the first N number states (2 <= N <= 200)."""
    check_index(N, "N")
    if not 2 <= N <= FOCK_MAX_DIMENSION:
        raise DomainError(f"Truncation must lie in [2, {FOCK_MAX_DIMENSION}], got {N}")
    d = check_dimension(d)

    superdiagonal = np.sqrt([d_factor(n, d) for n in range(1, N)])
    a = np.diag(superdiagonal, k=1)
    reflection = np.diag([(-1.0) ** n for n in range(N)])
    return LadderRep(
        dim_trunc=N,
        d=d,
        a=_frozen(a),
        a_dagger=_frozen(a.T.copy()),
        reflection=_frozen(reflection),
    )


def _anticommutator(rep: LadderRep) -> np.ndarray:
    return rep.a_dagger @ rep.a + rep.a @ rep.a_dagger


def number_operator(rep: LadderRep) -> np.ndarray:
    """N_D = 1/2 {a_D^dagger, a_D} - D/2; its diagonal is 0, 1, 2, ... below the truncation edge."""
    return 0.5 * _anticommutator(rep) - rep.d / 2 * np.eye(rep.dim_trunc)


def hamiltonian_matrix(rep: LadderRep) -> np.ndarray:
    """Oscillator Hamiltonian 1/2 {a_D^dagger, a_D} = N_D + D/2."""
    return 0.5 * _anticommutator(rep)


def basis_vector(n: int, N: int, d) -> FockVector:
    """The number state |n> as a length-N coefficient vector."""
    check_index(n)
    if n >= N:
        raise DomainError(f"State {n} does not fit in {N} basis states")
    coeffs = np.zeros(N, dtype=complex)
    coeffs[n] = 1.0
    return FockVector(coeffs, d)


def fock_state(n: int, rep: LadderRep) -> FockVector:
    """|n> built as (a_D^dagger)^n |0> / sqrt([n]_D!)."""
    check_index(n)
    if n >= rep.dim_trunc:
        raise DomainError(f"State {n} does not fit in {rep.dim_trunc} basis states")
    state = basis_vector(0, rep.dim_trunc, rep.d)
    for _ in range(n):
        state = state.apply(rep.a_dagger)
    return FockVector(state.coeffs / math.sqrt(d_factorial(n, rep.d)), rep.d)


def coherent_state(
    alpha: complex,
    d,
    tol: float = DEFAULT_COHERENT_TOLERANCE,
    max_n: int = FOCK_MAX_DIMENSION,
) -> CoherentState:
    """Build |alpha> with adaptive truncation.

    Coefficients follow c_n = c_(n-1) alpha / sqrt([n]_D). Beyond index m the ratio
    |c_(m+1)|^2 / |c_m|^2 = |alpha|^2 / [m+1]_D is at most rho = |alpha|^2 / (m + min(1, D)),
    so the tail from m on is bounded by |c_m|^2 / (1 - rho). Truncation stops at the first m
    where that bound drops below tol.

    Raises:
        DomainError: for tol <= 0
        ConvergenceError: when max_n states are not enough
    """
    d = check_dimension(d)
    if tol <= 0:
        raise DomainError("Tolerance must be positive")
    alpha = complex(alpha)
    alpha_sq = abs(alpha) ** 2
    floor = min(1.0, d)

    coeffs = [1.0 / math.sqrt(deformed_exp(alpha_sq, d))]
    for n in range(max_n):
        if n > 0:
            coeffs.append(coeffs[-1] * alpha / math.sqrt(d_factor(n, d)))
        rho = alpha_sq / (n + floor)
        tail = abs(coeffs[-1]) ** 2 / (1 - rho) if rho < 1 else math.inf
        if n > 0 and tail < tol:
            logger.debug("Coherent state alpha=%s, D=%g truncated at N=%d", alpha, d, n + 1)
            return CoherentState(alpha, FockVector(coeffs, d), tail)
    raise ConvergenceError(
        f"Coherent state alpha={alpha} needs more than {max_n} number states for tol={tol}"
    )


def eigenvector_residual(state: CoherentState) -> float:
    """|| a_D |alpha> - alpha |alpha> || on the state's own truncation.

    Only the top coefficient misses its partner, so the residual is at most
    |alpha| sqrt(truncation_residual).
    """
    rep = build_ladder(len(state.fock), state.d)
    lowered = state.fock.apply(rep.a)
    return float(np.linalg.norm(lowered.coeffs - state.alpha * state.fock.coeffs))


def coherent_state_from_vacuum(alpha: complex, rep: LadderRep) -> FockVector:
    """E_D(alpha a_D^dagger)|0> / sqrt(E_D(|alpha|^2)), summed on the truncated basis."""
    alpha = complex(alpha)
    term = basis_vector(0, rep.dim_trunc, rep.d).coeffs
    total = term.copy()
    for n in range(1, rep.dim_trunc):
        term = alpha * (rep.a_dagger @ term) / d_factor(n, rep.d)
        total = total + term
    return FockVector(total / math.sqrt(deformed_exp(abs(alpha) ** 2, rep.d)), rep.d)


def deformed_poisson(n: int, alpha_sq: float, d) -> float:
    """Deformed Poisson weight (alpha^2)^n / ([n]_D! E_D(alpha^2))."""
    check_index(n)
    d = check_dimension(d)
    if not (math.isfinite(alpha_sq) and alpha_sq >= 0):
        raise DomainError(f"alpha_sq must be finite and non-negative, got {alpha_sq!r}")
    weight = 1.0 / deformed_exp(alpha_sq, d)
    for k in range(1, n + 1):
        weight *= alpha_sq / d_factor(k, d)
    return weight


def poisson_distribution(
    alpha_sq: float,
    d,
    tol: float = DEFAULT_COHERENT_TOLERANCE,
    max_n: int = FOCK_MAX_DIMENSION,
) -> list[float]:
    """Deformed Poisson weights for n = 0 .. N-1, with N chosen so the dropped mass is below tol."""
    if not (math.isfinite(alpha_sq) and alpha_sq >= 0):
        raise DomainError(f"alpha_sq must be finite and non-negative, got {alpha_sq!r}")
    return coherent_state(math.sqrt(alpha_sq), d, tol, max_n).probabilities
