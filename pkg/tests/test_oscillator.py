import math

import numpy as np
import pytest
from numpy.polynomial import hermite as H

from src.core.errors import DomainError
from src.core.models import DeformedPolynomial
from src.core.oscillator import (
    HERMITE_MAX_N,
    apply_raising,
    coherent_probability_density,
    coherent_wavefunction,
    coherent_wavefunction_from_fock,
    energy_expectation,
    energy_expectation_fock,
    hermite_d,
    oscillator_density,
    oscillator_energy,
    oscillator_state,
    overlap,
    verify_rodrigues_identity,
)
from src.core.quadrature import integrate_whole_line
from src.core.special_functions import d_factor, sigma

ORTHONORMALITY_DIMENSIONS = (0.5, 1.5, 2.5)


def test_low_order_hermite_polynomials():
    d = 2.3
    assert hermite_d(0, d).poly.coeffs == (1.0,)
    assert hermite_d(1, d).poly.coeffs == pytest.approx((0.0, 2 / d))
    assert hermite_d(2, d).poly.coeffs == pytest.approx((-2.0, 0.0, 4 / d))


@pytest.mark.parametrize("n", range(11))
def test_unit_dimension_gives_physicists_hermite(n):
    expected = H.herm2poly([0] * n + [1])
    np.testing.assert_array_equal(hermite_d(n, 1.0).poly.as_array(n + 1), expected)


@pytest.mark.parametrize("d", [0.5, 1.5, 2.5])
def test_hermite_parity_and_degree(d):
    for n in range(HERMITE_MAX_N + 1):
        hermite = hermite_d(n, d)
        assert hermite.poly.degree == n
        assert all(c == 0.0 for k, c in enumerate(hermite.poly.coeffs) if k % 2 != n % 2)


def test_hermite_order_limit():
    with pytest.raises(DomainError):
        hermite_d(HERMITE_MAX_N + 1, 1.0)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.2])
def test_rodrigues_identity(d):
    for n in range(11):
        derived, raised = verify_rodrigues_identity(n, d)
        length = max(len(derived.coeffs), len(raised.coeffs))
        np.testing.assert_allclose(derived.as_array(length), raised.as_array(length), rtol=1e-12, atol=1e-9)


def test_ground_state_in_two_dimensions():
    state = oscillator_state(0, 2.0)
    assert state.norm_const == pytest.approx(math.pi ** -0.5, rel=1e-15)
    assert state(0.7) == pytest.approx(math.pi ** -0.5 * math.exp(-0.245), rel=1e-14)


@pytest.mark.parametrize("n, d", [(0, 1.0), (2, 1.5), (5, 0.5), (3, 2.7)])
def test_oscillator_states_are_normalized(n, d):
    state = oscillator_state(n, d)
    assert overlap(state, state) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("d", ORTHONORMALITY_DIMENSIONS)
def test_orthonormality(d):
    states = [oscillator_state(n, d) for n in range(9)]
    for m, left in enumerate(states):
        for n, right in enumerate(states[m:], start=m):
            assert overlap(left, right) == pytest.approx(float(m == n), abs=1e-8)


@pytest.mark.parametrize("d", [0.5, 1.3, 2.5])
def test_raising_operator_ladder_consistency(d):
    for n in range(8):
        raised = apply_raising(oscillator_state(n, d))
        expected = math.sqrt(d_factor(n + 1, d)) * oscillator_state(n + 1, d).kernel
        length = max(len(raised.coeffs), len(expected.coeffs))
        np.testing.assert_allclose(raised.as_array(length), expected.as_array(length), rtol=0, atol=1e-12)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("n", range(5))
def test_energy_eigenvalues(n, d):
    assert oscillator_energy(n, d) == n + d / 2
    assert energy_expectation_fock(n, d) == pytest.approx(n + d / 2, abs=1e-12)
    assert energy_expectation(n, d) == pytest.approx(n + d / 2, abs=1e-6)


def test_vacuum_coherent_wavefunction_is_ground_state():
    ground = oscillator_state(0, 1.7)
    for xi in (-1.0, 0.0, 0.8):
        assert coherent_wavefunction(0.0, 1.7, xi) == pytest.approx(ground(xi), rel=1e-14)


def test_unit_dimension_coherent_density_is_displaced_gaussian():
    alpha = 0.9
    for xi in np.linspace(-3.0, 4.0, 15):
        expected = math.pi**-0.5 * math.exp(-((xi - math.sqrt(2) * alpha) ** 2))
        assert abs(coherent_wavefunction(alpha, 1.0, xi, tol=1e-20)) ** 2 == pytest.approx(expected, abs=1e-8)


def test_coherent_wavefunction_matches_fock_assembly(rng):
    for xi in rng.uniform(-4.0, 4.0, 50):
        for alpha, d in ((0.7, 1.5), (1.0 + 0.5j, 2.7)):
            assert coherent_wavefunction(alpha, d, xi) == pytest.approx(
                coherent_wavefunction_from_fock(alpha, d, xi), abs=1e-9
            )


def test_coherent_wavefunction_is_normalized():
    result = integrate_whole_line(lambda xi: abs(coherent_wavefunction(1.0, 2.0, xi)) ** 2, 2.0)
    assert result.value == pytest.approx(1.0, abs=1e-7)


def test_coherent_probability_density_includes_weight():
    d, xi = 2.5, 0.6
    expected = sigma(d) / 2 * xi ** (d - 1) * abs(coherent_wavefunction(0.4, d, xi)) ** 2
    assert coherent_probability_density(0.4, d, xi) == pytest.approx(expected, rel=1e-15)


def test_ground_state_density_in_one_dimension():
    grid = np.linspace(-3.0, 3.0, 13)
    density = oscillator_density(0, 1.0, grid)
    for xi, rho in density.points:
        assert rho == pytest.approx(math.pi**-0.5 * math.exp(-xi * xi), rel=1e-13)
    assert density.integral == pytest.approx(1.0, abs=1e-9)


def test_density_vanishes_at_origin_in_three_dimensions():
    assert oscillator_density(0, 3.0, [0.0, 0.5]).density_at(0.0) == 0.0


def test_density_grows_toward_origin_below_one_dimension():
    density = oscillator_density(0, 0.5, [1e-6, 1e-4, 1e-2, 1.0])
    assert density.rho[0] > density.rho[1] > density.rho[2] > density.rho[3]
    with pytest.raises(DomainError):
        oscillator_density(0, 0.5, [0.0, 1.0])


def test_kernel_is_exact_polynomial():
    state = oscillator_state(3, 1.2)
    assert isinstance(state.kernel, DeformedPolynomial)
    assert state.kernel(0.5) * math.exp(-0.125) == pytest.approx(state(0.5), rel=1e-13)
