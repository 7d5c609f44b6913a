import math

import numpy as np
import pytest

from src.core.errors import ConvergenceError, DomainError
from src.core.fock import (
    basis_vector,
    build_ladder,
    coherent_state,
    coherent_state_from_vacuum,
    deformed_poisson,
    eigenvector_residual,
    fock_state,
    hamiltonian_matrix,
    number_operator,
    poisson_distribution,
)
from src.core.special_functions import deformed_exp

ALGEBRA_DIMENSIONS = (0.5, 1.0, 2.5)


def test_unit_dimension_ladder_is_ordinary():
    rep = build_ladder(2, 1.0)
    assert rep.a[0, 1] == 1.0
    assert rep.a[1, 0] == 0.0


def test_two_dimensional_ladder_entries():
    rep = build_ladder(3, 2.0)
    assert rep.a[0, 1] == pytest.approx(math.sqrt(2))
    assert rep.a[1, 2] == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("d", ALGEBRA_DIMENSIONS)
def test_ladder_structure(d):
    rep = build_ladder(8, d)
    np.testing.assert_array_equal(rep.a_dagger, rep.a.T)
    np.testing.assert_array_equal(rep.a[:, 0], np.zeros(8))  # a|0> = 0
    assert np.count_nonzero(rep.a - np.diag(np.diag(rep.a, k=1), k=1)) == 0
    np.testing.assert_array_equal(np.diag(rep.reflection), [(-1.0) ** n for n in range(8)])
    diagonal = np.diag(rep.a_dagger @ rep.a)
    np.testing.assert_allclose(diagonal, [0, d, 2, 2 + d, 4, 4 + d, 6, 6 + d], rtol=1e-14)


def test_ladder_matrices_are_read_only():
    rep = build_ladder(4, 1.5)
    with pytest.raises(ValueError):
        rep.a[0, 1] = 0.0


@pytest.mark.parametrize("N", [1, 201])
def test_ladder_size_limits(N):
    with pytest.raises(DomainError):
        build_ladder(N, 1.0)


@pytest.mark.parametrize("d", ALGEBRA_DIMENSIONS)
def test_reflection_deformed_commutator(d):
    rep = build_ladder(64, d)
    commutator = rep.a @ rep.a_dagger - rep.a_dagger @ rep.a
    expected = np.eye(64) + (d - 1) * rep.reflection
    np.testing.assert_allclose(commutator[:63, :63], expected[:63, :63], rtol=0, atol=1e-12)


@pytest.mark.parametrize("d", ALGEBRA_DIMENSIONS)
def test_number_operator_below_truncation_edge(d):
    number = number_operator(build_ladder(64, d))
    np.testing.assert_allclose(number[:63, :63], np.diag(np.arange(63.0)), rtol=0, atol=1e-12)


def test_number_operator_examples():
    assert np.diag(number_operator(build_ladder(4, 1.0)))[:3] == pytest.approx([0, 1, 2], abs=1e-15)
    assert number_operator(build_ladder(5, 2.5))[3, 3] == pytest.approx(3.0, abs=1e-14)
    assert number_operator(build_ladder(5, 0.7))[0, 0] == pytest.approx(0.0, abs=1e-15)


def test_hamiltonian_is_number_operator_plus_half_dimension():
    rep = build_ladder(10, 1.8)
    np.testing.assert_allclose(
        hamiltonian_matrix(rep), number_operator(rep) + 0.9 * np.eye(10), atol=1e-14
    )


@pytest.mark.parametrize("d", ALGEBRA_DIMENSIONS)
def test_fock_states_from_raising_operator(d):
    rep = build_ladder(12, d)
    for n in range(11):
        np.testing.assert_allclose(
            fock_state(n, rep).coeffs, basis_vector(n, 12, d).coeffs, rtol=0, atol=1e-12
        )


def test_fock_state_outside_truncation():
    with pytest.raises(DomainError):
        fock_state(5, build_ladder(5, 1.0))


def test_vacuum_is_the_zero_coherent_state():
    state = coherent_state(0.0, 2.0)
    assert state.fock.coeffs[0] == 1.0
    assert np.all(state.fock.coeffs[1:] == 0)
    assert state.truncation_residual < 1e-12


def test_unit_dimension_coherent_amplitudes_are_poissonian():
    state = coherent_state(1.0, 1.0, tol=1e-14)
    for n, c in enumerate(state.fock.coeffs):
        assert c.real == pytest.approx(math.exp(-0.5) / math.sqrt(math.factorial(n)), rel=1e-12)


def test_two_dimensional_vacuum_probability():
    state = coherent_state(1.0, 2.0)
    assert abs(state.fock.coeffs[0]) ** 2 == pytest.approx(1 / deformed_exp(1.0, 2.0), rel=1e-14)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2j])
@pytest.mark.parametrize("d", [1.0, 2.0, 2.7])
def test_coherent_state_is_an_eigenvector_of_lowering(alpha, d):
    state = coherent_state(alpha, d, tol=1e-12)
    residual = eigenvector_residual(state)
    # only the top coefficient is left unmatched
    assert residual == pytest.approx(abs(alpha * state.fock.coeffs[-1]), rel=1e-9, abs=1e-15)
    assert residual <= abs(alpha) * math.sqrt(state.truncation_residual) + 1e-15
    assert abs(state.fock.norm_sq - 1) <= state.truncation_residual


def test_coherent_state_from_vacuum_matches_recurrence():
    alpha, d = 0.8 - 0.3j, 1.6
    state = coherent_state(alpha, d, tol=1e-14)
    rep = build_ladder(len(state.fock) + 1, d)
    from_vacuum = coherent_state_from_vacuum(alpha, rep)
    np.testing.assert_allclose(from_vacuum.coeffs[: len(state.fock)], state.fock.coeffs, atol=1e-12)


def test_coherent_state_cap_is_reported():
    with pytest.raises(ConvergenceError):
        coherent_state(8.0, 1.0, tol=1e-12, max_n=10)


def test_coherent_state_needs_positive_tolerance():
    with pytest.raises(DomainError):
        coherent_state(1.0, 1.0, tol=0.0)


@pytest.mark.parametrize(
    "n, alpha_sq, d, expected",
    [
        (0, 0.0, 1.7, 1.0),
        (3, 0.0, 1.7, 0.0),
        (1, 2.0, 1.0, 2 * math.exp(-2)),
        (4, 1.5, 1.0, 1.5**4 / 24 * math.exp(-1.5)),
    ],
)
def test_deformed_poisson(n, alpha_sq, d, expected):
    assert deformed_poisson(n, alpha_sq, d) == pytest.approx(expected, rel=1e-13)


def test_deformed_poisson_rejects_negative_intensity():
    with pytest.raises(DomainError):
        deformed_poisson(1, -0.5, 1.0)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.5, 3.0])
@pytest.mark.parametrize("alpha_sq", [0.1, 1.0, 3.0, 9.0])
def test_poisson_distribution_normalization(d, alpha_sq):
    weights = poisson_distribution(alpha_sq, d, tol=1e-12)
    assert math.fsum(weights) == pytest.approx(1.0, abs=1e-10)
    for n, weight in enumerate(weights[:10]):
        assert weight == pytest.approx(deformed_poisson(n, alpha_sq, d), rel=1e-10)
