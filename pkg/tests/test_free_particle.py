import cmath
import math

import mpmath
import pytest

from src.core.errors import DomainError
from src.core.free_particle import (
    momentum_residual,
    plane_wave,
    plane_wave_amplitude,
    plane_wave_eval,
)
from src.core.special_functions import deformed_cos, deformed_sin


def test_unit_dimension_amplitude():
    assert plane_wave_amplitude(1.3, 1.0) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-14)
    assert plane_wave_amplitude(1.3, 1.0) == pytest.approx(0.398942, rel=1e-6)


def test_three_dimensional_amplitude():
    # Gamma(3/2) = sqrt(pi)/2 and sigma(3) = 4 pi collapse A_1 to 1/(2 pi)
    assert plane_wave_amplitude(1.0, 3.0) == pytest.approx(1 / (2 * math.pi), rel=1e-14)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_amplitude_at_large_dimension(p):
    d = mpmath.mpf(400)
    sigma = 2 * mpmath.pi ** (d / 2) / mpmath.gamma(d / 2)
    expected = mpmath.sqrt(mpmath.mpf(p) ** (d - 1) / (2 * sigma)) / (2 ** (d / 2 - 1) * mpmath.gamma(d / 2))
    value = plane_wave_amplitude(p, 400.0)
    assert math.isfinite(value)
    assert value > 0
    assert value == pytest.approx(float(expected), rel=1e-10)


@pytest.mark.parametrize("d", [0.5, 1.0, 2.2, 3.0])
def test_amplitude_scales_with_momentum(d):
    ratio = plane_wave_amplitude(2.4, d) / plane_wave_amplitude(1.2, d)
    assert ratio == pytest.approx(2 ** ((d - 1) / 2), rel=1e-13)


def test_unit_dimension_plane_wave_is_exponential():
    p = 1.7
    for xi in (-3.0, -0.4, 0.0, 1.1, 4.5):
        expected = cmath.exp(1j * p * xi) / math.sqrt(2 * math.pi)
        assert plane_wave_eval(p, 1.0, xi) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("d", [0.4, 1.8, 2.9])
def test_plane_wave_at_origin_is_amplitude(d):
    wave = plane_wave(0.9, d)
    assert wave(0.0) == wave.amplitude


def test_plane_wave_parts():
    wave = plane_wave(2.0, 2.5)
    value = wave(0.35)
    assert value.real == pytest.approx(wave.amplitude * deformed_cos(0.7, 2.5), rel=1e-15)
    assert value.imag == pytest.approx(wave.amplitude * deformed_sin(0.7, 2.5), rel=1e-15)
    split = wave.as_parity_function()
    assert split(0.35) == pytest.approx(value, rel=1e-14)


@pytest.mark.parametrize("d", [0.5, 1.0, 1.5, 2.7])
@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_plane_wave_is_a_momentum_eigenfunction(p, d):
    wave = plane_wave(p, d)
    for xi in (-1.5, -0.2, 0.0, 0.8, 2.0):
        assert momentum_residual(wave, xi) <= 1e-8


@pytest.mark.parametrize("p", [0.0, -1.0, math.nan, math.inf])
def test_momentum_must_be_positive(p):
    with pytest.raises(DomainError):
        plane_wave(p, 1.0)


def test_dimension_is_checked():
    with pytest.raises(DomainError):
        plane_wave_amplitude(1.0, 0.0)
