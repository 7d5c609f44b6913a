import numpy as np
import pytest

from src.core.models import DeformedPolynomial

FRACTIONAL_DIMENSIONS = (0.5, 1.5, 2.7)
CLOSED_FORM_DIMENSIONS = (0.5, 1.5, 2.0, 2.5, 3.0)


@pytest.fixture
def rng():
    """Seeded generator so random instances are reproducible."""
    return np.random.default_rng(20240315)


@pytest.fixture
def random_polynomial(rng):
    """Helper to create random DeformedPolynomial instances."""
    def _create(d, max_degree=8, parity=None):
        degree = int(rng.integers(0, max_degree + 1))
        coeffs = rng.uniform(-1.0, 1.0, degree + 1)
        if parity == "even":
            coeffs[1::2] = 0.0
        elif parity == "odd":
            coeffs[0::2] = 0.0
        return DeformedPolynomial(tuple(coeffs), d)
    return _create
