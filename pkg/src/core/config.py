"""
Configuration constants and type definitions for the deformed quantum mechanics toolkit.
"""

import math
import os
from pathlib import Path
from typing import Optional, Union

from src.core.errors import DomainError

# Type definitions
NumericType = Union[int, float]

# Output settings
SCHEMA_VERSION = "1.0"
OUTPUT_DIR_ENV = "DEFORMED_QM_OUTPUT_DIR"

# Quantum well geometry (unit width, hbar = m = 1)
WELL_WIDTH = 1.0
WELL_HALF_WIDTH = WELL_WIDTH / 2

# Energy sweep: the two lowest well states versus dimension
SWEEP_D_MIN = 0.2
SWEEP_D_MAX = 3.0
SWEEP_STEPS = 57
SWEEP_LEVELS = 2

# Well densities of the ground and first excited state
DENSITY_DIMENSIONS = (0.5, 1.0, 2.0, 3.0)
DEFAULT_DENSITY_POINTS = 401
DEFAULT_XI_MIN_ABS = 1e-3


def check_dimension(d) -> float:
    """Return the space dimension as a float, rejecting D <= 0 and non-finite values."""
    value = float(getattr(d, "value", d))
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"Dimension must be finite and positive, got {value!r}")
    return value


def check_index(n: int, name: str = "n") -> int:
    """Validate a non-negative integer index."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {n!r}")
    return n


def get_output_dir() -> Optional[Path]:
    """Get the default output directory from the environment, if configured."""
    configured = os.environ.get(OUTPUT_DIR_ENV)
    return Path(configured) if configured else None


def resolve_output_path(out: Union[str, Path]) -> Path:
    """Resolve a relative output path against the configured output directory."""
    path = Path(out)
    output_dir = get_output_dir()
    if path.is_absolute() or output_dir is None:
        return path
    return output_dir / path
