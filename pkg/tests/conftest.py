import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dirac_spectra import BcClass, BoundaryCondition, classify_bc


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def random_strictly_regular(rng, scale: float = 1.0) -> BoundaryCondition:
    """Draw complex (a, b, c, d) until the strictly-regular class is hit."""
    while True:
        a, b, c, d = (scale * (rng.standard_normal() + 1j * rng.standard_normal())
                      for _ in range(4))
        bc = BoundaryCondition(a, b, c, d)
        if classify_bc(bc).tag is BcClass.STRICTLY_REGULAR:
            return bc


def random_degenerate(rng, scale: float = 1.0) -> BoundaryCondition:
    """Regular bc with vanishing discriminant: pick b != c and a != 0,
    then d = -(b - c)^2 / (4 a); reject if regularity is lost."""
    while True:
        b = scale * (rng.standard_normal() + 1j * rng.standard_normal())
        c = scale * (rng.standard_normal() + 1j * rng.standard_normal())
        a = scale * (rng.standard_normal() + 1j * rng.standard_normal())
        if abs(a) < 0.1 or abs(b - c) < 0.1:
            continue
        d = -(b - c) ** 2 / (4 * a)
        bc = BoundaryCondition(a, b, c, d)
        if classify_bc(bc).tag is BcClass.REGULAR_DEGENERATE:
            return bc


def random_periodic_like(rng) -> BoundaryCondition:
    """b = c nonzero, a = d = 0."""
    while True:
        b = rng.standard_normal() + 1j * rng.standard_normal()
        if abs(b) > 0.1:
            return BoundaryCondition(0.0, b, b, 0.0)
