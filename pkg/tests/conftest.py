"""Shared test fixtures for the holder-spectra test suite."""

import numpy as np
import pytest

from src.holderspectra.families.crossing_lines import build_crossing_lines
from src.holderspectra.families.matrix_path import ShiftFamily
from src.holderspectra.families.rough_coupling import build_rough_coupling


@pytest.fixture
def two_lines():
    """Create the 2 x 2 family diag(t, -t), crossing at t = 0."""
    return build_crossing_lines(slopes=[1.0, -1.0], offsets=[0.0, 0.0])


@pytest.fixture
def three_lines():
    """Create three mixed lines crossing at t = -0.25, 0 and 0.25."""
    return build_crossing_lines(slopes=[1.0, 0.0, -1.0], mixer=3)


@pytest.fixture
def rough_half():
    """Create the rough coupling family with eigenvalues +/- |t|^(1/2)."""
    return build_rough_coupling(alpha=0.5)


@pytest.fixture
def shifted_diagonal():
    """Create diag(1, 2, 3) + t I."""
    return ShiftFamily(base=[1.0, 2.0, 3.0])


@pytest.fixture
def grid_101():
    """Create a uniform grid on [-1, 1] with a node at 0."""
    return np.linspace(-1.0, 1.0, 101)


@pytest.fixture
def grid_81():
    """Create a uniform grid on [-1, 1] with nodes at -0.25, 0 and 0.25."""
    return np.linspace(-1.0, 1.0, 81)
