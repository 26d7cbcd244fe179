"""
Shared fixtures for the lie_qrt test suites.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from lie_qrt.algebra.lie_reps import cached_su2_rep, so2n_rep  # noqa: E402
from lie_qrt.core.sampling import RngHandle  # noqa: E402


@pytest.fixture
def rng():
    """Fresh seeded random handle."""
    return RngHandle(12345)


@pytest.fixture(scope="session")
def spin5():
    """Spin-5 irrep (d = 11)."""
    return cached_su2_rep(10)


@pytest.fixture(scope="session")
def so4():
    """so(4) spinor rep from n = 2 modes."""
    return so2n_rep(2)
