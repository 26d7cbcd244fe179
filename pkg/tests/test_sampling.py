"""
Tests for core.sampling: seeded handles and Haar/Ginibre draws.
"""

import numpy as np
import pytest

from lie_qrt.core.linalg import is_unitary
from lie_qrt.core.sampling import RngHandle, ginibre, haar_state, haar_unitary
from lie_qrt.errors import InvalidInputError


def test_same_seed_same_stream():
    a, b = RngHandle(7), RngHandle(7)
    np.testing.assert_array_equal(ginibre(4, a), ginibre(4, b))


def test_children_independent_of_parent_consumption():
    parent = RngHandle(7)
    first = parent.child(3).uniform(0, 1, 5)
    parent.uniform(0, 1, 100)
    np.testing.assert_array_equal(parent.child(3).uniform(0, 1, 5), first)
    assert not np.array_equal(parent.child(4).uniform(0, 1, 5), first)


def test_seed_range():
    with pytest.raises(InvalidInputError):
        RngHandle(-1)
    with pytest.raises(InvalidInputError):
        RngHandle(2 ** 64)
    RngHandle(2 ** 64 - 1)


def test_haar_unitary_is_unitary(rng):
    for d in (1, 2, 5, 16):
        assert is_unitary(haar_unitary(d, rng))


def test_haar_state_is_normalized(rng):
    psi = haar_state(11, rng)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-14)


def test_haar_unitary_first_moment(rng):
    # E|U_00|^2 = 1/d for Haar unitaries
    d = 3
    samples = [abs(haar_unitary(d, rng)[0, 0]) ** 2 for _ in range(4000)]
    assert np.mean(samples) == pytest.approx(1 / d, abs=0.02)


def test_haar_state_first_moment(rng):
    d = 4
    samples = [abs(haar_state(d, rng)[0]) ** 2 for _ in range(4000)]
    assert np.mean(samples) == pytest.approx(1 / d, abs=0.02)


def test_ginibre_entry_moments(rng):
    entries = np.concatenate([ginibre(4, rng).ravel() for _ in range(200)])
    assert abs(np.mean(entries)) < 0.06
    assert np.mean(np.abs(entries) ** 2) == pytest.approx(1.0, abs=0.08)
    # circular: real and imaginary parts independent with equal variance
    assert abs(np.mean(entries ** 2)) < 0.08


def test_one_dimensional_samples_are_phases(rng):
    for _ in range(10):
        U = haar_unitary(1, rng)
        assert U.shape == (1, 1)
        assert abs(U[0, 0]) == pytest.approx(1.0, abs=1e-14)
        psi = haar_state(1, rng)
        assert psi.shape == (1,)
        assert abs(psi[0]) == pytest.approx(1.0, abs=1e-14)

def test_invalid_dimension(rng):
    with pytest.raises(InvalidInputError):
        ginibre(0, rng)
