"""
Seeded random sampling for experiments.
All randomness flows through RngHandle; there is no global RNG state.
"""

import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ..config import get_config
from ..errors import InvalidInputError
from ..shared.logging_config import log_experiment_event
from .linalg import DenseOperator, StateVector, qr_positive

logger = logging.getLogger(__name__)

_MAX_SEED = 2 ** 64


@dataclass
class RngHandle:
    """
    Single-owner random stream identified by a seed and a spawn path.

    Child handles are derived from (seed, spawn_key + (index,)) through
    numpy's SeedSequence hashing, so a child's stream does not depend on how
    much of the parent stream has been consumed.
    """
    seed: int
    spawn_key: Tuple[int, ...] = ()
    generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= int(self.seed) < _MAX_SEED:
            raise InvalidInputError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        self.seed = int(self.seed)
        self.spawn_key = tuple(int(k) for k in self.spawn_key)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, index: int) -> "RngHandle":
        """Derive an independent handle for worker or trial `index`."""
        return RngHandle(self.seed, self.spawn_key + (int(index),))

    def uniform(self, low: float, high: float, size=None):
        return self.generator.uniform(low, high, size)

    def complex_normal(self, size) -> np.ndarray:
        """Standard complex Gaussian samples, E|z|² = 1."""
        g = self.generator
        return (g.standard_normal(size) + 1j * g.standard_normal(size)) / np.sqrt(2.0)


def _check_dim(d: int) -> int:
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidInputError(f"dimension must be a positive integer, got {d!r}")
    return int(d)


def ginibre(d: int, rng: RngHandle) -> DenseOperator:
    """
    Sample a d×d matrix with i.i.d. standard complex Gaussian entries.

    Draws whose smallest singular value is below the resampling threshold are
    discarded so that the result is safely invertible.

    Args:
        d: Matrix dimension
        rng: Random handle

    Returns:
        Invertible complex matrix
    """
    d = _check_dim(d)
    tol = get_config().numerics.ginibre_resample_tol
    while True:
        Z = rng.complex_normal((d, d))
        sigma_min = np.linalg.svd(Z, compute_uv=False)[-1]
        if sigma_min >= tol:
            return Z
        log_experiment_event("ginibre_resampled", severity="debug", sigma_min=float(sigma_min))


def haar_unitary(d: int, rng: RngHandle) -> DenseOperator:
    """
    Sample a Haar-random d×d unitary.

    Uses the Q factor of a Ginibre matrix under the positive-diagonal QR gauge.

    Args:
        d: Matrix dimension
        rng: Random handle

    Returns:
        Unitary matrix
    """
    Q, _ = qr_positive(ginibre(d, rng))
    return Q


def haar_state(d: int, rng: RngHandle) -> StateVector:
    """
    Sample a Haar-random pure state (normalized complex Gaussian vector).

    Args:
        d: Hilbert-space dimension
        rng: Random handle

    Returns:
        Unit-norm state vector
    """
    d = _check_dim(d)
    v = rng.complex_normal(d)
    return v / np.linalg.norm(v)
