"""
Dense complex linear algebra shared by every other module.
Matrix exponential, Hilbert-Schmidt geometry and positive-diagonal QR.

Operators and states are plain complex128 numpy arrays; the helpers below
validate shape and finiteness at module boundaries.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
import numpy.typing as npt
import scipy.linalg

from ..config import get_config
from ..errors import (
    DependentSetError,
    DimensionMismatchError,
    InvalidInputError,
    NormalizationError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)

DenseOperator = npt.NDArray[np.complex128]
StateVector = npt.NDArray[np.complex128]

# Relative commutator threshold below which an input counts as normal.
NORMALITY_TOL = 1e-12
# Pairwise overlap threshold below which a generator set is left untouched.
ORTHOGONALITY_TOL = 1e-10


def as_operator(A, name: str = "operator") -> DenseOperator:
    """
    Validate and convert an input to a square complex matrix.

    Args:
        A: Array-like square matrix
        name: Name used in error messages

    Returns:
        complex128 array of shape (d, d)

    Raises:
        InvalidInputError: If the input is not square or has non-finite entries
    """
    arr = np.asarray(A, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidInputError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return arr


def as_state(psi, normalized: bool = True, name: str = "state") -> StateVector:
    """
    Validate and convert an input to a complex state vector.

    Args:
        psi: Array-like vector of amplitudes
        normalized: Require unit Euclidean norm
        name: Name used in error messages

    Returns:
        complex128 array of shape (d,)

    Raises:
        InvalidInputError: If the input is not a finite non-empty vector
        NormalizationError: If normalized is True and the norm differs from 1
    """
    arr = np.asarray(psi, dtype=np.complex128)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise InvalidInputError(f"{name} must be a non-empty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} has non-finite entries")
    if normalized:
        norm = np.linalg.norm(arr)
        if abs(norm - 1.0) > get_config().numerics.normalization_tol:
            raise NormalizationError(f"{name} is not normalized (norm={norm:.15g})")
    return arr


def is_hermitian(A: DenseOperator, tol: float = 1e-12) -> bool:
    """Check A = A† entrywise within tol."""
    A = np.asarray(A)
    return bool(np.allclose(A, A.conj().T, rtol=0.0, atol=tol))


def is_unitary(A: DenseOperator, tol: float = 1e-10) -> bool:
    """Check ‖A†A − I‖_F < tol."""
    A = np.asarray(A)
    return bool(np.linalg.norm(A.conj().T @ A - np.eye(A.shape[0])) < tol)


def commutator(A: DenseOperator, B: DenseOperator) -> DenseOperator:
    """Return AB − BA."""
    return A @ B - B @ A


def expectation(op: DenseOperator, psi: StateVector) -> complex:
    """Return ⟨ψ|op|ψ⟩."""
    return complex(np.vdot(psi, op @ psi))


def hs_inner(A: DenseOperator, B: DenseOperator) -> complex:
    """
    Hilbert-Schmidt inner product Tr[A†B].

    Raises:
        DimensionMismatchError: If the operators have different shapes
    """
    A = as_operator(A, "A")
    B = as_operator(B, "B")
    if A.shape != B.shape:
        raise DimensionMismatchError(f"hs_inner dimension mismatch: {A.shape} vs {B.shape}")
    return complex(np.vdot(A, B))


def hs_norm(A: DenseOperator) -> float:
    """Hilbert-Schmidt (Frobenius) norm √Tr[A†A]."""
    return float(np.linalg.norm(A))


def _exp_hermitian(H: DenseOperator, scale: complex = 1.0) -> DenseOperator:
    # exp(scale * H) for Hermitian H
    w, V = np.linalg.eigh(0.5 * (H + H.conj().T))
    return (V * np.exp(scale * w)) @ V.conj().T


def mat_exp(A: DenseOperator) -> DenseOperator:
    """
    Matrix exponential e^A.

    Normal inputs (‖AA†−A†A‖_F < 1e-12·‖A‖²) go through an eigendecomposition
    (eigh for Hermitian and anti-Hermitian inputs, complex Schur otherwise);
    everything else uses scipy's scaling-and-squaring Padé approximant.

    Args:
        A: Square complex matrix with finite entries

    Returns:
        e^A as a complex128 array

    Raises:
        InvalidInputError: If A has non-finite entries or exceeds the size limit
    """
    A = as_operator(A, "A")
    d = A.shape[0]
    max_dim = get_config().numerics.exp_max_dim
    if d > max_dim:
        raise InvalidInputError(f"mat_exp supports dim <= {max_dim}, got {d}")

    norm_sq = float(np.vdot(A, A).real)
    if norm_sq == 0.0:
        return np.eye(d, dtype=np.complex128)

    A_dag = A.conj().T
    scale = np.sqrt(norm_sq)
    if np.linalg.norm(A - A_dag) <= NORMALITY_TOL * scale:
        return _exp_hermitian(A)
    if np.linalg.norm(A + A_dag) <= NORMALITY_TOL * scale:
        return _exp_hermitian(-1j * A, scale=1j)
    if np.linalg.norm(A @ A_dag - A_dag @ A) < NORMALITY_TOL * norm_sq:
        T, Z = scipy.linalg.schur(A, output='complex')
        return (Z * np.exp(np.diag(T))) @ Z.conj().T

    return scipy.linalg.expm(A)


def gram_schmidt_hs(ops: Sequence[DenseOperator]) -> List[DenseOperator]:
    """
    Orthogonalize Hermitian operators under the real Hilbert-Schmidt product.

    A set that is already pairwise orthogonal is returned unchanged, keeping
    each generator's own norm; otherwise the outputs have unit HS norm.

    Args:
        ops: Operators, linearly independent over the reals

    Returns:
        Orthogonal operators spanning the same real space

    Raises:
        DependentSetError: If a pivot falls below the configured tolerance
        DimensionMismatchError: If the operators have different sizes
    """
    mats = [as_operator(op, f"ops[{i}]") for i, op in enumerate(ops)]
    if not mats:
        return []
    shape = mats[0].shape
    for i, m in enumerate(mats):
        if m.shape != shape:
            raise DimensionMismatchError(f"ops[{i}] has shape {m.shape}, expected {shape}")

    pivot_tol = get_config().numerics.pivot_tol
    basis: List[DenseOperator] = []
    basis_norm_sq: List[float] = []
    already_orthogonal = True

    for i, op in enumerate(mats):
        norm0 = np.linalg.norm(op)
        residual = op.copy()
        for b, b_sq in zip(basis, basis_norm_sq):
            overlap = np.vdot(b, residual).real
            if overlap == 0.0:
                continue
            if abs(overlap) > ORTHOGONALITY_TOL * np.sqrt(b_sq) * norm0:
                already_orthogonal = False
            residual -= (overlap / b_sq) * b
        r_norm = np.linalg.norm(residual)
        if norm0 == 0.0 or r_norm <= pivot_tol * norm0:
            raise DependentSetError(f"ops[{i}] is linearly dependent on the preceding operators")
        basis.append(residual)
        basis_norm_sq.append(r_norm ** 2)

    if already_orthogonal:
        return [m.copy() for m in mats]

    logger.debug(f"Orthonormalized {len(mats)} operators of dim {shape[0]}")
    return [b / np.sqrt(b_sq) for b, b_sq in zip(basis, basis_norm_sq)]


def qr_positive(M: DenseOperator) -> Tuple[DenseOperator, DenseOperator]:
    """
    QR decomposition with a strictly positive real diagonal on R.

    The positive-diagonal convention fixes the gauge, so the factors are unique.

    Args:
        M: Invertible square matrix

    Returns:
        Tuple (Q, R) with Q unitary, R upper triangular, M = QR

    Raises:
        SingularMatrixError: If the smallest singular value is below threshold
    """
    M = as_operator(M, "M")
    tol = get_config().numerics.qr_singular_tol
    sigma_min = np.linalg.svd(M, compute_uv=False)[-1]
    if sigma_min <= tol:
        raise SingularMatrixError(f"qr_positive needs an invertible matrix (sigma_min={sigma_min:.3e})")

    Q, R = scipy.linalg.qr(M)
    diag = np.diag(R)
    phases = diag / np.abs(diag)
    Q = Q * phases
    R = phases.conj()[:, None] * R
    R[np.diag_indices_from(R)] = np.abs(diag)
    return Q, np.triu(R)
