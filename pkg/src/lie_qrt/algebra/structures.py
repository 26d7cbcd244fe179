"""
Non-Lie preferred structures and their automorphism witnesses.

The n-qubit Pauli group with Clifford conjugation, the ring of real diagonal
matrices with generalized permutations, Hamiltonian commutants, and the local
algebra u(H_A) ⊕ u(H_B) of a bipartite system.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional

import numpy as np

from ..config import get_config
from ..core.linalg import DenseOperator, as_operator, commutator, is_hermitian
from ..core.sampling import RngHandle, ginibre, haar_unitary
from ..errors import DimensionMismatchError, InvalidInputError, SingularMatrixError
from .lie_reps import closure_residual, local_su_rep, span_residual

logger = logging.getLogger(__name__)

MAX_PAULI_QUBITS = 3
STRUCTURE_TOL = 1e-10

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}
# (a, b) -> (phase exponent, product letter) for single-qubit Paulis a·b
_SINGLE_PRODUCTS = {}
for _a, _b in itertools.product("IXYZ", repeat=2):
    if _a == "I":
        _SINGLE_PRODUCTS[(_a, _b)] = (0, _b)
    elif _b == "I":
        _SINGLE_PRODUCTS[(_a, _b)] = (0, _a)
    elif _a == _b:
        _SINGLE_PRODUCTS[(_a, _b)] = (0, "I")
    else:
        _c = ({"X", "Y", "Z"} - {_a, _b}).pop()
        _cyclic = (_a, _b) in (("X", "Y"), ("Y", "Z"), ("Z", "X"))
        _SINGLE_PRODUCTS[(_a, _b)] = (1 if _cyclic else 3, _c)

_PHASES = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


@dataclass(frozen=True)
class PauliElement:
    """i^phase · P_1 ⊗ … ⊗ P_n, stored symbolically."""
    phase: int
    word: str

    def __post_init__(self):
        if not self.word or any(ch not in "IXYZ" for ch in self.word):
            raise InvalidInputError(f"Pauli word must be a non-empty string over IXYZ, got '{self.word}'")
        object.__setattr__(self, "phase", int(self.phase) % 4)

    @property
    def n(self) -> int:
        return len(self.word)

    def __mul__(self, other: "PauliElement") -> "PauliElement":
        if not isinstance(other, PauliElement):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatchError(f"cannot multiply {self.n}- and {other.n}-qubit Paulis")
        phase = self.phase + other.phase
        letters = []
        for a, b in zip(self.word, other.word):
            p, c = _SINGLE_PRODUCTS[(a, b)]
            phase += p
            letters.append(c)
        return PauliElement(phase, "".join(letters))

    def inverse(self) -> "PauliElement":
        # Pauli words square to the identity
        return PauliElement(-self.phase, self.word)

    def to_matrix(self) -> DenseOperator:
        return _PHASES[self.phase] * reduce(np.kron, [_PAULI_MATRICES[ch] for ch in self.word])

    def __str__(self) -> str:
        return f"{('', 'i', '-', '-i')[self.phase]}{self.word}"


@dataclass
class AutomorphismCertificate:
    """Result of a conjugation-image test, with the image of each generator."""
    holds: bool
    images: Dict[str, Optional[PauliElement]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class DiagonalRingElement:
    """Element of the ring D_d(R) of real diagonal matrices."""
    diag: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.diag)
        if not values or not all(np.isfinite(values)):
            raise InvalidInputError("diagonal entries must be finite and non-empty")
        object.__setattr__(self, "diag", values)

    def _check(self, other: "DiagonalRingElement") -> None:
        if len(other.diag) != len(self.diag):
            raise DimensionMismatchError(f"ring elements of size {len(self.diag)} and {len(other.diag)}")

    def __add__(self, other: "DiagonalRingElement") -> "DiagonalRingElement":
        self._check(other)
        return DiagonalRingElement(tuple(a + b for a, b in zip(self.diag, other.diag)))

    def __mul__(self, other: "DiagonalRingElement") -> "DiagonalRingElement":
        self._check(other)
        return DiagonalRingElement(tuple(a * b for a, b in zip(self.diag, other.diag)))

    def to_matrix(self) -> DenseOperator:
        return np.diag(self.diag).astype(np.complex128)


@dataclass
class CommutantSpec:
    """Hamiltonian H whose commutant {M ∈ GL | [M, H] = 0} forms the free operations."""
    hamiltonian: DenseOperator

    def __post_init__(self):
        self.hamiltonian = as_operator(self.hamiltonian, "hamiltonian")
        if not is_hermitian(self.hamiltonian, tol=1e-12):
            raise InvalidInputError("hamiltonian must be Hermitian")

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass
class LocalAlgebraReport:
    """Checks of the local algebra u(H_A) ⊕ u(H_B) and its automorphisms."""
    dA: int
    dB: int
    closure_residual: float
    lu_residual: float
    slocc_residual: float
    swap_residual: Optional[float]

    @property
    def swap_checked(self) -> bool:
        return self.swap_residual is not None

    @property
    def passed(self) -> bool:
        residuals = [self.closure_residual, self.lu_residual, self.slocc_residual]
        if self.swap_checked:
            residuals.append(self.swap_residual)
        return max(residuals) < STRUCTURE_TOL


def _check_qubits(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_PAULI_QUBITS:
        raise InvalidInputError(f"n must be an integer in [1, {MAX_PAULI_QUBITS}], got {n!r}")
    return int(n)


def _invertible(M: DenseOperator, name: str) -> DenseOperator:
    sigma_min = np.linalg.svd(M, compute_uv=False)[-1]
    if sigma_min <= get_config().numerics.qr_singular_tol:
        raise SingularMatrixError(f"{name} must be invertible (sigma_min={sigma_min:.3e})")
    return np.linalg.inv(M)


def pauli_group(n: int) -> List[PauliElement]:
    """
    Enumerate the n-qubit Pauli group, 4·4ⁿ elements.

    Args:
        n: Number of qubits, 1 ≤ n ≤ 3

    Returns:
        Elements ordered by phase, then word
    """
    n = _check_qubits(n)
    return [PauliElement(phase, "".join(word))
            for phase in range(4) for word in itertools.product("IXYZ", repeat=n)]


def pauli_closure_violations(n: int) -> int:
    """
    Exhaustive multiplication-table check of the Pauli group.

    Counts products that leave the group, disagree with matrix multiplication,
    or break associativity, plus elements whose inverse fails.
    """
    group = pauli_group(n)
    members = set(group)
    matrices = {g: g.to_matrix() for g in group}
    identity = PauliElement(0, "I" * n)
    violations = 0
    for a in group:
        if a * a.inverse() != identity:
            violations += 1
        for b in group:
            ab = a * b
            if ab not in members or np.max(np.abs(matrices[a] @ matrices[b] - matrices[ab])) > STRUCTURE_TOL:
                violations += 1
    for a, b, c in itertools.product(group[:4 ** n], repeat=3):
        if (a * b) * c != a * (b * c):
            violations += 1
    return violations


def match_pauli(M: DenseOperator, n: int, tol: float = STRUCTURE_TOL) -> Optional[PauliElement]:
    """
    Identify a matrix as an element of P_n.

    The HS coefficient on each word must be one of {1, i, −1, −i} and the
    remainder must vanish entrywise within tol.

    Returns:
        The matching PauliElement, or None
    """
    M = as_operator(M, "M")
    n = _check_qubits(n)
    if M.shape[0] != 2 ** n:
        raise DimensionMismatchError(f"expected dim {2 ** n}, got {M.shape[0]}")
    for word in itertools.product("IXYZ", repeat=n):
        word = "".join(word)
        P = PauliElement(0, word).to_matrix()
        coefficient = np.vdot(P, M) / M.shape[0]
        if abs(coefficient) < 0.5:
            continue
        for phase, value in enumerate(_PHASES):
            if abs(coefficient - value) < tol and np.max(np.abs(M - value * P)) < tol:
                return PauliElement(phase, word)
        return None
    return None


def pauli_generators(n: int) -> Dict[str, PauliElement]:
    """X_i and Z_i for each qubit, keyed like "X0", "Z1"."""
    n = _check_qubits(n)
    generators = {}
    for q in range(n):
        for letter in "XZ":
            word = ["I"] * n
            word[q] = letter
            generators[f"{letter}{q}"] = PauliElement(0, "".join(word))
    return generators


def conjugation_is_automorphism(U, n: int) -> AutomorphismCertificate:
    """
    Test whether P ↦ U P U⁻¹ maps every Pauli generator into P_n.

    Args:
        U: Invertible 2ⁿ×2ⁿ matrix
        n: Number of qubits, n ≤ 3

    Returns:
        AutomorphismCertificate listing the image of each X_i, Z_i (None if not Pauli)

    Raises:
        SingularMatrixError: If U is singular
    """
    U = as_operator(U, "U")
    n = _check_qubits(n)
    if U.shape[0] != 2 ** n:
        raise DimensionMismatchError(f"U must be {2 ** n}x{2 ** n} for n={n}, got {U.shape}")
    U_inv = _invertible(U, "U")
    images = {name: match_pauli(U @ P.to_matrix() @ U_inv, n)
              for name, P in pauli_generators(n).items()}
    return AutomorphismCertificate(holds=all(img is not None for img in images.values()), images=images)


def clifford_gates(n: int) -> Dict[str, DenseOperator]:
    """Hadamard and phase gates on every qubit, and CNOT on every ordered pair."""
    n = _check_qubits(n)
    hadamard = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    phase = np.diag([1, 1j]).astype(np.complex128)
    gates = {}
    for q in range(n):
        gates[f"H{q}"] = _embed(hadamard, q, n)
        gates[f"S{q}"] = _embed(phase, q, n)
    for control, target in itertools.permutations(range(n), 2):
        gates[f"CNOT{control}{target}"] = _cnot(control, target, n)
    return gates


def t_gate(n: int = 1, qubit: int = 0) -> DenseOperator:
    """T = diag(1, e^{iπ/4}) on one qubit; not a Clifford gate."""
    return _embed(np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128), qubit, _check_qubits(n))


def _embed(gate: DenseOperator, qubit: int, n: int) -> DenseOperator:
    factors = [np.eye(2, dtype=np.complex128)] * n
    factors[qubit] = gate
    return reduce(np.kron, factors)


def _cnot(control: int, target: int, n: int) -> DenseOperator:
    zero = np.diag([1, 0]).astype(np.complex128)
    one = np.diag([0, 1]).astype(np.complex128)
    return (_embed(zero, control, n)
            + _embed(one, control, n) @ _embed(_PAULI_MATRICES["X"], target, n))


def generalized_permutation_preserves_ring(P, d: int) -> bool:
    """
    Test whether D ↦ P D P⁻¹ keeps every diagonal matrix diagonal.

    Checked on the d one-hot diagonals, which span D_d(R).

    Args:
        P: Invertible d×d matrix
        d: Dimension

    Raises:
        SingularMatrixError: If P is singular
    """
    P = as_operator(P, "P")
    if P.shape[0] != d:
        raise DimensionMismatchError(f"P must be {d}x{d}, got {P.shape}")
    P_inv = _invertible(P, "P")
    off_diagonal = ~np.eye(d, dtype=bool)
    for j in range(d):
        one_hot = np.zeros(d)
        one_hot[j] = 1.0
        image = (P * one_hot) @ P_inv
        if np.max(np.abs(image[off_diagonal]), initial=0.0) > STRUCTURE_TOL:
            return False
    return True


def commutant_member(M, spec: CommutantSpec) -> bool:
    """True iff M is invertible and ‖[M, H]‖_F < 1e-10."""
    M = as_operator(M, "M")
    if M.shape != spec.hamiltonian.shape:
        raise DimensionMismatchError(f"M has shape {M.shape}, H has shape {spec.hamiltonian.shape}")
    if np.linalg.norm(commutator(M, spec.hamiltonian)) >= STRUCTURE_TOL:
        return False
    return bool(np.linalg.svd(M, compute_uv=False)[-1] > get_config().numerics.qr_singular_tol)


def swap_operator(d: int) -> DenseOperator:
    """SWAP on C^d ⊗ C^d."""
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for i, j in itertools.product(range(d), repeat=2):
        swap[j * d + i, i * d + j] = 1.0
    return swap


def local_algebra_check(dA: int, dB: int, rng: Optional[RngHandle] = None) -> LocalAlgebraReport:
    """
    Verify the local algebra and its LU, SLOCC and SWAP automorphisms.

    Args:
        dA: Dimension of subsystem A
        dB: Dimension of subsystem B (dA·dB ≤ 16)
        rng: Random handle for the LU and SLOCC witnesses (seed 0 if omitted)

    Returns:
        LocalAlgebraReport; swap_residual is None when dA ≠ dB
    """
    rep = local_su_rep(dA, dB)
    rng = rng or RngHandle(0)
    generators = rep.generators
    basis = generators + [np.eye(rep.dim, dtype=np.complex128)]

    lu = np.kron(haar_unitary(dA, rng), haar_unitary(dB, rng))
    lu_images = [lu @ g @ lu.conj().T for g in generators]

    slocc = np.kron(ginibre(dA, rng), ginibre(dB, rng))
    slocc_inv = np.linalg.inv(slocc)
    slocc_images = [slocc @ g @ slocc_inv for g in generators]

    swap_residual = None
    if dA == dB:
        swap = swap_operator(dA)
        half = len(generators) // 2
        swap_residual = max(float(np.linalg.norm(swap @ g_a @ swap - g_b))
                            for g_a, g_b in zip(generators[:half], generators[half:]))
    else:
        logger.debug(f"SWAP check skipped for unequal factors dA={dA}, dB={dB}")

    return LocalAlgebraReport(
        dA=dA,
        dB=dB,
        closure_residual=closure_residual(basis),
        lu_residual=span_residual(basis, lu_images),
        slocc_residual=span_residual(basis, slocc_images, scalars="complex"),
        swap_residual=swap_residual,
    )
