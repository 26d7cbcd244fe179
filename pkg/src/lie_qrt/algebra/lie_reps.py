"""
Concrete Lie-algebra representations used by the resource theories.
Spin-s irreps of su(2), the so(2n) spinor representation from Majorana
quadratics, and the local algebra su(dA) ⊕ su(dB) of a bipartite system.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache, reduce
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..core.linalg import DenseOperator, StateVector, commutator, gram_schmidt_hs
from ..errors import InvalidInputError
from ..shared.utils import parse_half_integer

logger = logging.getLogger(__name__)

MAX_MODES = 10
MAX_LOCAL_DIM = 16

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass
class LieRep:
    """
    Hermitian basis {g_i} of a Lie algebra representation (the algebra is span_R{i g_i}).

    Attributes:
        name: Human-readable label, e.g. "su2(s=5)"
        kind: One of "su2", "so2n", "local"
        dim: Hilbert-space dimension
        generators: Pairwise HS-orthogonal Hermitian generators
        cartan_indices: Indices of generators spanning a Cartan subalgebra
        hw_state: Highest-weight state
        raising_ops: Raising operators e⁺_j, when the rep carries Cartan-Weyl data
        lowering_ops: Adjoints of the raising operators
        labels: One label per generator
        meta: Conventions and construction parameters
    """
    name: str
    kind: str
    dim: int
    generators: List[DenseOperator]
    cartan_indices: List[int]
    hw_state: StateVector
    raising_ops: Optional[List[DenseOperator]] = None
    lowering_ops: Optional[List[DenseOperator]] = None
    labels: List[str] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        """Dimension of the Cartan subalgebra."""
        return len(self.cartan_indices)

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def spin(self) -> float:
        """Spin s of an su(2) irrep."""
        if self.kind != "su2":
            raise InvalidInputError(f"{self.name} is not an su(2) representation")
        return self.meta["two_s"] / 2

    def expectation_values(self, states: np.ndarray) -> np.ndarray:
        """
        Real expectation values ⟨ψ|g_i|ψ⟩ for a batch of states.

        Args:
            states: Array of shape (dim,) or (dim, batch)

        Returns:
            Array of shape (num_generators,) or (num_generators, batch)
        """
        psi = np.asarray(states, dtype=np.complex128)
        single = psi.ndim == 1
        if single:
            psi = psi[:, None]
        values = np.empty((len(self.generators), psi.shape[1]))
        conj = psi.conj()
        for i, g in enumerate(self.generators):
            values[i] = np.einsum('db,db->b', conj, g @ psi).real
        return values[:, 0] if single else values

    @cached_property
    def normalization(self) -> float:
        """N_g = Σ_i ⟨HW|g_i|HW⟩², so that free pure states have g-purity 1."""
        return float(np.sum(self.expectation_values(self.hw_state) ** 2))

    def highest_weight_residual(self) -> float:
        """
        Largest violation of the highest-weight conditions.

        Returns:
            max over Cartan generators of ‖(h − ⟨h⟩)|HW⟩‖ and over raising
            operators of ‖e⁺|HW⟩‖
        """
        hw = self.hw_state
        residuals = [0.0]
        for idx in self.cartan_indices:
            h_hw = self.generators[idx] @ hw
            weight = np.vdot(hw, h_hw)
            residuals.append(float(np.linalg.norm(h_hw - weight * hw)))
        for e in self.raising_ops or []:
            residuals.append(float(np.linalg.norm(e @ hw)))
        return max(residuals)

    def cartan_commutation_residual(self) -> float:
        """Largest ‖[h_i, h_j]‖_F over pairs of Cartan generators."""
        residual = 0.0
        for a, b in itertools.combinations(self.cartan_indices, 2):
            residual = max(residual, float(np.linalg.norm(
                commutator(self.generators[a], self.generators[b]))))
        return residual


@dataclass
class MajoranaSet:
    """2n Hermitian anticommuting Majorana operators on n Jordan-Wigner qubits."""
    n: int
    ops: List[DenseOperator]

    @property
    def dim(self) -> int:
        return 2 ** self.n

    def anticommutation_residual(self) -> float:
        """Largest ‖c_μc_ν + c_νc_μ − 2δ_μν I‖_F over all pairs."""
        identity = np.eye(self.dim)
        residual = 0.0
        for mu, nu in itertools.combinations_with_replacement(range(len(self.ops)), 2):
            a, b = self.ops[mu], self.ops[nu]
            target = 2.0 * identity if mu == nu else 0.0
            residual = max(residual, float(np.linalg.norm(a @ b + b @ a - target)))
        return residual

    def annihilation_ops(self) -> List[DenseOperator]:
        """Fermionic annihilators a_j = (c_{2j−1} + i c_{2j}) / 2."""
        return [(self.ops[2 * j] + 1j * self.ops[2 * j + 1]) / 2 for j in range(self.n)]


def _kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def ladder_coefficient(s: float, m: float) -> float:
    """c(s,m) = √(s(s+1) − m(m+1)), the matrix element of J₊ on |s,m⟩."""
    return float(np.sqrt(max(s * (s + 1) - m * (m + 1), 0.0)))


def _as_real_columns(ops: Sequence[DenseOperator]) -> np.ndarray:
    return np.stack([np.concatenate([op.real.ravel(), op.imag.ravel()]) for op in ops], axis=1)


def span_residual(basis: Sequence[DenseOperator], targets: Sequence[DenseOperator],
                  scalars: str = "real") -> float:
    """
    Largest least-squares distance from a target operator to span(basis).

    Args:
        basis: Spanning operators
        targets: Operators to project
        scalars: "real" for span_R, "complex" for span_C

    Returns:
        Largest residual Frobenius norm over the targets
    """
    if not targets:
        return 0.0
    if scalars == "real":
        B, T = _as_real_columns(basis), _as_real_columns(targets)
    elif scalars == "complex":
        B = np.stack([op.ravel() for op in basis], axis=1)
        T = np.stack([op.ravel() for op in targets], axis=1)
    else:
        raise InvalidInputError(f"scalars must be 'real' or 'complex', got '{scalars}'")
    coeffs, *_ = np.linalg.lstsq(B, T, rcond=None)
    return float(np.max(np.linalg.norm(B @ coeffs - T, axis=0)))


def closure_residual(generators: Sequence[DenseOperator]) -> float:
    """
    Check that span_R{i g_k} is closed under commutators.

    Every i[g_a, g_b] (Hermitian) is projected onto the real span of the
    generators by least squares.

    Args:
        generators: Hermitian generators

    Returns:
        Largest least-squares residual norm over all pairs
    """
    if len(generators) < 2:
        return 0.0
    targets = [1j * commutator(generators[a], generators[b])
               for a, b in itertools.combinations(range(len(generators)), 2)]
    return span_residual(generators, targets)


def su2_rep(two_s: int) -> LieRep:
    """
    Spin-s irreducible representation of su(2), s = two_s / 2.

    Basis index k = 0..d−1 carries m = s − k, so |HW⟩ = |s,s⟩ = e₀.

    Args:
        two_s: Twice the spin, a nonnegative integer

    Returns:
        LieRep with generators (J_x, J_y, J_z), Cartan J_z and raising J₊

    Raises:
        InvalidInputError: If two_s is negative or not an integer
    """
    if not isinstance(two_s, (int, np.integer)) or two_s < 0:
        raise InvalidInputError(f"two_s must be a nonnegative integer, got {two_s!r}")
    two_s = int(two_s)
    d = two_s + 1
    s = two_s / 2
    m = s - np.arange(d)

    j_plus = np.zeros((d, d), dtype=np.complex128)
    for k in range(1, d):
        j_plus[k - 1, k] = ladder_coefficient(s, m[k])
    j_minus = j_plus.conj().T
    jx = (j_plus + j_minus) / 2
    jy = (j_plus - j_minus) / 2j
    jz = np.diag(m).astype(np.complex128)

    generators = [jx, jy, jz]
    if two_s > 0:
        generators = gram_schmidt_hs(generators)

    hw = np.zeros(d, dtype=np.complex128)
    hw[0] = 1.0
    logger.debug(f"Built su(2) irrep with two_s={two_s}, d={d}")
    return LieRep(
        name=f"su2(s={s:g})",
        kind="su2",
        dim=d,
        generators=generators,
        cartan_indices=[2],
        hw_state=hw,
        raising_ops=[j_plus],
        lowering_ops=[j_minus],
        labels=["Jx", "Jy", "Jz"],
        meta={"two_s": two_s, "spin": s, "basis_order": "k -> m = s - k"},
    )


def weight_state(rep: LieRep, m: float) -> StateVector:
    """
    Weight state |s,m⟩ of an su(2) irrep.

    Args:
        rep: su(2) representation from su2_rep
        m: Weight, |m| ≤ s with s − m an integer

    Returns:
        Canonical basis vector with J_z eigenvalue m

    Raises:
        InvalidInputError: If m is out of range or has the wrong parity
    """
    s = rep.spin
    m_exact = parse_half_integer(m, "m")
    k2 = rep.meta["two_s"] - 2 * m_exact
    if abs(m_exact) > s or k2.denominator != 1 or k2 % 2 != 0:
        raise InvalidInputError(f"m={m} is not a weight of spin s={s:g}")
    psi = np.zeros(rep.dim, dtype=np.complex128)
    psi[int(k2) // 2] = 1.0
    return psi


def majorana_ops(n: int) -> MajoranaSet:
    """
    Jordan-Wigner Majorana operators for n fermionic modes.

    c_{2j−1} = Z^{⊗(j−1)} ⊗ X ⊗ I^{⊗(n−j)},  c_{2j} = Z^{⊗(j−1)} ⊗ Y ⊗ I^{⊗(n−j)}

    Args:
        n: Number of modes, 1 ≤ n ≤ 10

    Returns:
        MajoranaSet with 2n operators of dimension 2ⁿ

    Raises:
        InvalidInputError: If n is out of range
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_MODES:
        raise InvalidInputError(f"n must be an integer in [1, {MAX_MODES}], got {n!r}")
    n = int(n)
    ops = []
    for j in range(n):
        prefix = [_Z] * j
        suffix = [_I2] * (n - j - 1)
        ops.append(_kron_all(prefix + [_X] + suffix))
        ops.append(_kron_all(prefix + [_Y] + suffix))
    return MajoranaSet(n=n, ops=ops)


def so2n_rep(n: int) -> LieRep:
    """
    Spinor representation of so(2n) spanned by Majorana quadratics.

    Generators are g_μν = i c_μ c_ν (μ < ν). The Cartan generators are
    i c_{2j−1} c_{2j}; with the Jordan-Wigner ordering above they equal
    −Z_j, so the Fock vacuum |0…0⟩ has eigenvalue −1 on each of them and is
    annihilated by every a_j.

    Args:
        n: Number of fermionic modes, 1 ≤ n ≤ 10

    Returns:
        LieRep with n(2n−1) generators and rank n

    Raises:
        InvalidInputError: If n is out of range
    """
    majoranas = majorana_ops(n)
    c = majoranas.ops
    generators, labels, cartan = [], [], []
    for mu, nu in itertools.combinations(range(2 * n), 2):
        if nu == mu + 1 and mu % 2 == 0:
            cartan.append(len(generators))
        generators.append(1j * (c[mu] @ c[nu]))
        labels.append(f"c{mu + 1}c{nu + 1}")
    generators = gram_schmidt_hs(generators)

    hw = np.zeros(majoranas.dim, dtype=np.complex128)
    hw[0] = 1.0
    logger.debug(f"Built so(2n) spinor rep with n={n}, {len(generators)} generators")
    return LieRep(
        name=f"so2n(n={n})",
        kind="so2n",
        dim=majoranas.dim,
        generators=generators,
        cartan_indices=cartan,
        hw_state=hw,
        labels=labels,
        meta={
            "modes": n,
            "vacuum_convention": "Jordan-Wigner |0...0>, i*c_{2j-1}c_{2j} eigenvalue -1",
            "annihilators": majoranas.annihilation_ops(),
        },
    )


def gell_mann_basis(d: int) -> List[DenseOperator]:
    """
    Generalized Gell-Mann matrices: d²−1 traceless Hermitian matrices with Tr[λ_aλ_b] = 2δ_ab.

    Ordered as symmetric, antisymmetric, then the d−1 diagonal matrices.

    Args:
        d: Dimension, at least 2

    Returns:
        List of d×d matrices
    """
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise InvalidInputError(f"Gell-Mann basis needs d >= 2, got {d!r}")
    symmetric, antisymmetric, diagonal = [], [], []
    for j, k in itertools.combinations(range(d), 2):
        sym = np.zeros((d, d), dtype=np.complex128)
        sym[j, k] = sym[k, j] = 1.0
        symmetric.append(sym)
        anti = np.zeros((d, d), dtype=np.complex128)
        anti[j, k] = -1j
        anti[k, j] = 1j
        antisymmetric.append(anti)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        diagonal.append(np.diag(np.sqrt(2.0 / (l * (l + 1))) * diag).astype(np.complex128))
    return symmetric + antisymmetric + diagonal


def matrix_units_upper(d: int) -> List[DenseOperator]:
    """Matrix units E_jk = |j⟩⟨k| with j < k (raising operators of su(d))."""
    units = []
    for j, k in itertools.combinations(range(d), 2):
        e = np.zeros((d, d), dtype=np.complex128)
        e[j, k] = 1.0
        units.append(e)
    return units


def local_su_rep(dA: int, dB: int) -> LieRep:
    """
    Local algebra su(dA) ⊕ su(dB) acting on H_A ⊗ H_B.

    Its unitary group is the local unitaries (LU); its complexification gives
    the local invertible operators (SLOCC). The highest-weight state is |0⟩⊗|0⟩.

    Args:
        dA: Dimension of subsystem A (≥ 2)
        dB: Dimension of subsystem B (≥ 2)

    Returns:
        LieRep with (dA²−1)+(dB²−1) generators and rank (dA−1)+(dB−1)

    Raises:
        InvalidInputError: If a dimension is below 2 or dA·dB exceeds 16
    """
    for name, value in (("dA", dA), ("dB", dB)):
        if not isinstance(value, (int, np.integer)) or value < 2:
            raise InvalidInputError(f"{name} must be an integer >= 2, got {value!r}")
    if dA * dB > MAX_LOCAL_DIM:
        raise InvalidInputError(f"dA*dB must be <= {MAX_LOCAL_DIM}, got {dA * dB}")
    dA, dB = int(dA), int(dB)
    id_a, id_b = np.eye(dA), np.eye(dB)

    basis_a, basis_b = gell_mann_basis(dA), gell_mann_basis(dB)
    generators = [np.kron(g, id_b) for g in basis_a] + [np.kron(id_a, g) for g in basis_b]
    labels = [f"A{i}" for i in range(len(basis_a))] + [f"B{i}" for i in range(len(basis_b))]
    cartan = (list(range(len(basis_a) - (dA - 1), len(basis_a)))
              + list(range(len(generators) - (dB - 1), len(generators))))
    raising = ([np.kron(e, id_b) for e in matrix_units_upper(dA)]
               + [np.kron(id_a, e) for e in matrix_units_upper(dB)])

    hw = np.zeros(dA * dB, dtype=np.complex128)
    hw[0] = 1.0
    return LieRep(
        name=f"local(dA={dA},dB={dB})",
        kind="local",
        dim=dA * dB,
        generators=gram_schmidt_hs(generators),
        cartan_indices=cartan,
        hw_state=hw,
        raising_ops=raising,
        lowering_ops=[e.conj().T for e in raising],
        labels=labels,
        meta={"dims": (dA, dB), "basis": "generalized Gell-Mann, Tr[l_a l_b] = 2 delta_ab"},
    )


@lru_cache(maxsize=64)
def cached_su2_rep(two_s: int) -> LieRep:
    """su2_rep memoized on two_s; callers must treat the result as read-only."""
    return su2_rep(two_s)


def two_s_of(s: float) -> int:
    """Validate a spin and return 2s as an integer."""
    exact = parse_half_integer(s, "s")
    if exact < 0:
        raise InvalidInputError(f"spin must be nonnegative, got {s}")
    return int(2 * exact)
