"""
Complexified free operations (CFOs).

Elements of e^{Cg}, the SL(2,C) Iwasawa factorization M = u·e^{αJ_z}·e^{ηJ₊}
with its spin-s lift, and weak-measurement Kraus channels built from a
Hermitian generator A = ε·Σ_i h_i g_i.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.lie_reps import LieRep, cached_su2_rep, two_s_of
from ..config import get_config
from ..core.linalg import DenseOperator, StateVector, as_operator, as_state, mat_exp, qr_positive
from ..core.sampling import RngHandle, haar_unitary
from ..errors import DimensionMismatchError, InvalidInputError, NormalizationError, SingularMatrixError
from ..shared.utils import validate_positive

logger = logging.getLogger(__name__)

MAX_KRAUS_STEPS = 12
_EULER_EPS = 1e-15

_SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=np.complex128)


@dataclass(frozen=True)
class IwasawaFactors:
    """
    M / √det(M) = u · e^{αJ_z} · e^{ηJ₊} at spin ½ (J_z = σ_z/2, J₊ = σ₊).

    Attributes:
        u: 2×2 special unitary
        alpha: Cartan coefficient
        eta: Nilpotent coefficient
        det_root: Principal square root of det(M) divided out before factoring
    """
    u: DenseOperator
    alpha: float
    eta: complex
    det_root: complex = 1.0 + 0j

    def to_matrix(self, include_det: bool = False) -> DenseOperator:
        """Reassemble u·e^{αJ_z}·e^{ηJ₊}, optionally times √det."""
        cartan = np.diag([np.exp(self.alpha / 2), np.exp(-self.alpha / 2)]).astype(np.complex128)
        nilpotent = np.eye(2, dtype=np.complex128) + self.eta * _SIGMA_PLUS
        product = self.u @ cartan @ nilpotent
        return self.det_root * product if include_det else product

    def reconstruction_error(self, M: DenseOperator) -> float:
        """Frobenius distance between M and the reassembled product."""
        return float(np.linalg.norm(self.to_matrix(include_det=True) - np.asarray(M)))


@dataclass(frozen=True)
class KrausChannel:
    """
    Weak-measurement channel {M_k} labelled by bit-strings k₁…k_N.

    step_generators holds A_t = ε·Σ_i h_{t,i} g_i for t = 1..N (all equal
    unless per-step coefficients were supplied).
    """
    kraus: List[DenseOperator]
    labels: List[str]
    epsilon: float
    steps: int
    h: Optional[np.ndarray]
    step_generators: List[DenseOperator] = field(repr=False)
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    def completeness_residual(self) -> float:
        """‖Σ_k M_k†M_k − I‖_F."""
        total = sum(M.conj().T @ M for M in self.kraus)
        return float(np.linalg.norm(total - np.eye(self.dim)))

    def index_of(self, label: Union[str, Sequence[int]]) -> int:
        key = label if isinstance(label, str) else "".join(str(int(b)) for b in label)
        try:
            return self.labels.index(key)
        except ValueError:
            raise InvalidInputError(f"unknown Kraus label '{key}'")


@dataclass(frozen=True)
class ChannelOutcome:
    """One measurement branch: p_k and the normalized post-measurement state."""
    label: str
    probability: float
    state: Optional[StateVector]

    @property
    def is_null(self) -> bool:
        return self.state is None


def iwasawa_sl2(M) -> IwasawaFactors:
    """
    Iwasawa decomposition of an invertible 2×2 matrix.

    M is first scaled into SL(2,C) by the principal √det; the positive-diagonal
    QR then gives R = [[r, x], [0, 1/r]], so alpha = 2 ln r and eta = x / r.

    Args:
        M: Invertible 2×2 complex matrix

    Returns:
        IwasawaFactors with det(u) = 1

    Raises:
        SingularMatrixError: If M is singular
        DimensionMismatchError: If M is not 2×2
    """
    M = as_operator(M, "M")
    if M.shape != (2, 2):
        raise DimensionMismatchError(f"iwasawa_sl2 needs a 2x2 matrix, got {M.shape}")
    if np.linalg.svd(M, compute_uv=False)[-1] <= get_config().numerics.qr_singular_tol:
        raise SingularMatrixError("iwasawa_sl2 needs an invertible matrix")

    det_root = np.sqrt(complex(np.linalg.det(M)))
    Q, R = qr_positive(M / det_root)
    r = R[0, 0].real
    return IwasawaFactors(
        u=Q,
        alpha=float(2.0 * np.log(r)),
        eta=complex(R[0, 1] / r),
        det_root=complex(det_root),
    )


def euler_zyz(u: DenseOperator) -> Tuple[float, float, float]:
    """
    ZYZ Euler angles with u = e^{iaJ_z}·e^{ibJ_y}·e^{icJ_z} at spin ½.

    From u₀₀ = e^{i(a+c)/2}cos(b/2) and u₀₁ = e^{i(a−c)/2}sin(b/2).

    Args:
        u: 2×2 matrix with determinant 1

    Returns:
        Angles (a, b, c)
    """
    u = as_operator(u, "u")
    b = 2.0 * math.atan2(abs(u[0, 1]), abs(u[0, 0]))
    p = float(np.angle(u[0, 0])) if abs(u[0, 0]) > _EULER_EPS else 0.0
    q = float(np.angle(u[0, 1])) if abs(u[0, 1]) > _EULER_EPS else 0.0
    return p + q, b, p - q


@lru_cache(maxsize=64)
def _jy_eigensystem(two_s: int) -> Tuple[np.ndarray, np.ndarray]:
    rep = cached_su2_rep(two_s)
    return np.linalg.eigh(rep.generators[1])


@lru_cache(maxsize=64)
def _raising_powers(two_s: int) -> Tuple[np.ndarray, ...]:
    # J₊ᵏ/k! for k = 0..2s; J₊ is nilpotent of order 2s+1
    j_plus = cached_su2_rep(two_s).raising_ops[0]
    powers = [np.eye(two_s + 1, dtype=np.complex128)]
    for k in range(1, two_s + 1):
        powers.append(powers[-1] @ j_plus / k)
    return tuple(powers)


def spin_rotation(angles: Tuple[float, float, float], two_s: int) -> DenseOperator:
    """Spin-s image e^{iaJ_z}·e^{ibJ_y}·e^{icJ_z} of ZYZ Euler angles."""
    a, b, c = angles
    weights = two_s / 2 - np.arange(two_s + 1)
    w, V = _jy_eigensystem(two_s)
    middle = (V * np.exp(1j * b * w)) @ V.conj().T
    return np.exp(1j * a * weights)[:, None] * middle * np.exp(1j * c * weights)[None, :]


def lift_to_spin(f: IwasawaFactors, s: float) -> DenseOperator:
    """
    Spin-s image R(u)·e^{αJ_z}·e^{ηJ₊} of Iwasawa factors.

    R(u) uses the ZYZ Euler angles of u. e^{αJ_z} is diagonal and e^{ηJ₊}
    is summed exactly as the finite series Σ_k ηᵏJ₊ᵏ/k!.

    Args:
        f: Iwasawa factors from iwasawa_sl2
        s: Target spin

    Returns:
        (2s+1)×(2s+1) matrix; the determinant gauge is not included
    """
    two_s = two_s_of(s)
    weights = two_s / 2 - np.arange(two_s + 1)
    rotation = spin_rotation(euler_zyz(f.u), two_s)
    nilpotent = np.zeros((two_s + 1, two_s + 1), dtype=np.complex128)
    eta_power = 1.0 + 0j
    for power in _raising_powers(two_s):
        nilpotent += eta_power * power
        eta_power *= f.eta
    return rotation @ (np.exp(f.alpha * weights)[:, None] * nilpotent)


def _combine(rep: LieRep, coefficients: np.ndarray) -> DenseOperator:
    total = np.zeros((rep.dim, rep.dim), dtype=np.complex128)
    for coef, g in zip(coefficients, rep.generators):
        if coef != 0:
            total += coef * g
    return total


def sample_cfo_element(rep: LieRep, rng: RngHandle, scale: float,
                       complexified: bool = True) -> DenseOperator:
    """
    Random element exp(Σ_i (a_i + i·b_i)·i g_i) of e^{Cg}.

    Args:
        rep: Representation supplying the generators
        rng: Random handle; a_i, b_i ~ U(−scale, scale)
        scale: Coefficient range, scale ≥ 0 (0 gives the identity)
        complexified: If False the b_i are zeroed and the result is unitary

    Returns:
        Invertible dim×dim matrix
    """
    validate_positive(scale, "scale", allow_zero=True)
    k = rep.num_generators
    a = rng.uniform(-scale, scale, k)
    b = rng.uniform(-scale, scale, k)
    if not complexified:
        b = np.zeros(k)
    return mat_exp(1j * _combine(rep, a + 1j * b))


def random_coherent_state(rep: LieRep, rng: RngHandle) -> StateVector:
    """
    Random generalized coherent state U|HW⟩ with U ∈ e^{g}.

    For su(2) U is the spin-s lift of a Haar SU(2) element; otherwise
    U = exp(i·Σ a_i g_i) with a_i ~ U(−π, π).
    """
    if rep.kind == "su2" and rep.dim > 1:
        u = haar_unitary(2, rng)
        u = u / np.sqrt(complex(np.linalg.det(u)))
        return spin_rotation(euler_zyz(u), rep.meta["two_s"]) @ rep.hw_state
    a = rng.uniform(-np.pi, np.pi, rep.num_generators)
    return mat_exp(1j * _combine(rep, a)) @ rep.hw_state


def weak_meas_generator_matrix(rep: LieRep, h, epsilon: float) -> DenseOperator:
    """A = ε·Σ_i h_i g_i, validating the coefficient vector length."""
    h = np.asarray(h, dtype=float)
    if h.ndim != 1 or h.shape[0] != rep.num_generators:
        raise DimensionMismatchError(
            f"h must have {rep.num_generators} entries for {rep.name}, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise InvalidInputError("h has non-finite entries")
    return epsilon * _combine(rep, h)


def _bit_labels(steps: int) -> List[Tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=steps))


def weak_meas_kraus(rep: LieRep, h, epsilon: float, N: int,
                    step_h: Optional[Sequence] = None) -> KrausChannel:
    """
    Weak-measurement Kraus family of N binary steps.

    M_{k₁…k_N} = 2^{−N/2}·[cos A − (−1)^{k_N} sin A]⋯[cos A − (−1)^{k₁} sin A]
    with A = ε·Σ_i h_i g_i and k₁ acting first. With step_h, step t uses its
    own A_t = ε·Σ_i step_h[t]_i g_i and the factors no longer commute.

    Args:
        rep: Representation supplying the generators
        h: Coefficients, one per generator; None when step_h is given
        epsilon: Measurement strength
        N: Number of steps, 1 ≤ N ≤ 12
        step_h: Optional list of N per-step coefficient vectors

    Returns:
        KrausChannel with 2^N operators

    Raises:
        InvalidInputError: If N is out of range, epsilon is not finite, or both
            h and step_h are given
        DimensionMismatchError: If a coefficient vector has the wrong length
    """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or not 1 <= N <= MAX_KRAUS_STEPS:
        raise InvalidInputError(f"N must be an integer in [1, {MAX_KRAUS_STEPS}], got {N!r}")
    if not np.isfinite(epsilon):
        raise InvalidInputError(f"epsilon must be finite, got {epsilon}")
    if step_h is not None and h is not None:
        raise InvalidInputError("pass either h or step_h, not both")
    N = int(N)
    bits = _bit_labels(N)
    labels = ["".join(map(str, k)) for k in bits]
    prefactor = 2.0 ** (-N / 2)

    if step_h is None:
        A = weak_meas_generator_matrix(rep, h, epsilon)
        lam, V = np.linalg.eigh(A)
        cos_l, sin_l = np.cos(lam), np.sin(lam)
        kraus = []
        for k in bits:
            diag = np.full(lam.shape, prefactor)
            for bit in k:
                diag *= cos_l - (-1) ** bit * sin_l
            kraus.append((V * diag) @ V.conj().T)
        step_generators = [A] * N
        h_vec = np.asarray(h, dtype=float)
    else:
        if len(step_h) != N:
            raise DimensionMismatchError(f"step_h must have {N} entries, got {len(step_h)}")
        step_generators = [weak_meas_generator_matrix(rep, ht, epsilon) for ht in step_h]
        factors = []
        for A_t in step_generators:
            lam, V = np.linalg.eigh(A_t)
            cos_l, sin_l = np.cos(lam), np.sin(lam)
            factors.append(tuple((V * (cos_l - (-1) ** bit * sin_l)) @ V.conj().T for bit in (0, 1)))
        kraus = []
        for k in bits:
            product = prefactor * np.eye(rep.dim, dtype=np.complex128)
            for t, bit in enumerate(k):
                product = factors[t][bit] @ product
            kraus.append(product)
        h_vec = None

    logger.debug(f"Built {len(kraus)} Kraus operators for {rep.name} (epsilon={epsilon}, N={N})")
    return KrausChannel(
        kraus=kraus,
        labels=labels,
        epsilon=float(epsilon),
        steps=N,
        h=h_vec,
        step_generators=step_generators,
        meta={"rep": rep.name, "per_step": step_h is not None},
    )


def weak_meas_generator(ch: KrausChannel, label: Union[str, Sequence[int]]) -> DenseOperator:
    """
    First-order counterpart E_k = 2^{−N/2}·exp[−Σ_t (−1)^{k_t} A_t] of M_k.

    Each factor cos A − (−1)^k sin A equals exp[−(−1)^k A] up to O(A²).
    """
    index = ch.index_of(label)
    exponent = np.zeros((ch.dim, ch.dim), dtype=np.complex128)
    for bit, A_t in zip(ch.labels[index], ch.step_generators):
        exponent -= (-1) ** int(bit) * A_t
    return 2.0 ** (-ch.steps / 2) * mat_exp(exponent)


def first_order_deviation(rep: LieRep, h, epsilon: float, N: int) -> float:
    """Largest ‖M_k − E_k‖_F over all outcomes of weak_meas_kraus(rep, h, epsilon, N)."""
    ch = weak_meas_kraus(rep, h, epsilon, N)
    return max(float(np.linalg.norm(M - weak_meas_generator(ch, label)))
               for M, label in zip(ch.kraus, ch.labels))


def apply_channel(ch: KrausChannel, psi) -> List[ChannelOutcome]:
    """
    Measurement branches p_k = ⟨ψ|M_k†M_k|ψ⟩ and |φ_k⟩ = M_k|ψ⟩/√p_k.

    Outcomes with p_k below the null-outcome threshold carry state=None.

    Raises:
        NormalizationError: If psi is not normalized
        DimensionMismatchError: If psi does not match the channel dimension
    """
    psi = as_state(psi)
    if psi.shape[0] != ch.dim:
        raise DimensionMismatchError(f"state has dim {psi.shape[0]}, channel has dim {ch.dim}")
    null_tol = get_config().numerics.null_outcome_tol
    outcomes = []
    for label, M in zip(ch.labels, ch.kraus):
        image = M @ psi
        p = float(np.vdot(image, image).real)
        state = image / np.sqrt(p) if p >= null_tol else None
        outcomes.append(ChannelOutcome(label=label, probability=p, state=state))
    return outcomes


def probability_residual(outcomes: Sequence[ChannelOutcome]) -> float:
    """|Σ_k p_k − 1|."""
    return abs(math.fsum(o.probability for o in outcomes) - 1.0)


def normalize_after(M, psi) -> StateVector:
    """
    M|ψ⟩ / ‖M|ψ⟩‖.

    Raises:
        NormalizationError: If M annihilates psi
    """
    M = as_operator(M, "M")
    psi = as_state(psi, normalized=False, name="psi")
    if M.shape[1] != psi.shape[0]:
        raise DimensionMismatchError(f"operator dim {M.shape[1]} does not match state dim {psi.shape[0]}")
    image = M @ psi
    norm = np.linalg.norm(image)
    if norm <= get_config().numerics.null_outcome_tol:
        raise NormalizationError(f"operator annihilates the state (norm={norm:.3e})")
    return image / norm
