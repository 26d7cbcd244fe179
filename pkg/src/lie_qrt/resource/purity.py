"""
The g-purity resource quantifier and closed forms for su(2) weight states.

For the CFO e^{αJ_z}e^{ηJ₊} acting on |s,m⟩ the image
|φ⟩ = Σ_k η^k/k!·ζ(s,m,k)·e^{α(m+k)}|s,m+k⟩ is tracked three ways:
the explicit series, terminating ₂F₁ polynomials in z = −e^{2α}|η|²,
and a direct matrix computation.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..algebra.lie_reps import LieRep, cached_su2_rep, two_s_of, weight_state
from ..config import get_config
from ..core.linalg import as_operator, as_state, is_hermitian, mat_exp
from ..errors import DimensionMismatchError, InvalidInputError, NormalizationError
from ..shared.utils import parse_half_integer
from .hypergeometric import hyp2f1_terminating, zeta_table

logger = logging.getLogger(__name__)

PURITY_SLACK = 1e-9
MIXED_TRACE_TOL = 1e-8
MIXED_PSD_TOL = 1e-10


class PurityValue(float):
    """A g-purity value, a float checked to lie in [0, 1] up to rounding slack."""

    def __new__(cls, value: float):
        value = float(value)
        if not np.isfinite(value) or value < -PURITY_SLACK or value > 1.0 + PURITY_SLACK:
            raise InvalidInputError(f"purity {value!r} outside [0, 1]")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class ClosedFormInputs:
    """Parameters (s, m, α, |η|) of the CFO image of a weight state."""
    s: float
    m: float
    alpha: float
    eta_abs: float

    def __post_init__(self):
        s_exact = parse_half_integer(self.s, "s")
        m_exact = parse_half_integer(self.m, "m")
        if abs(m_exact) > s_exact or (s_exact - m_exact).denominator != 1:
            raise InvalidInputError(f"m={self.m} is not a weight of spin s={self.s}")
        if not np.isfinite(self.alpha):
            raise InvalidInputError(f"alpha must be finite, got {self.alpha}")
        if not np.isfinite(self.eta_abs) or self.eta_abs < 0:
            raise InvalidInputError(f"eta_abs must be a nonnegative real, got {self.eta_abs}")

    @property
    def x(self) -> float:
        """e^{2α}|η|² (= −z)."""
        return float(np.exp(2.0 * self.alpha) * self.eta_abs ** 2)

    @property
    def z(self) -> float:
        return -self.x

    @property
    def steps(self) -> int:
        return int(round(self.s - self.m))


@dataclass(frozen=True)
class HypergeometricSignReport:
    """Which exponent sign in the ₂F₁ argument reproduces the normalization series."""
    series: float
    plus_exponent: float
    minus_exponent: float
    matches_plus: bool
    matches_minus: bool

    @property
    def verdict(self) -> str:
        if self.matches_plus and self.matches_minus:
            return "both"
        if self.matches_plus:
            return "plus"
        if self.matches_minus:
            return "minus"
        return "neither"


def _generator_check(rep: LieRep) -> float:
    if not rep.generators:
        raise InvalidInputError(f"{rep.name} has no generators")
    norm = rep.normalization
    if norm <= 0.0:
        raise InvalidInputError(f"{rep.name} has vanishing purity normalization")
    return norm


def g_purity(state, rep: LieRep) -> PurityValue:
    """
    g-purity P(ψ) = (1/N_g)·Σ_i ⟨ψ|g_i|ψ⟩² of a pure state.

    N_g = Σ_i ⟨HW|g_i|HW⟩², so every generalized coherent state has purity 1.

    Args:
        state: Normalized state vector of dimension rep.dim
        rep: Representation with pairwise HS-orthogonal generators

    Returns:
        PurityValue in [0, 1]

    Raises:
        NormalizationError: If the state is not normalized
        DimensionMismatchError: If the state dimension differs from rep.dim
    """
    psi = as_state(state)
    if psi.shape[0] != rep.dim:
        raise DimensionMismatchError(f"state has dim {psi.shape[0]}, {rep.name} has dim {rep.dim}")
    norm = _generator_check(rep)
    return PurityValue(np.sum(rep.expectation_values(psi) ** 2) / norm)


def g_purity_batch(states: np.ndarray, rep: LieRep) -> np.ndarray:
    """
    g-purity of each column of a (dim, batch) array of normalized states.

    No range validation is applied; callers check the result.
    """
    psi = np.asarray(states, dtype=np.complex128)
    if psi.ndim != 2 or psi.shape[0] != rep.dim:
        raise DimensionMismatchError(f"states must have shape ({rep.dim}, batch), got {psi.shape}")
    norm = _generator_check(rep)
    return np.sum(rep.expectation_values(psi) ** 2, axis=0) / norm


def g_purity_mixed(rho, rep: LieRep) -> PurityValue:
    """
    g-purity (1/N_g)·Σ_i Tr[ρ g_i]² of a density matrix.

    Raises:
        NormalizationError: If the trace differs from 1 beyond 1e-8
        InvalidInputError: If rho is not Hermitian positive semidefinite
    """
    rho = as_operator(rho, "rho")
    if rho.shape[0] != rep.dim:
        raise DimensionMismatchError(f"rho has dim {rho.shape[0]}, {rep.name} has dim {rep.dim}")
    if not is_hermitian(rho, tol=MIXED_PSD_TOL):
        raise InvalidInputError("rho must be Hermitian")
    trace = np.trace(rho).real
    if abs(trace - 1.0) > MIXED_TRACE_TOL:
        raise NormalizationError(f"rho must have unit trace, got {trace:.12g}")
    if np.linalg.eigvalsh(rho)[0] < -MIXED_PSD_TOL:
        raise InvalidInputError("rho must be positive semidefinite")
    norm = _generator_check(rep)
    values = np.array([np.vdot(g, rho).real for g in rep.generators])
    return PurityValue(np.sum(values ** 2) / norm)


def marginal_purity_oracle(state, dA: int, dB: int) -> PurityValue:
    """
    Local-algebra purity from the marginal purities of a bipartite pure state.

    P = [(Tr ρ_A² − 1/dA) + (Tr ρ_B² − 1/dB)] / [(1 − 1/dA) + (1 − 1/dB)]

    Args:
        state: Normalized state on C^dA ⊗ C^dB
        dA: Dimension of subsystem A
        dB: Dimension of subsystem B

    Returns:
        PurityValue equal to g_purity under local_su_rep(dA, dB)
    """
    psi = as_state(state)
    if psi.shape[0] != dA * dB:
        raise DimensionMismatchError(f"state has dim {psi.shape[0]}, expected {dA * dB}")
    schmidt = np.linalg.svd(psi.reshape(dA, dB), compute_uv=False)
    marginal = float(np.sum(schmidt ** 4))
    numerator = (marginal - 1.0 / dA) + (marginal - 1.0 / dB)
    denominator = (1.0 - 1.0 / dA) + (1.0 - 1.0 / dB)
    return PurityValue(numerator / denominator)


def _image_amplitudes(inputs: ClosedFormInputs, eta: complex) -> np.ndarray:
    # a_k = η^k/k!·ζ(s,m,k)·e^{α(m+k)}, k = 0..s−m
    k = np.arange(inputs.steps + 1)
    factorials = np.cumprod(np.concatenate([[1.0], np.arange(1, inputs.steps + 1)]))
    powers = np.cumprod(np.concatenate([[1.0 + 0j], np.full(inputs.steps, complex(eta))]))
    return powers / factorials * zeta_table(inputs.s, inputs.m) * np.exp(inputs.alpha * (inputs.m + k))


def _series_weights(inputs: ClosedFormInputs) -> np.ndarray:
    # |a_k|² = |η|^{2k}/(k!)²·e^{2α(m+k)}·ζ(s,m,k)²
    return np.abs(_image_amplitudes(inputs, inputs.eta_abs)) ** 2


def phi_norm(s: float, m: float, alpha: float, eta_abs: float) -> float:
    """
    ⟨φ|φ⟩ = e^{2αm}·[1 + Σ_{k=1}^{s−m} |η|^{2k}/(k!)²·e^{2αk}·ζ(s,m,k)²].

    Args:
        s: Spin
        m: Weight, |m| ≤ s
        alpha: Cartan coefficient
        eta_abs: |η|

    Returns:
        Strictly positive squared norm of the unnormalized image
    """
    return float(np.sum(_series_weights(ClosedFormInputs(s, m, alpha, eta_abs))))


def jz_expect(s: float, m: float, alpha: float, eta_abs: float) -> float:
    """⟨φ|J_z|φ⟩ = Σ_k (m+k)|a_k|², equal to ½ ∂_α ⟨φ|φ⟩."""
    inputs = ClosedFormInputs(s, m, alpha, eta_abs)
    weights = _series_weights(inputs)
    return float(np.sum((m + np.arange(inputs.steps + 1)) * weights))


def jplus_expect(s: float, m: float, alpha: float, eta: complex) -> complex:
    """
    ⟨φ|J₊|φ⟩ as the series Σ_k conj(a_{k+1})·a_k·c(s,m+k).

    Using ζ(s,m,k+1) = ζ(s,m,k)·c(s,m+k), the k = 0 term is
    e^{α(2m+1)}·c(s,m)·η*·ζ(s,m,1). ⟨φ|J₋|φ⟩ is the complex conjugate.

    Args:
        s: Spin
        m: Weight, |m| ≤ s
        alpha: Cartan coefficient
        eta: Complex nilpotent coefficient

    Returns:
        Complex expectation value on the unnormalized image
    """
    eta = complex(eta)
    inputs = ClosedFormInputs(s, m, alpha, abs(eta))
    amps = _image_amplitudes(inputs, eta)
    if inputs.steps == 0:
        return 0j
    zeta = zeta_table(s, m)
    ladder = zeta[1:] / zeta[:-1]
    return complex(np.sum(amps[1:].conj() * amps[:-1] * ladder))


def _hypergeometric_pair(inputs: ClosedFormInputs, z: float) -> Tuple[float, float]:
    # F = ₂F₁(m−s, m+s+1; 1; z) and F₂ = ₂F₁(m−s+1, m+s+2; 2; z)
    s, m = inputs.s, inputs.m
    F = hyp2f1_terminating(round(m - s), m + s + 1, 1, z)
    if inputs.steps == 0:
        return F, 0.0
    F2 = hyp2f1_terminating(round(m - s + 1), m + s + 2, 2, z)
    return F, F2


def jplus_expect_hypergeometric(s: float, m: float, alpha: float, eta: complex) -> complex:
    """
    ⟨φ|J₊|φ⟩ = η*·e^{α(2m+1)}·(s−m)(s+m+1)·₂F₁(m−s+1, m+s+2; 2; z).

    Agrees with jplus_expect term by term.
    """
    eta = complex(eta)
    inputs = ClosedFormInputs(s, m, alpha, abs(eta))
    if inputs.steps == 0:
        return 0j
    _, F2 = _hypergeometric_pair(inputs, inputs.z)
    return complex(eta.conjugate() * np.exp(alpha * (2 * m + 1)) * (s - m) * (s + m + 1) * F2)


def hypergeometric_log_derivative(s: float, m: float, z):
    """
    z·d/dz log ₂F₁(m−s, m+s+1; 1; z), nonnegative for z ≤ 0.

    Args:
        s: Spin
        m: Weight
        z: Argument, scalar or array

    Returns:
        Log-derivative with the shape of z
    """
    ClosedFormInputs(s, m, 0.0, 0.0)
    if round(s - m) == 0:
        return np.zeros_like(np.asarray(z, dtype=float))
    F = hyp2f1_terminating(round(m - s), m + s + 1, 1, z)
    F2 = hyp2f1_terminating(round(m - s + 1), m + s + 2, 2, z)
    return z * (m - s) * (m + s + 1) * F2 / F


def closed_form_g(s: float, m: float, z: float) -> float:
    """
    G(m,s,z) = (s−m)(s+m+1)·₂F₁(m−s+1, m+s+2; 2; z) / (s·₂F₁(m−s, m+s+1; 1; z)).

    With this G the closed form reads P = (m/s − zG)² − zG².
    """
    inputs = ClosedFormInputs(s, m, 0.0, 0.0)
    if inputs.steps == 0:
        return 0.0
    F, F2 = _hypergeometric_pair(inputs, z)
    return float((s - m) * (s + m + 1) * F2 / (s * F))


def weight_purity_closed(s: float, m: float, alpha: float, eta_abs: float) -> PurityValue:
    """
    Closed-form g-purity of e^{αJ_z}e^{ηJ₊}|s,m⟩ (normalized).

    P = (m/s + (1/s)·z·d/dz log F)² − z·G² with F = ₂F₁(m−s, m+s+1; 1; z),
    z = −e^{2α}|η|². The ₂F₁ polynomials terminate for every |m| ≤ s; m = s
    is the fixed point and returns 1.

    Args:
        s: Spin, s > 0
        m: Weight, |m| ≤ s
        alpha: Cartan coefficient
        eta_abs: |η|

    Returns:
        PurityValue, at least m²/s² up to rounding

    Raises:
        InvalidInputError: If s = 0 or the parameters are out of range
    """
    inputs = ClosedFormInputs(s, m, alpha, eta_abs)
    if s <= 0:
        raise InvalidInputError("closed-form purity needs s > 0")
    if inputs.steps == 0:
        return PurityValue(1.0)
    z = inputs.z
    G = closed_form_g(s, m, z)
    return PurityValue((m / s - z * G) ** 2 - z * G ** 2)


def weight_purity_series(s: float, m: float, alpha: float, eta_abs: float) -> PurityValue:
    """g-purity from the explicit series: (⟨J_z⟩² + |⟨J₊⟩|²) / (s²⟨φ|φ⟩²)."""
    if s <= 0:
        raise InvalidInputError("series purity needs s > 0")
    norm = phi_norm(s, m, alpha, eta_abs)
    jz = jz_expect(s, m, alpha, eta_abs)
    jp = jplus_expect(s, m, alpha, eta_abs)
    return PurityValue((jz ** 2 + abs(jp) ** 2) / (s * s * norm * norm))


def weight_purity_direct(s: float, m: float, alpha: float, eta: complex,
                         ladder: str = "raising") -> PurityValue:
    """
    Direct-matrix g-purity of e^{αJ_z}e^{ηJ}|s,m⟩ with J = J₊ (or J₋).

    The image is assembled with mat_exp on the spin-s matrices, normalized
    and passed to g_purity. With ladder="lowering" the mirror relation
    P(s, m, α, η; J₋) = P(s, −m, −α, η; J₊) holds.

    Args:
        s: Spin, s > 0
        m: Weight, |m| ≤ s
        alpha: Cartan coefficient
        eta: Nilpotent coefficient (complex)
        ladder: "raising" or "lowering"

    Returns:
        PurityValue
    """
    if ladder not in ("raising", "lowering"):
        raise InvalidInputError(f"ladder must be 'raising' or 'lowering', got '{ladder}'")
    rep = cached_su2_rep(two_s_of(s))
    if rep.dim == 1:
        raise InvalidInputError("direct purity needs s > 0")
    jz = rep.generators[rep.cartan_indices[0]]
    nilpotent = rep.raising_ops[0] if ladder == "raising" else rep.lowering_ops[0]
    image = mat_exp(alpha * jz) @ (mat_exp(complex(eta) * nilpotent) @ weight_state(rep, m))
    norm = np.linalg.norm(image)
    if norm <= get_config().numerics.null_outcome_tol:
        raise NormalizationError("CFO image vanished")
    return g_purity(image / norm, rep)


def norm_hypergeometric_sign_check(s: float, m: float, alpha: float, eta_abs: float,
                                   rtol: float = 1e-10) -> HypergeometricSignReport:
    """
    Compare e^{2αm}·₂F₁(m−s, s+m+1; 1; −|η|²e^{±2α}) against the series ⟨φ|φ⟩.

    Returns:
        HypergeometricSignReport; the "+" exponent reproduces the series
    """
    inputs = ClosedFormInputs(s, m, alpha, eta_abs)
    series = phi_norm(s, m, alpha, eta_abs)
    prefactor = np.exp(2 * alpha * m)
    a, b = round(m - s), m + s + 1
    plus = float(prefactor * hyp2f1_terminating(a, b, 1, -eta_abs ** 2 * np.exp(2 * alpha)))
    minus = float(prefactor * hyp2f1_terminating(a, b, 1, -eta_abs ** 2 * np.exp(-2 * alpha)))
    report = HypergeometricSignReport(
        series=series,
        plus_exponent=plus,
        minus_exponent=minus,
        matches_plus=bool(np.isclose(plus, series, rtol=rtol, atol=0.0)),
        matches_minus=bool(np.isclose(minus, series, rtol=rtol, atol=0.0)),
    )
    logger.debug(f"Normalization sign check s={s}, m={m}: {report.verdict}")
    return report
