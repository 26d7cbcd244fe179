"""
Exact special functions for the su(2) weight-state formulas.
Pochhammer symbols, terminating Gauss hypergeometric polynomials and the
ζ(s,m,k) coefficients of repeated raising.
"""

from typing import Union

import numpy as np

from ..algebra.lie_reps import ladder_coefficient
from ..errors import InvalidInputError
from ..shared.utils import parse_half_integer

Real = Union[float, np.ndarray]


def _check_order(k, name: str = "k") -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise InvalidInputError(f"{name} must be a nonnegative integer, got {k!r}")
    return int(k)


def pochhammer(a: float, k: int) -> float:
    """
    Rising factorial (a)_k = a(a+1)⋯(a+k−1), with (a)_0 = 1.

    Args:
        a: Base
        k: Nonnegative integer order

    Returns:
        The product as a float
    """
    k = _check_order(k)
    result = 1.0
    for j in range(k):
        result *= a + j
    return result


def hyp2f1_terminating(a: int, b: float, c: float, z: Real) -> Real:
    """
    ₂F₁(a, b; c; z) for a nonpositive integer a, summed as an exact polynomial.

    Σ_{k=0}^{−a} (a)_k (b)_k z^k / ((c)_k k!)

    Args:
        a: Nonpositive integer (terminates the series)
        b: Second numerator parameter
        c: Denominator parameter; must not hit zero before termination
        z: Argument, scalar or array

    Returns:
        Polynomial value with the shape of z

    Raises:
        InvalidInputError: If a is not a nonpositive integer or (c)_k vanishes
    """
    if float(a) != int(a) or a > 0:
        raise InvalidInputError(f"series does not terminate for a={a}")
    degree = -int(a)
    if float(c) == int(c) and c <= 0 and -int(c) < degree:
        raise InvalidInputError(f"(c)_k vanishes before termination for c={c}, a={a}")

    z_arr = np.asarray(z, dtype=float)
    term = np.ones_like(z_arr)
    total = np.ones_like(z_arr)
    for k in range(degree):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1))) * z_arr
        total = total + term
    return float(total) if total.ndim == 0 else total


def _check_weight(s: float, m: float, k: int) -> None:
    s_exact = parse_half_integer(s, "s")
    m_exact = parse_half_integer(m, "m")
    if abs(m_exact) > s_exact or (s_exact - m_exact).denominator != 1:
        raise InvalidInputError(f"m={m} is not a weight of spin s={s}")
    if k < 1 or m_exact + k > s_exact:
        raise InvalidInputError(f"k={k} must satisfy 1 <= k <= s - m = {float(s_exact - m_exact):g}")


def zeta_coeff(s: float, m: float, k: int, route: str = "ladder") -> float:
    """
    ζ(s,m,k), the coefficient of |s,m+k⟩ in J₊ᵏ|s,m⟩.

    The "ladder" route multiplies c(s,m)c(s,m+1)⋯c(s,m+k−1). The
    "pochhammer" route evaluates
    √((s−m)(s+m+1)·(−1)^{k−1}(m−s+1)_{k−1}·(2+m+s)_{k−1}),
    where (−1)^{k−1}(m−s+1)_{k−1} = (s−m−1)(s−m−2)⋯(s−m−k+1) is a falling product.

    Args:
        s: Spin
        m: Starting weight
        k: Number of raising steps, 1 ≤ k ≤ s − m
        route: "ladder" or "pochhammer"

    Returns:
        Nonnegative coefficient

    Raises:
        InvalidInputError: If k is out of range or the route is unknown
    """
    k = _check_order(k)
    _check_weight(s, m, k)
    if route == "ladder":
        result = 1.0
        for j in range(k):
            result *= ladder_coefficient(s, m + j)
        return result
    if route == "pochhammer":
        falling = (-1) ** (k - 1) * pochhammer(m - s + 1, k - 1)
        radicand = (s - m) * (s + m + 1) * falling * pochhammer(2 + m + s, k - 1)
        return float(np.sqrt(max(radicand, 0.0)))
    raise InvalidInputError(f"unknown zeta route '{route}'")


def zeta_table(s: float, m: float) -> np.ndarray:
    """
    Coefficients [ζ(s,m,0), ζ(s,m,1), …, ζ(s,m,s−m)] with ζ(s,m,0) = 1.

    Built by the ladder recursion ζ(k+1) = ζ(k)·c(s, m+k).
    """
    steps = int(round(s - m))
    table = np.ones(steps + 1)
    for k in range(steps):
        table[k + 1] = table[k] * ladder_coefficient(s, m + k)
    return table
