"""
Dense linear algebra primitives and seeded random sampling.
"""

from .linalg import (
    DenseOperator,
    StateVector,
    as_operator,
    as_state,
    commutator,
    expectation,
    gram_schmidt_hs,
    hs_inner,
    hs_norm,
    is_hermitian,
    is_unitary,
    mat_exp,
    qr_positive,
)
from .sampling import RngHandle, ginibre, haar_state, haar_unitary

__all__ = [
    "DenseOperator",
    "StateVector",
    "RngHandle",
    "as_operator",
    "as_state",
    "commutator",
    "expectation",
    "ginibre",
    "gram_schmidt_hs",
    "haar_state",
    "haar_unitary",
    "hs_inner",
    "hs_norm",
    "is_hermitian",
    "is_unitary",
    "mat_exp",
    "qr_positive",
]
