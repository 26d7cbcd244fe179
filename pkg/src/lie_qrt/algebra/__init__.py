"""
Lie-algebra representations and the non-Lie algebraic structures of the catalogue.
"""

from .lie_reps import (
    LieRep,
    MajoranaSet,
    cached_su2_rep,
    closure_residual,
    gell_mann_basis,
    ladder_coefficient,
    local_su_rep,
    majorana_ops,
    so2n_rep,
    span_residual,
    su2_rep,
    two_s_of,
    weight_state,
)
from .structures import (
    AutomorphismCertificate,
    CommutantSpec,
    DiagonalRingElement,
    LocalAlgebraReport,
    PauliElement,
    clifford_gates,
    commutant_member,
    conjugation_is_automorphism,
    generalized_permutation_preserves_ring,
    local_algebra_check,
    match_pauli,
    pauli_closure_violations,
    pauli_group,
    swap_operator,
    t_gate,
)
