"""
Tests for algebra.structures: Pauli group, diagonal ring, commutants and the
local algebra.
"""

import numpy as np
import pytest
from scipy.linalg import expm

from lie_qrt.algebra.structures import (
    CommutantSpec,
    DiagonalRingElement,
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
from lie_qrt.core.sampling import RngHandle
from lie_qrt.errors import DimensionMismatchError, InvalidInputError, SingularMatrixError

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


class TestPauliGroup:
    @pytest.mark.parametrize("n, size", [(1, 16), (2, 64), (3, 256)])
    def test_group_size(self, n, size):
        assert len(set(pauli_group(n))) == size

    def test_products(self):
        assert PauliElement(0, "X") * PauliElement(0, "Y") == PauliElement(1, "Z")
        assert PauliElement(0, "Y") * PauliElement(0, "X") == PauliElement(3, "Z")
        assert PauliElement(1, "XZ") * PauliElement(0, "XZ") == PauliElement(1, "II")
        assert str(PauliElement(2, "XY")) == "-XY"

    def test_inverse(self):
        g = PauliElement(1, "YZ")
        assert g * g.inverse() == PauliElement(0, "II")

    def test_invalid_word(self):
        with pytest.raises(InvalidInputError):
            PauliElement(0, "XQ")

    def test_mixed_sizes(self):
        with pytest.raises(DimensionMismatchError):
            PauliElement(0, "X") * PauliElement(0, "XX")

    @pytest.mark.parametrize("n", [1, 2])
    def test_closure(self, n):
        assert pauli_closure_violations(n) == 0

    def test_qubit_limit(self):
        with pytest.raises(InvalidInputError):
            pauli_group(4)

    def test_match_pauli(self):
        assert match_pauli(-1j * np.kron(X, Z), 2) == PauliElement(3, "XZ")
        assert match_pauli((X + Z) / np.sqrt(2), 1) is None


class TestCliffordAutomorphisms:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_clifford_gates_preserve_group(self, n):
        for name, gate in clifford_gates(n).items():
            assert conjugation_is_automorphism(gate, n), name

    def test_hadamard_images(self):
        cert = conjugation_is_automorphism(clifford_gates(1)["H0"], 1)
        assert cert.images["X0"] == PauliElement(0, "Z")
        assert cert.images["Z0"] == PauliElement(0, "X")

    def test_cnot_images(self):
        cert = conjugation_is_automorphism(clifford_gates(2)["CNOT01"], 2)
        assert cert.images["X0"] == PauliElement(0, "XX")
        assert cert.images["Z1"] == PauliElement(0, "ZZ")

    def test_t_gate_fails(self):
        cert = conjugation_is_automorphism(t_gate(), 1)
        assert not cert
        assert cert.images["X0"] is None
        assert cert.images["Z0"] == PauliElement(0, "Z")

    def test_small_rotation_fails(self):
        assert not conjugation_is_automorphism(expm(1j * np.pi / 8 * X), 1)

    def test_singular_gate(self):
        with pytest.raises(SingularMatrixError):
            conjugation_is_automorphism(np.diag([1.0, 0.0]), 1)


class TestDiagonalRing:
    def test_ring_operations(self):
        a = DiagonalRingElement((1.0, 2.0, 3.0))
        b = DiagonalRingElement((0.5, -1.0, 2.0))
        assert (a + b).diag == (1.5, 1.0, 5.0)
        assert (a * b).diag == (0.5, -2.0, 6.0)
        np.testing.assert_allclose((a * b).to_matrix(), a.to_matrix() @ b.to_matrix())

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            DiagonalRingElement((1.0,)) + DiagonalRingElement((1.0, 2.0))

    def test_generalized_permutation_preserves(self):
        P = np.array([[0, 2.0, 0], [0, 0, -1.0], [0.5j, 0, 0]])
        assert generalized_permutation_preserves_ring(P, 3)
        assert generalized_permutation_preserves_ring(np.diag([1.0, 3.0, -2.0]), 3)

    def test_hadamard_breaks_ring(self):
        assert not generalized_permutation_preserves_ring(np.array([[1, 1], [1, -1]]) / np.sqrt(2), 2)

    def test_singular_map(self):
        with pytest.raises(SingularMatrixError):
            generalized_permutation_preserves_ring(np.zeros((2, 2)), 2)


class TestCommutant:
    def test_diagonal_hamiltonian(self):
        spec = CommutantSpec(np.diag([1.0, 2.0, 3.0]))
        assert spec.dim == 3
        assert commutant_member(np.diag([5.0, -1.0, 2j]), spec)
        assert not commutant_member(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1.0]]), spec)

    def test_degenerate_hamiltonian_allows_block_mixing(self):
        spec = CommutantSpec(np.diag([1.0, 1.0, 2.0]))
        assert commutant_member(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1.0]]), spec)

    def test_singular_member_rejected(self):
        assert not commutant_member(np.diag([1.0, 0.0]), CommutantSpec(np.diag([1.0, 2.0])))

    def test_non_hermitian_hamiltonian(self):
        with pytest.raises(InvalidInputError):
            CommutantSpec(np.array([[0, 1], [0, 0.0]]))


class TestLocalAlgebra:
    def test_swap_operator(self):
        a, b = np.array([1.0, 2.0]), np.array([3.0, -1.0])
        np.testing.assert_allclose(swap_operator(2) @ np.kron(a, b), np.kron(b, a))

    def test_equal_factors(self):
        report = local_algebra_check(2, 2, RngHandle(7))
        assert report.swap_checked
        assert report.passed

    def test_unequal_factors(self):
        report = local_algebra_check(2, 3)
        assert not report.swap_checked
        assert report.passed
        assert report.slocc_residual < 1e-10
