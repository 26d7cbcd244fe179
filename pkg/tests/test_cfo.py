"""
Tests for resource.cfo: Iwasawa factorization, spin lift, CFO sampling and
weak-measurement channels.
"""

import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import cosm, sinm

from lie_qrt.algebra.lie_reps import cached_su2_rep, so2n_rep
from lie_qrt.core.linalg import is_unitary
from lie_qrt.core.sampling import ginibre, haar_state, haar_unitary
from lie_qrt.errors import (
    DimensionMismatchError,
    InvalidInputError,
    NormalizationError,
    SingularMatrixError,
)
from lie_qrt.resource.cfo import (
    apply_channel,
    euler_zyz,
    first_order_deviation,
    iwasawa_sl2,
    lift_to_spin,
    normalize_after,
    probability_residual,
    random_coherent_state,
    sample_cfo_element,
    spin_rotation,
    weak_meas_generator,
    weak_meas_kraus,
)
from lie_qrt.resource.purity import g_purity

H_SU2 = np.array([0.3, -0.5, 0.8])


class TestIwasawa:
    def test_identity(self):
        f = iwasawa_sl2(np.eye(2))
        assert f.alpha == pytest.approx(0.0, abs=1e-14)
        assert f.eta == pytest.approx(0.0, abs=1e-14)
        assert_allclose(f.u, np.eye(2), atol=1e-14)

    def test_diagonal(self):
        f = iwasawa_sl2(np.diag([2.0, 0.5]))
        assert f.alpha == pytest.approx(2 * np.log(2))
        assert f.eta == pytest.approx(0.0, abs=1e-14)

    def test_round_trip(self, rng):
        for _ in range(50):
            M = ginibre(2, rng)
            f = iwasawa_sl2(M)
            assert f.reconstruction_error(M) < 1e-10
            assert np.linalg.det(f.u) == pytest.approx(1.0, abs=1e-12)
            assert is_unitary(f.u)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            iwasawa_sl2(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_wrong_shape(self):
        with pytest.raises(DimensionMismatchError):
            iwasawa_sl2(np.eye(3))


class TestSpinLift:
    def test_euler_angles_reconstruct(self, rng):
        for _ in range(10):
            u = haar_unitary(2, rng)
            u = u / np.sqrt(complex(np.linalg.det(u)))
            assert_allclose(spin_rotation(euler_zyz(u), 1), u, atol=1e-12)

    def test_spin_half_lift_is_normalized_matrix(self, rng):
        M = ginibre(2, rng)
        f = iwasawa_sl2(M)
        assert_allclose(lift_to_spin(f, 0.5), M / f.det_root, atol=1e-10)

    def test_identity_lift(self):
        assert_allclose(lift_to_spin(iwasawa_sl2(np.eye(2)), 5), np.eye(11), atol=1e-12)

    def test_diagonal_lift(self):
        lifted = lift_to_spin(iwasawa_sl2(np.diag([2.0, 0.5])), 1)
        assert_allclose(lifted, np.diag([4.0, 1.0, 0.25]), atol=1e-12)

    def test_lift_is_multiplicative_for_integer_spin(self, rng):
        A, B = ginibre(2, rng), ginibre(2, rng)
        A = A / np.sqrt(complex(np.linalg.det(A)))
        B = B / np.sqrt(complex(np.linalg.det(B)))
        product = lift_to_spin(iwasawa_sl2(A @ B), 2)
        expected = lift_to_spin(iwasawa_sl2(A), 2) @ lift_to_spin(iwasawa_sl2(B), 2)
        assert_allclose(product, expected, rtol=1e-8, atol=1e-8)


class TestSampling:
    def test_zero_scale_is_identity(self, spin5, rng):
        assert_allclose(sample_cfo_element(spin5, rng, 0.0), np.eye(11), atol=1e-14)

    def test_unitary_slice(self, so4, rng):
        assert is_unitary(sample_cfo_element(so4, rng, 1.0, complexified=False))

    def test_complexified_sample_is_invertible(self, spin5, rng):
        M = sample_cfo_element(spin5, rng, 0.5)
        assert np.linalg.svd(M, compute_uv=False)[-1] > 1e-8

    def test_negative_scale(self, spin5, rng):
        with pytest.raises(InvalidInputError):
            sample_cfo_element(spin5, rng, -1.0)

    @pytest.mark.parametrize("rep", [cached_su2_rep(4), cached_su2_rep(10), so2n_rep(2), so2n_rep(3)])
    def test_cfo_keeps_coherent_states_pure(self, rep, rng):
        for _ in range(5):
            psi = random_coherent_state(rep, rng)
            assert g_purity(psi, rep) == pytest.approx(1.0, abs=1e-10)
            image = normalize_after(sample_cfo_element(rep, rng, 0.5), psi)
            assert g_purity(image, rep) == pytest.approx(1.0, abs=1e-8)

    def test_highest_weight_is_fixed_up_to_scale(self, spin5):
        f = iwasawa_sl2(np.array([[1.5, 0.7 - 0.2j], [0.0, 1 / 1.5]]))
        image = lift_to_spin(f, 5) @ spin5.hw_state
        image = image / np.linalg.norm(image)
        assert abs(np.vdot(spin5.hw_state, image)) == pytest.approx(1.0, abs=1e-12)


class TestWeakMeasurement:
    def test_single_step_form(self):
        rep = cached_su2_rep(2)
        eps = 0.1
        ch = weak_meas_kraus(rep, H_SU2, eps, 1)
        A = eps * sum(c * g for c, g in zip(H_SU2, rep.generators))
        assert ch.labels == ["0", "1"]
        assert_allclose(ch.kraus[0], (cosm(A) - sinm(A)) / np.sqrt(2), atol=1e-12)
        assert_allclose(ch.kraus[1], (cosm(A) + sinm(A)) / np.sqrt(2), atol=1e-12)

    def test_zero_strength(self, spin5):
        ch = weak_meas_kraus(spin5, H_SU2, 0.0, 3)
        assert len(ch.kraus) == 8
        for M in ch.kraus:
            assert_allclose(M, np.eye(11) / np.sqrt(8), atol=1e-14)
        assert_allclose(weak_meas_generator(ch, "010"), np.eye(11) / np.sqrt(8), atol=1e-14)

    def test_completeness(self, spin5):
        ch = weak_meas_kraus(spin5, H_SU2, 0.02, 5)
        assert len(ch.kraus) == 32
        assert ch.completeness_residual() < 1e-10

    def test_per_step_completeness(self, so4, rng):
        step_h = [rng.uniform(-1, 1, so4.num_generators) for _ in range(4)]
        ch = weak_meas_kraus(so4, None, 0.3, 4, step_h=step_h)
        assert ch.meta["per_step"] is True
        assert ch.completeness_residual() < 1e-10

    def test_h_and_step_h_are_exclusive(self, so4):
        with pytest.raises(InvalidInputError):
            weak_meas_kraus(so4, np.ones(so4.num_generators), 0.3, 1,
                            step_h=[np.ones(so4.num_generators)])

    @pytest.mark.parametrize("epsilon", [0.0, 0.02, 0.2, 1.5])
    @pytest.mark.parametrize("steps", [1, 4, 8])
    def test_completeness_sweep(self, so4, rng, epsilon, steps):
        h = rng.uniform(-1, 1, so4.num_generators)
        assert weak_meas_kraus(so4, h, epsilon, steps).completeness_residual() < 1e-10

    def test_completeness_under_permuted_coefficients(self, spin5, so4, rng):
        for perm in itertools.permutations(range(3)):
            ch = weak_meas_kraus(spin5, H_SU2[list(perm)], 0.2, 5)
            assert ch.completeness_residual() < 1e-10
        h = rng.uniform(-1, 1, so4.num_generators)
        for _ in range(5):
            permuted = rng.generator.permutation(h)
            ch = weak_meas_kraus(so4, permuted, 0.5, 4)
            assert ch.completeness_residual() < 1e-10
            assert probability_residual(apply_channel(ch, haar_state(so4.dim, rng))) < 1e-10

    @pytest.mark.parametrize("rep", [cached_su2_rep(10), so2n_rep(3)])
    def test_cartan_channel_fixes_highest_weight(self, rep, rng):
        h = np.zeros(rep.num_generators)
        h[list(rep.cartan_indices)] = rng.uniform(-1, 1, len(rep.cartan_indices))
        outcomes = apply_channel(weak_meas_kraus(rep, h, 0.3, 3), rep.hw_state)
        assert probability_residual(outcomes) < 1e-12
        for outcome in outcomes:
            if not outcome.is_null:
                assert abs(np.vdot(rep.hw_state, outcome.state)) == pytest.approx(1.0, abs=1e-10)

    def test_per_step_length_mismatch(self, so4):
        with pytest.raises(DimensionMismatchError):
            weak_meas_kraus(so4, None, 0.3, 2, step_h=[np.zeros(so4.num_generators)])

    def test_step_count_range(self, spin5):
        with pytest.raises(InvalidInputError):
            weak_meas_kraus(spin5, H_SU2, 0.1, 13)
        with pytest.raises(InvalidInputError):
            weak_meas_kraus(spin5, H_SU2, 0.1, 0)

    def test_wrong_coefficient_length(self, spin5):
        with pytest.raises(DimensionMismatchError):
            weak_meas_kraus(spin5, [1.0, 2.0], 0.1, 2)

    def test_apply_channel_probabilities(self, spin5, rng):
        ch = weak_meas_kraus(spin5, H_SU2, 0.2, 4)
        outcomes = apply_channel(ch, haar_state(11, rng))
        assert len(outcomes) == 16
        assert probability_residual(outcomes) < 1e-10
        for outcome in outcomes:
            assert np.linalg.norm(outcome.state) == pytest.approx(1.0)

    def test_null_outcome(self):
        rep = cached_su2_rep(1)
        ch = weak_meas_kraus(rep, [0.0, 0.0, 1.0], np.pi / 2, 1)
        outcomes = apply_channel(ch, rep.hw_state)
        assert outcomes[0].is_null
        assert outcomes[1].probability == pytest.approx(1.0)
        assert probability_residual(outcomes) < 1e-12

    def test_apply_channel_dimension(self, spin5):
        ch = weak_meas_kraus(spin5, H_SU2, 0.2, 1)
        with pytest.raises(DimensionMismatchError):
            apply_channel(ch, np.array([1.0, 0.0]))

    def test_unknown_label(self, spin5):
        ch = weak_meas_kraus(spin5, H_SU2, 0.2, 2)
        assert ch.index_of((1, 0)) == 2
        with pytest.raises(InvalidInputError):
            ch.index_of("111")

    def test_first_order_deviation_is_quadratic(self):
        rep = cached_su2_rep(2)
        ratio = first_order_deviation(rep, H_SU2, 0.02, 3) / first_order_deviation(rep, H_SU2, 0.01, 3)
        assert 3.5 < ratio < 4.5

    @pytest.mark.parametrize("rep", [cached_su2_rep(6), so2n_rep(2)])
    def test_first_order_operators_are_free(self, rep, rng):
        h = rng.uniform(-1, 1, rep.num_generators)
        ch = weak_meas_kraus(rep, h, 0.3, 3)
        psi = random_coherent_state(rep, rng)
        for label in ch.labels:
            image = normalize_after(weak_meas_generator(ch, label), psi)
            assert g_purity(image, rep) == pytest.approx(1.0, abs=1e-8)


class TestNormalizeAfter:
    def test_scalar_multiple(self, rng):
        psi = haar_state(4, rng)
        assert_allclose(normalize_after(3 * np.eye(4), psi), psi, atol=1e-14)

    def test_unnormalized_input(self):
        assert_allclose(normalize_after(np.eye(2), [3.0, 4.0]), [0.6, 0.8], atol=1e-14)

    def test_annihilated(self):
        with pytest.raises(NormalizationError):
            normalize_after(np.zeros((2, 2)), [1.0, 0.0])
