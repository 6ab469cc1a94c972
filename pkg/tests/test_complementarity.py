"""Tests for finite-dimensional and number-phase entropy excess."""

import math

import numpy as np
import pytest

from engine.complementarity import (
    basis_from_matrix, basis_pair, bialynicki_sum, computational_basis, entropy_sum, excess_finite,
    excess_number_phase, fourier_basis, hadamard_pair, knowledge_sum, measure, overlap_f, x_min
)
from engine.distributions import canonical_kernel, su2_kernel
from engine.entropy import LOG2_2PI
from engine.errors import DimensionMismatchError, StateValidationError
from engine.states import make_fock, make_glauber_coherent, make_random_pure, pure_state

from tests.reference import EQUATOR_R_SU2, QUBIT_MU


def _rotation(f: float) -> np.ndarray:
    s = math.sqrt(1.0 - f * f)
    return np.array([[f, -s], [s, f]])


class TestBases:
    """Tests for named bases and overlaps."""

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_fourier_is_unbiased(self, d):
        pair = basis_pair("computational", "fourier", d)
        assert overlap_f(pair) == pytest.approx(1.0 / math.sqrt(d), abs=1e-12)
        assert x_min(pair) == pytest.approx(0.0, abs=1e-12)

    def test_hadamard(self):
        pair = hadamard_pair()
        assert np.allclose(pair.B, np.array([[1, 1], [1, -1]]) / math.sqrt(2))

    def test_identical_bases(self):
        pair = basis_pair("computational", "computational", 4)
        assert overlap_f(pair) == pytest.approx(1.0)
        assert x_min(pair) == pytest.approx(-2.0)

    def test_partial_overlap(self):
        pair = basis_from_matrix(computational_basis(2), _rotation(0.9))
        assert overlap_f(pair) == pytest.approx(0.9)
        assert x_min(pair) == pytest.approx(-0.6960, abs=1e-4)

    def test_non_unitary_rejected(self):
        with pytest.raises(ValueError):
            basis_from_matrix(np.eye(2), np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            basis_pair("computational", "spherical", 2)

    def test_measure_probabilities(self, equator):
        assert np.allclose(measure(equator, fourier_basis(2)), [1.0, 0.0], atol=1e-15)


class TestFiniteExcess:
    """Tests for X(A, B) = H(A) - R(B)."""

    def test_basis_state_saturates(self):
        report = excess_finite(make_fock(0, 3), basis_pair("computational", "fourier", 3))
        assert report.h_a == pytest.approx(0.0)
        assert report.r_b == pytest.approx(0.0, abs=1e-12)
        assert report.x == pytest.approx(0.0, abs=1e-12)
        assert report.satisfied

    def test_fourier_state_saturates(self):
        state = pure_state(fourier_basis(4)[:, 1])
        report = excess_finite(state, basis_pair("computational", "fourier", 4))
        assert report.h_a == pytest.approx(2.0)
        assert report.r_b == pytest.approx(2.0)
        assert report.x == pytest.approx(0.0, abs=1e-12)

    def test_identical_bases_reach_lower_bound(self):
        report = excess_finite(make_fock(1, 2), basis_pair("computational", "computational", 2))
        assert report.x == pytest.approx(-1.0)
        assert report.bound == pytest.approx(-1.0)
        assert report.satisfied

    def test_mub_symmetry_and_sums(self):
        pair = basis_pair("computational", "fourier", 5)
        for seed in range(25):
            report = excess_finite(make_random_pure(seed, 5), pair)
            assert report.x == pytest.approx(report.x_reversed, abs=1e-12)
            assert report.h_sum >= math.log2(5) - 1e-9
            assert report.r_sum <= math.log2(5) + 1e-9

    def test_entropy_and_knowledge_sums(self):
        state = make_random_pure(9, 3)
        pair = basis_pair("computational", "fourier", 3)
        h_sum, bound = entropy_sum(state, pair)
        assert bound == pytest.approx(math.log2(3))
        assert knowledge_sum(state, pair) == pytest.approx(2.0 * math.log2(3) - h_sum, abs=1e-12)

    def test_report_carries_the_sums(self):
        state = make_random_pure(4, 4)
        pair = basis_pair("computational", "fourier", 4)
        report = excess_finite(state, pair)
        h_sum, bound = entropy_sum(state, pair)
        assert report.h_sum == h_sum
        assert report.mu_bound == bound
        assert report.r_sum == knowledge_sum(state, pair)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            excess_finite(make_fock(0, 2), basis_pair("computational", "fourier", 3))


class TestNumberPhaseExcess:
    """Tests for X^mu[m, phi] = H[m] - mu R[phi]."""

    def test_equator_at_unit_mu(self, equator, qubit_kernel):
        report = excess_number_phase(equator, qubit_kernel)
        assert report.h_a == pytest.approx(1.0)
        assert report.r_b == pytest.approx(EQUATOR_R_SU2, abs=1e-4)
        assert report.x == pytest.approx(1.0 - EQUATOR_R_SU2, abs=1e-4)
        assert report.satisfied

    def test_equator_near_admissible_mu(self, equator, qubit_kernel):
        report = excess_number_phase(equator, qubit_kernel, mu=QUBIT_MU)
        assert abs(report.x) < 2e-3

    def test_large_mu_violates(self, equator, qubit_kernel):
        report = excess_number_phase(equator, qubit_kernel, mu=10.0)
        assert report.x < 0.0
        assert not report.satisfied

    def test_vacuum_saturates(self, vacuum):
        report = excess_number_phase(vacuum, canonical_kernel(vacuum.dim))
        assert report.x == pytest.approx(0.0, abs=1e-9)

    def test_pole_saturates_for_any_mu(self, pole_state, qubit_kernel):
        report = excess_number_phase(pole_state, qubit_kernel, mu=10.0)
        assert report.h_a == pytest.approx(0.0, abs=1e-12)
        assert report.r_b == pytest.approx(0.0, abs=1e-9)
        assert report.satisfied

    def test_non_positive_mu(self, equator, qubit_kernel):
        with pytest.raises(ValueError):
            excess_number_phase(equator, qubit_kernel, mu=0.0)

    def test_report_consistency_enforced(self):
        from models.responses import ExcessReport

        with pytest.raises(ValueError):
            ExcessReport(h_a=1.0, r_b=0.5, x=0.2, bound=0.0, satisfied=True)


class TestNumberPhaseEntropySum:
    """Tests for the differential phase entropy plus number entropy."""

    def test_vacuum_saturates(self, vacuum):
        assert bialynicki_sum(vacuum) == pytest.approx(LOG2_2PI, abs=1e-9)

    def test_coherent_states_exceed_bound(self):
        for alpha in (0.5, 1.0, 2.0, 3.0):
            assert bialynicki_sum(make_glauber_coherent(alpha)) >= LOG2_2PI - 1e-6

    def test_atomic_state_rejected(self, equator):
        with pytest.raises(StateValidationError):
            bialynicki_sum(equator)

    def test_su2_kernel_for_atomic_numbers(self):
        state = make_fock(0, 3)
        report = excess_number_phase(state, su2_kernel(3))
        assert report.x == pytest.approx(0.0, abs=1e-12)
