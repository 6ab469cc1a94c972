"""Tests for the admissible-mu search."""

import math

import numpy as np
import pytest

from engine.distributions import canonical_kernel, su2_kernel
from engine.errors import DimensionMismatchError, StateValidationError
from engine.mu_search import (
    chart_amplitudes, chart_params, mu_objective, mu_trend, search_mu, _sweep_shape
)
from engine.states import (
    atomic_coherent_amplitudes, haar_vector, make_atomic_coherent, make_fock, mix, pure_state
)

from tests.reference import EQUATOR_R_SU2, QUBIT_MU, QUDIT4_MU

TREND_DIMS = [2, 3, 4, 6, 8]


@pytest.fixture(scope="module")
def trend():
    """Full-budget searches with a 1e5-state audit each, shared by the acceptance checks."""
    return mu_trend(TREND_DIMS, budget=100_000, seed=0)


class TestObjective:
    """Tests for H[m]/R[phi]."""

    def test_equator(self, equator, qubit_kernel):
        assert mu_objective(equator, qubit_kernel) == pytest.approx(1.0 / EQUATOR_R_SU2, abs=2e-3)

    def test_number_state_is_degenerate(self):
        assert math.isinf(mu_objective(make_fock(0, 3), su2_kernel(3)))

    def test_ratio_diverges_toward_poles(self, qubit_kernel):
        ratios = [mu_objective(make_atomic_coherent(a, 0.0, 2), qubit_kernel) for a in (0.5, 0.1, 0.02)]
        assert ratios[0] < ratios[1] < ratios[2]

    def test_mixed_state_rejected(self, qubit_kernel):
        state = mix([make_fock(0, 2), make_fock(1, 2)], [0.5, 0.5])
        with pytest.raises(StateValidationError):
            mu_objective(state, qubit_kernel)


class TestChart:
    """Tests for the pure-state chart."""

    @pytest.mark.parametrize("d", [2, 3, 6])
    def test_round_trip_up_to_global_phase(self, d):
        psi = haar_vector(np.random.default_rng(d), d)
        back = chart_amplitudes(chart_params(psi), d)
        overlap = abs(np.vdot(psi, back))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_unit_norm(self):
        params = np.random.default_rng(0).uniform(-3.0, 3.0, size=6)
        assert np.linalg.norm(chart_amplitudes(params, 4)) == pytest.approx(1.0, abs=1e-14)


class TestSearchSetup:
    """Argument validation and budget handling."""

    def test_sweep_shape_fits_budget(self):
        assert _sweep_shape(100_000) == (181, 64)
        n_alpha, n_beta = _sweep_shape(3000)
        assert n_alpha * n_beta <= 1500

    def test_bad_dimension(self):
        with pytest.raises(DimensionMismatchError):
            search_mu(1)

    def test_small_budget(self):
        with pytest.raises(ValueError):
            search_mu(2, budget=10)

    def test_negative_seed(self):
        with pytest.raises(ValueError):
            search_mu(2, budget=2000, seed=-1)

    def test_kernel_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            search_mu(2, kernel=su2_kernel(3), budget=2000)


class TestSmallSearch:
    """Cheap searches exercising determinism and report structure."""

    def test_seed_determinism(self):
        first = search_mu(2, budget=3000, seed=5, starts=8, audit_samples=50)
        second = search_mu(2, budget=3000, seed=5, starts=8, audit_samples=50)
        assert first.model_dump_json() == second.model_dump_json()

    def test_workers_do_not_change_result(self):
        serial = search_mu(3, budget=3000, seed=1, starts=8, audit_samples=20)
        threaded = search_mu(3, budget=3000, seed=1, starts=8, audit_samples=20, workers=4)
        assert serial.model_dump_json() == threaded.model_dump_json()

    def test_report_fields(self):
        report = search_mu(2, budget=3000, seed=0, starts=8, audit_samples=50)
        assert report.kernel == "su2"
        assert "SU2 kernel assumed" in report.note
        assert [s.method.split()[0] for s in report.stages] == [
            "coherent-sweep", "multistart-nelder-mead", "polish-nelder-mead"
        ]
        assert report.certified_floor <= report.mu_estimate
        assert len(report.argmin_re) == 2

    def test_incumbent_reproduces_estimate(self):
        report = search_mu(2, budget=3000, seed=0, starts=8, audit_samples=0)
        psi = np.array(report.argmin_re) + 1j * np.array(report.argmin_im)
        ratio = mu_objective(pure_state(psi), su2_kernel(2))
        assert ratio == pytest.approx(report.mu_estimate, rel=1e-9)

    def test_audit_minimum_sets_estimate(self, mocker):
        equator = atomic_coherent_amplitudes(math.pi / 2, 0.0, 2)
        mocker.patch("engine.mu_search.minimize")
        mocker.patch("engine.mu_search.haar_vector", return_value=equator)

        # A 4 x 2 coherent grid misses the equator, so only the audit can reach it.
        report = search_mu(2, budget=1000, starts=2, audit_samples=3, sweep_shape=(4, 2))

        assert report.audit_improved
        assert report.mu_estimate == report.audit_min_ratio
        assert report.mu_estimate == pytest.approx(1.0 / EQUATOR_R_SU2, abs=2e-3)
        psi = np.array(report.argmin_re) + 1j * np.array(report.argmin_im)
        assert abs(np.vdot(equator, psi)) == pytest.approx(1.0, abs=1e-12)

    def test_canonical_kernel_floor(self):
        report = search_mu(3, kernel=canonical_kernel(3), budget=3000, seed=0, starts=8, audit_samples=50)
        assert report.kernel == "canonical"
        assert report.mu_estimate >= 1.0 - 1e-6


class TestAcceptance:
    """Full-budget searches against the reference values."""

    def test_qubit(self, trend):
        report = trend.reports[0]
        assert report.mu_estimate == pytest.approx(QUBIT_MU, abs=0.05)
        assert report.ratio_samples >= report.budget // 2

    def test_qubit_argmin_is_equatorial(self, trend):
        report = trend.reports[0]
        populations = np.array(report.argmin_re) ** 2 + np.array(report.argmin_im) ** 2
        assert populations == pytest.approx([0.5, 0.5], abs=1e-3)

    def test_four_levels(self, trend):
        assert trend.reports[2].mu_estimate == pytest.approx(QUDIT4_MU, abs=0.05)

    def test_decreasing_toward_one(self, trend):
        assert [p.d for p in trend.points] == TREND_DIMS
        assert trend.monotone_decreasing
        assert 1.0 < trend.points[-1].mu_estimate < 2.1

    def test_continuity_guard(self, trend):
        for report in trend.reports:
            assert report.neighborhood_gain <= 1e-3

    def test_audit_never_undercuts_estimate(self, trend):
        for report in trend.reports:
            assert report.audit_min_ratio >= report.mu_estimate
            assert report.certified_floor == pytest.approx(report.mu_estimate - report.tolerance)
            assert report.mu_estimate >= 1.0 - 1e-6

    def test_trend_requires_ascending(self):
        with pytest.raises(ValueError):
            mu_trend([4, 2], budget=2000)
