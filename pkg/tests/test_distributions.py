"""Tests for number distributions, phase kernels and phase distributions."""

import math

import numpy as np
import pytest

from engine.distributions import (
    canonical_kernel, default_kernel, number_distribution, phase_density_from_amplitudes,
    phase_distribution, resolve_grid, su2_kernel
)
from engine.errors import DimensionMismatchError, DistributionError
from engine.output import read_csv, write_number_csv, write_phase_csv
from engine.states import make_atomic_coherent, make_fock, make_glauber_coherent, make_random_pure, mix
from models.quantum import KernelKind, PhaseKernel, QuantumState, StateKind


class TestNumberDistribution:
    """Tests for p(m)."""

    def test_diagonal(self):
        p = number_distribution(make_atomic_coherent(math.pi / 2, 0.0, 3))
        assert np.allclose(p.p, [0.25, 0.5, 0.25])

    def test_truncated_mass(self):
        state = make_glauber_coherent(1.0, cutoff=1)
        p = number_distribution(state)
        assert p.truncation_loss == pytest.approx(state.truncation_loss)
        assert float(np.sum(p.p)) == pytest.approx(1.0 - state.truncation_loss)
        assert float(np.sum(p.normalized())) == pytest.approx(1.0)


class TestKernels:
    """Tests for the canonical and SU2 phase kernels."""

    def test_canonical_is_all_ones(self):
        kernel = canonical_kernel(4)
        assert np.array_equal(kernel.G, np.ones((4, 4)))
        assert kernel.kind == KernelKind.CANONICAL

    def test_qubit_su2_entry(self):
        # 2 B(3/2, 3/2) = pi/4
        assert su2_kernel(2).G[0, 1] == pytest.approx(math.pi / 4, abs=1e-14)

    def test_qutrit_su2_entry(self):
        assert su2_kernel(3).G[0, 1] == pytest.approx(0.8330, abs=1e-4)

    @pytest.mark.parametrize("d", [2, 3, 5, 16, 64])
    def test_su2_diagonal_and_range(self, d):
        G = su2_kernel(d).G
        assert np.all(np.diag(G) == 1.0)
        assert np.all(G > 0.0)
        assert np.all(G <= 1.0 + 1e-12)
        assert np.allclose(G, G.T, atol=1e-12)

    def test_su2_needs_two_levels(self):
        with pytest.raises(DimensionMismatchError):
            su2_kernel(1)

    def test_asymmetric_kernel_rejected(self):
        with pytest.raises(ValueError):
            PhaseKernel(G=[[1.0, 0.5], [0.4, 1.0]])

    def test_default_kernel_by_kind(self):
        assert default_kernel(make_fock(0, 3)).kind == KernelKind.SU2
        assert default_kernel(make_fock(0, 3, StateKind.OSCILLATOR)).kind == KernelKind.CANONICAL
        assert default_kernel(make_fock(0, 3), KernelKind.CANONICAL).kind == KernelKind.CANONICAL


class TestPhaseDistribution:
    """Tests for the FFT-synthesized phase density."""

    def test_number_state_is_uniform(self):
        P = phase_distribution(make_fock(1, 3), su2_kernel(3), 256)
        assert np.allclose(P.values, 1.0 / (2.0 * math.pi))

    @pytest.mark.parametrize("kind", [KernelKind.CANONICAL, KernelKind.SU2])
    def test_diagonal_states_are_uniform(self, kind):
        rng = np.random.default_rng(7)
        kernels = {KernelKind.CANONICAL: canonical_kernel, KernelKind.SU2: su2_kernel}
        for d in (2, 5, 12):
            weights = rng.dirichlet(np.ones(d))
            state = QuantumState(dim=d, matrix=np.diag(weights))
            P = phase_distribution(state, kernels[kind](d), 256)
            assert np.allclose(P.values, 1.0 / (2.0 * math.pi), atol=1e-14)

    def test_mixed_number_states_are_uniform(self):
        state = mix([make_fock(0, 4), make_fock(3, 4)], [0.3, 0.7])
        P = phase_distribution(state, su2_kernel(4), 128)
        assert np.allclose(P.values, 1.0 / (2.0 * math.pi), atol=1e-14)

    @pytest.mark.parametrize("kind", [KernelKind.CANONICAL, KernelKind.SU2])
    def test_phase_shift_covariance(self, kind):
        d, K, shift = 6, 512, 37
        delta = 2.0 * math.pi * shift / K
        kernel = canonical_kernel(d) if kind == KernelKind.CANONICAL else su2_kernel(d)
        state = make_random_pure(9, d)
        U = np.diag(np.exp(1j * delta * np.arange(d)))
        shifted = QuantumState(dim=d, matrix=U @ state.matrix @ U.conj().T)

        before = phase_distribution(state, kernel, K).values
        after = phase_distribution(shifted, kernel, K).values

        assert np.allclose(after, np.roll(before, shift), atol=1e-13)

    def test_equator_with_canonical_kernel(self, equator, qubit_canonical_kernel):
        P = phase_distribution(equator, qubit_canonical_kernel, 512)
        expected = (1.0 + np.cos(P.grid)) / (2.0 * math.pi)
        assert np.allclose(P.values, expected, atol=1e-14)

    def test_equator_with_su2_kernel(self, equator, qubit_kernel):
        P = phase_distribution(equator, qubit_kernel, 512)
        expected = (1.0 + (math.pi / 4) * np.cos(P.grid)) / (2.0 * math.pi)
        assert np.allclose(P.values, expected, atol=1e-14)

    def test_peak_follows_azimuth(self, qubit_kernel):
        P = phase_distribution(make_atomic_coherent(math.pi / 2, 1.0, 2), qubit_kernel, 4096)
        assert P.grid[int(np.argmax(P.values))] == pytest.approx(1.0, abs=P.step)

    def test_mass_matches_retained_probability(self):
        state = make_glauber_coherent(1.5, cutoff=3)
        P = phase_distribution(state, canonical_kernel(state.dim), 256)
        assert P.mass() == pytest.approx(1.0 - state.truncation_loss, abs=1e-12)

    def test_non_negative_on_random_states(self):
        for seed in range(20):
            state = make_random_pure(seed, 8)
            P = phase_distribution(state, su2_kernel(8), 1024)
            assert np.min(P.values) >= 0.0

    def test_dimension_mismatch(self, equator):
        with pytest.raises(DimensionMismatchError):
            phase_distribution(equator, su2_kernel(3), 256)

    def test_amplitude_path_matches_matrix_path(self):
        state = make_random_pure(5, 6)
        psi = np.linalg.eigh(state.matrix)[1][:, -1]
        G = su2_kernel(6).G
        fast = phase_density_from_amplitudes(psi, G, 1024)
        slow = phase_distribution(state, su2_kernel(6), 1024).values
        assert np.allclose(fast, slow, atol=1e-12)


class TestGrid:
    """Tests for quadrature grid resolution."""

    def test_odd_grid_rejected(self):
        with pytest.raises(DistributionError):
            resolve_grid(1025, 4)

    def test_tiny_grid_rejected(self):
        with pytest.raises(DistributionError):
            resolve_grid(32, 4)

    def test_grid_raised_for_large_dim(self, caplog):
        assert resolve_grid(64, 40) == 80
        assert "raised" in caplog.text


class TestDistributionCsv:
    """Tests for distribution CSV output."""

    def test_phase_csv(self, tmp_path, equator, qubit_kernel):
        P = phase_distribution(equator, qubit_kernel, 128)
        path = tmp_path / "phase.csv"
        write_phase_csv(P, path)
        header, data = read_csv(path)
        assert header == ["theta", "P"]
        assert data.shape == (128, 2)
        assert np.array_equal(data[:, 1], P.values)

    def test_number_csv_text(self):
        text = write_number_csv(number_distribution(make_fock(1, 2)))
        assert text.splitlines() == ["n,p", "0,0", "1,1"]
