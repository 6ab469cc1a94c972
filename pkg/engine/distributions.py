"""Number and phase distributions on a uniform periodic quadrature grid."""

import logging
import math
from typing import Optional

import numpy as np
from scipy.special import betaln, gammaln

from engine.errors import DimensionMismatchError, DistributionError, QuadratureError, StateValidationError
from models.quantum import (
    KernelKind, NumberDistribution, PhaseDistribution, PhaseKernel, QuantumState, StateKind
)

logger = logging.getLogger(__name__)

DEFAULT_GRID_K = 4096
MIN_GRID_K = 64
RESIDUE_SILENT = 1e-10
RESIDUE_FATAL = 1e-8
NEGATIVE_FATAL = 1e-10


def number_distribution(state: QuantumState) -> NumberDistribution:
    """p(m) = Re rho_mm, carrying the state's truncation loss."""
    p = np.real(np.diag(state.matrix))
    return NumberDistribution(p=np.clip(p, 0.0, None), truncation_loss=state.truncation_loss)


def canonical_kernel(dim: int) -> PhaseKernel:
    """Canonical phase POVM: every phase-matrix entry equal to 1."""
    return PhaseKernel(G=np.ones((dim, dim)), kind=KernelKind.CANONICAL)


def su2_kernel(d: int) -> PhaseKernel:
    """Phase kernel obtained by marginalizing atomic coherent-state projections.

    With m, n in {-j..j} and j = (d - 1)/2,

        G_mn = (2j + 1) sqrt(C(2j, j+m) C(2j, j+n)) B(j - (m+n)/2 + 1, j + (m+n)/2 + 1)

    evaluated in log space. Rows are indexed by k = j + m = 0..d-1, so the Beta
    arguments become (d - (k+l)/2, (k+l)/2 + 1).
    """
    if d < 2:
        raise DimensionMismatchError(f"SU2 kernel needs d >= 2, got {d}")
    k = np.arange(d, dtype=np.float64)
    log_binom = gammaln(d) - gammaln(k + 1.0) - gammaln(d - k)
    half_sum = 0.5 * (k[:, None] + k[None, :])
    log_g = (
        math.log(d)
        + 0.5 * (log_binom[:, None] + log_binom[None, :])
        + betaln(d - half_sum, half_sum + 1.0)
    )
    g = np.exp(log_g)
    g = 0.5 * (g + g.T)
    drift = float(np.max(np.abs(np.diag(g) - 1.0)))
    if drift > 1e-12:
        raise QuadratureError(f"SU2 kernel diagonal drifted from 1 by {drift:.3e}")
    np.fill_diagonal(g, 1.0)
    return PhaseKernel(G=g, kind=KernelKind.SU2)


def default_kernel(state: QuantumState, kind: Optional[KernelKind] = None) -> PhaseKernel:
    """SU2 kernel for atomic states and canonical for oscillators unless told otherwise."""
    if kind is None:
        kind = KernelKind.CANONICAL if state.kind == StateKind.OSCILLATOR else KernelKind.SU2
    if kind == KernelKind.SU2:
        return su2_kernel(state.dim)
    return canonical_kernel(state.dim)


def resolve_grid(K: int, dim: int) -> int:
    """Validate K and raise it to the next even number >= 2 * dim when needed."""
    if K < MIN_GRID_K or K % 2:
        raise DistributionError(f"grid size K must be even and >= {MIN_GRID_K}, got {K}")
    if K < 2 * dim:
        raised = 2 * dim
        logger.warning(f"Grid K={K} too coarse for dim {dim}; raised to {raised}")
        return raised
    return K


def _diagonal_sums(weighted: np.ndarray) -> np.ndarray:
    """c_l = sum over n - m = l of weighted[m, n], for l = -(d-1)..(d-1)."""
    d = weighted.shape[0]
    m, n = np.indices((d, d))
    idx = (n - m + d - 1).ravel()
    re = np.bincount(idx, weights=weighted.real.ravel(), minlength=2 * d - 1)
    im = np.bincount(idx, weights=weighted.imag.ravel(), minlength=2 * d - 1)
    return re + 1j * im


def phase_distribution(
    state: QuantumState,
    kernel: PhaseKernel,
    K: int = DEFAULT_GRID_K,
) -> PhaseDistribution:
    """P(theta_k) = (1/2pi) sum_{m,n} G_mn rho_mn e^{i(n-m) theta_k}.

    The Fourier coefficients c_l are synthesized onto the grid with one inverse
    FFT. An imaginary residue above 1e-8 means the input was not Hermitian.
    """
    if kernel.dim != state.dim:
        raise DimensionMismatchError(f"kernel dim {kernel.dim} != state dim {state.dim}")
    K = resolve_grid(K, state.dim)
    d = state.dim
    coeffs = _diagonal_sums(kernel.G * state.matrix)

    spectrum = np.zeros(K, dtype=np.complex128)
    offsets = np.arange(-(d - 1), d)
    spectrum[offsets % K] = coeffs
    samples = np.fft.ifft(spectrum) * (K / (2.0 * np.pi))

    residue = float(np.max(np.abs(samples.imag)))
    if residue > RESIDUE_FATAL:
        raise StateValidationError(f"phase density has imaginary residue {residue:.3e}; input is not Hermitian")
    if residue > RESIDUE_SILENT:
        logger.warning(f"Discarding imaginary phase residue {residue:.3e}")

    values = samples.real
    lowest = float(np.min(values))
    if lowest < -NEGATIVE_FATAL:
        raise QuadratureError(f"phase density negative at a node ({lowest:.3e})")
    return PhaseDistribution(values=np.clip(values, 0.0, None), truncation_loss=state.truncation_loss)


def phase_density_from_amplitudes(psi: np.ndarray, G: np.ndarray, K: int) -> np.ndarray:
    """Phase density of a pure state given by amplitudes, without model validation.

    Only the non-negative Fourier coefficients are needed for a Hermitian
    projector, so the grid is synthesized with a real inverse FFT.
    """
    d = psi.size
    weighted = G * np.outer(psi, psi.conj())
    spectrum = np.zeros(K // 2 + 1, dtype=np.complex128)
    spectrum[:d] = [np.trace(weighted, offset=l) for l in range(d)]
    return np.fft.irfft(spectrum, n=K) * (K / (2.0 * np.pi))
