"""Entropy excess for finite basis pairs and for number versus phase."""

import logging
import math

import numpy as np

from engine.distributions import (
    DEFAULT_GRID_K, canonical_kernel, number_distribution, phase_distribution
)
from engine.entropy import (
    differential_phase_entropy, knowledge_discrete, knowledge_phase, shannon_entropy
)
from engine.errors import DimensionMismatchError, StateValidationError
from models.quantum import BasisPair, PhaseKernel, QuantumState, StateKind
from models.responses import ExcessReport

logger = logging.getLogger(__name__)

EXACT_TOL = 1e-9
QUADRATURE_TOL = 1e-6


def computational_basis(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128)


def fourier_basis(d: int) -> np.ndarray:
    """DFT basis with columns e^{2 pi i jk/d}/sqrt(d)."""
    j, k = np.indices((d, d))
    return np.exp(2j * np.pi * j * k / d) / math.sqrt(d)


NAMED_BASES = {
    "computational": computational_basis,
    "fourier": fourier_basis,
}


def basis_pair(name_a: str, name_b: str, d: int) -> BasisPair:
    """Pair of named bases; 'fourier' at d = 2 is the Hadamard basis."""
    try:
        a, b = NAMED_BASES[name_a](d), NAMED_BASES[name_b](d)
    except KeyError as e:
        raise ValueError(f"unknown basis {e.args[0]!r}; choose from {sorted(NAMED_BASES)}") from e
    return BasisPair(d=d, A=a, B=b, name_a=name_a, name_b=name_b)


def hadamard_pair() -> BasisPair:
    return basis_pair("computational", "fourier", 2)


def basis_from_matrix(A: np.ndarray, B: np.ndarray, name_a: str = "custom_a", name_b: str = "custom_b") -> BasisPair:
    """Pair of caller-supplied bases, given as columns; both must be unitary."""
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"basis shapes differ: {A.shape} vs {B.shape}")
    return BasisPair(d=A.shape[0], A=A, B=B, name_a=name_a, name_b=name_b)


def overlap_f(pair: BasisPair) -> float:
    """f(A, B) = max_{a,b} |<a|b>|, in [d^{-1/2}, 1]."""
    return float(np.max(np.abs(pair.A.conj().T @ pair.B)))


def x_min(pair: BasisPair) -> float:
    """Smallest attainable excess 2 log2(1/f) - log2 d; 0 exactly for MUBs."""
    log_d = math.log2(pair.d)
    value = -2.0 * math.log2(overlap_f(pair)) - log_d
    return min(max(value, -log_d), 0.0)


def measure(state: QuantumState, basis: np.ndarray) -> np.ndarray:
    """Outcome probabilities <b_k|rho|b_k> of a projective measurement."""
    if basis.shape[0] != state.dim:
        raise DimensionMismatchError(f"basis dim {basis.shape[0]} != state dim {state.dim}")
    probs = np.real(np.einsum("ik,ij,jk->k", basis.conj(), state.matrix, basis))
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def entropy_sum(state: QuantumState, pair: BasisPair) -> tuple:
    """H(A) + H(B) and the Maassen-Uffink bound 2 log2(1/f)."""
    h_a = shannon_entropy(measure(state, pair.A)).bits
    h_b = shannon_entropy(measure(state, pair.B)).bits
    return h_a + h_b, -2.0 * math.log2(overlap_f(pair))


def knowledge_sum(state: QuantumState, pair: BasisPair) -> float:
    """R(A) + R(B); at most log2 d when A and B are mutually unbiased."""
    r_a = knowledge_discrete(measure(state, pair.A), pair.d).bits
    r_b = knowledge_discrete(measure(state, pair.B), pair.d).bits
    return r_a + r_b


def excess_finite(state: QuantumState, pair: BasisPair) -> ExcessReport:
    """X(A, B) = H(A) - R(B) for projective measurements, bounded below by X_min."""
    if state.dim != pair.d:
        raise DimensionMismatchError(f"state dim {state.dim} != basis dim {pair.d}")
    h_a = shannon_entropy(measure(state, pair.A)).bits
    r_b = knowledge_discrete(measure(state, pair.B), pair.d).bits
    h_sum, mu_bound = entropy_sum(state, pair)
    r_sum = knowledge_sum(state, pair)
    x = h_a - r_b
    bound = x_min(pair)
    return ExcessReport(
        h_a=h_a,
        r_b=r_b,
        x=x,
        bound=bound,
        mu=1.0,
        satisfied=x >= bound - EXACT_TOL,
        tolerance=EXACT_TOL,
        # H(B) - R(A) recovered from the two sums.
        x_reversed=(h_sum - h_a) - (r_sum - r_b),
        h_sum=h_sum,
        mu_bound=mu_bound,
        r_sum=r_sum,
    )


def excess_number_phase(
    state: QuantumState,
    kernel: PhaseKernel,
    mu: float = 1.0,
    K: int = DEFAULT_GRID_K,
) -> ExcessReport:
    """X^mu[m, phi] = H[m] - mu R[phi] against the bound 0."""
    if mu <= 0.0:
        raise ValueError(f"mu must be positive, got {mu}")
    h = shannon_entropy(number_distribution(state)).bits
    r = knowledge_phase(phase_distribution(state, kernel, K)).bits
    x = h - mu * r
    return ExcessReport(
        h_a=h,
        r_b=r,
        x=x,
        bound=0.0,
        mu=mu,
        satisfied=x >= -QUADRATURE_TOL,
        tolerance=QUADRATURE_TOL,
    )


def bialynicki_sum(state: QuantumState, K: int = DEFAULT_GRID_K) -> float:
    """Differential phase entropy plus number entropy under the canonical phase.

    The sum is bounded below by log2(2 pi); callers compare against that.
    """
    if state.kind != StateKind.OSCILLATOR:
        raise StateValidationError("the number-phase entropy sum is defined for oscillator states")
    h_phase = differential_phase_entropy(phase_distribution(state, canonical_kernel(state.dim), K)).bits
    h_number = shannon_entropy(number_distribution(state)).bits
    return h_phase + h_number
