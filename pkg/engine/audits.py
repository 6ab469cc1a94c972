"""Randomized audits of the entropic inequalities over seeded state ensembles."""

import logging
import math
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from engine.complementarity import (
    EXACT_TOL, QUADRATURE_TOL, basis_pair, bialynicki_sum, excess_finite, excess_number_phase
)
from engine.distributions import (
    DEFAULT_GRID_K, canonical_kernel, number_distribution, phase_distribution, su2_kernel
)
from engine.entropy import LOG2_2PI, knowledge_phase, shannon_entropy
from engine.states import (
    DEFAULT_TAIL_TOL, make_atomic_coherent, make_glauber_coherent, make_random_pure, mix
)
from models.quantum import PhaseKernel, QuantumState, StateKind
from models.responses import AuditSummary

logger = logging.getLogger(__name__)

OSCILLATOR_DIM = 32
GLAUBER_ALPHAS = np.linspace(0.0, 3.0, 61)
ATOMIC_SWEEP_STEPS = 181


def sample_seeds(seed: int, samples: int) -> np.ndarray:
    """Fixed per-sample seeds derived from one master seed."""
    return np.random.SeedSequence(seed).generate_state(samples, dtype=np.uint32)


class _Tracker:
    """Running minimum margin, worst state and violation count."""

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.count = 0
        self.violations = 0
        self.min_margin = math.inf
        self.worst: Dict[str, Any] = {}

    def add(self, margin: float, spec: Dict[str, Any]) -> None:
        self.count += 1
        if margin < -self.tolerance:
            self.violations += 1
        if margin < self.min_margin:
            self.min_margin = margin
            self.worst = spec

    def summary(self, suite: str, **details) -> AuditSummary:
        passed = self.violations == 0
        log = logger.info if passed else logger.warning
        log(f"Audit {suite}: {self.count} states, min margin {self.min_margin:.3e}, {self.violations} violations")
        return AuditSummary(
            suite=suite,
            samples=self.count,
            min_margin=self.min_margin,
            worst_state=self.worst,
            violations=self.violations,
            tolerance=self.tolerance,
            passed=passed,
            details=details,
        )


def oscillator_ensemble(
    samples: int,
    seed: int,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> Iterator[Tuple[QuantumState, Dict[str, Any]]]:
    """Glauber states on alpha in [0, 3] followed by Haar-random truncated states."""
    for alpha in GLAUBER_ALPHAS:
        yield make_glauber_coherent(float(alpha), tail_tol=tail_tol), {
            "variant": "glauber", "alpha_re": float(alpha), "alpha_im": 0.0, "tail_tol": tail_tol
        }
    for s in sample_seeds(seed, samples):
        yield make_random_pure(int(s), OSCILLATOR_DIM, StateKind.OSCILLATOR), {
            "variant": "random_pure", "seed": int(s), "d": OSCILLATOR_DIM, "kind": "oscillator"
        }


def atomic_ensemble(samples: int, seed: int, d: int) -> Iterator[Tuple[QuantumState, Dict[str, Any]]]:
    """Atomic coherent meridian at beta' = 0 followed by Haar-random d-level states."""
    for alpha_p in np.linspace(0.0, math.pi, ATOMIC_SWEEP_STEPS):
        yield make_atomic_coherent(float(alpha_p), 0.0, d), {
            "variant": "atomic_coherent", "alpha_p": float(alpha_p), "beta_p": 0.0, "d": d
        }
    for s in sample_seeds(seed, samples):
        yield make_random_pure(int(s), d), {"variant": "random_pure", "seed": int(s), "d": d}


def audit_theorem1(d: int, samples: int, seed: int = 0) -> AuditSummary:
    """H(A) - R(B) >= 0 on Haar-random states for the computational/Fourier MUB.

    Each sample is cross-checked against H(A) + H(B) >= log2 d; the two forms
    must agree on pass/fail, and X(A, B) must equal X(B, A).
    """
    pair = basis_pair("computational", "fourier", d)
    tracker = _Tracker(EXACT_TOL)
    disagreements = 0
    max_asymmetry = 0.0
    max_x = -math.inf
    log_d = math.log2(d)
    for s in sample_seeds(seed, samples):
        report = excess_finite(make_random_pure(int(s), d), pair)
        tracker.add(report.x - report.bound, {"variant": "random_pure", "seed": int(s), "d": d})
        sum_form_ok = report.h_sum >= log_d - EXACT_TOL
        if sum_form_ok != report.satisfied:
            disagreements += 1
        max_asymmetry = max(max_asymmetry, abs(report.x - report.x_reversed))
        max_x = max(max_x, report.x)
    tracker.violations += disagreements
    return tracker.summary(
        "theorem1",
        d=d,
        seed=seed,
        sum_form_disagreements=disagreements,
        max_asymmetry=max_asymmetry,
        max_x=max_x,
        log2_d=log_d,
    )


def audit_number_phase(
    samples: int,
    seed: int = 0,
    mu: float = 1.0,
    d: Optional[int] = None,
    grid_k: int = DEFAULT_GRID_K,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> AuditSummary:
    """H[m] - mu R[phi] >= 0 over the oscillator ensemble, or over d-level atoms with the SU2 kernel."""
    tracker = _Tracker(QUADRATURE_TOL)
    if d is None:
        ensemble = oscillator_ensemble(samples, seed, tail_tol)
        kernels: Dict[int, PhaseKernel] = {}
    else:
        ensemble = atomic_ensemble(samples, seed, d)
        kernels = {d: su2_kernel(d)}
    for state, spec in ensemble:
        if state.dim not in kernels:
            kernels[state.dim] = canonical_kernel(state.dim)
        kernel = kernels[state.dim]
        report = excess_number_phase(state, kernel, mu, grid_k)
        tracker.add(report.x, spec)
    suite = "eq7" if mu == 1.0 else "eq8"
    return tracker.summary(suite, mu=mu, d=d, seed=seed, kernel="su2" if d else "canonical")


def audit_bialynicki(
    samples: int,
    seed: int = 0,
    grid_k: int = DEFAULT_GRID_K,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> AuditSummary:
    """Differential phase entropy plus number entropy >= log2(2 pi) on the oscillator ensemble."""
    tracker = _Tracker(QUADRATURE_TOL)
    for state, spec in oscillator_ensemble(samples, seed, tail_tol):
        tracker.add(bialynicki_sum(state, grid_k) - LOG2_2PI, spec)
    return tracker.summary("eq6", seed=seed, log2_2pi=LOG2_2PI)


def audit_mixed_mu(
    samples: int,
    seed: int = 0,
    mu: float = 4.035,
    grid_k: int = DEFAULT_GRID_K,
) -> AuditSummary:
    """Mixed qubit states: H[m] concave, R[phi] convex, and X^mu >= 0.

    Each sample mixes two Haar-random pure qubits with a random weight.
    """
    kernel = su2_kernel(2)
    tracker = _Tracker(QUADRATURE_TOL)
    concavity_failures = 0
    convexity_failures = 0
    for s in sample_seeds(seed, samples):
        rng = np.random.default_rng(int(s))
        s1, s2 = (int(v) for v in rng.integers(0, 2**32, size=2))
        lam = float(rng.uniform(0.0, 1.0))
        a, b = make_random_pure(s1, 2), make_random_pure(s2, 2)
        mixed = mix([a, b], [lam, 1.0 - lam])

        h = [shannon_entropy(number_distribution(x)).bits for x in (mixed, a, b)]
        r = [knowledge_phase(phase_distribution(x, kernel, grid_k)).bits for x in (mixed, a, b)]
        if h[0] < lam * h[1] + (1.0 - lam) * h[2] - EXACT_TOL:
            concavity_failures += 1
        if r[0] > lam * r[1] + (1.0 - lam) * r[2] + EXACT_TOL:
            convexity_failures += 1
        tracker.add(h[0] - mu * r[0], {"seeds": [s1, s2], "weight": lam, "d": 2})
    tracker.violations += concavity_failures + convexity_failures
    return tracker.summary(
        "mixed_mu",
        mu=mu,
        seed=seed,
        concavity_failures=concavity_failures,
        convexity_failures=convexity_failures,
    )
