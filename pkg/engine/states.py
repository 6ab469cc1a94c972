"""Density-matrix constructors for atomic and truncated oscillator systems."""

import json
import logging
import math
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
from pydantic import TypeAdapter, ValidationError
from scipy.special import comb, gammainc, gammaln

from engine.errors import DimensionMismatchError, DistributionError, StateValidationError
from models.quantum import QuantumState, StateKind
from models.requests import (
    AtomicCoherentSpec, EquatorialSpec, ExplicitMatrixSpec, FockSpec,
    GlauberSpec, RandomPureSpec, StateSpec
)

logger = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-12
WEIGHT_TOL = 1e-12

_spec_adapter = TypeAdapter(StateSpec)


def _build(**fields) -> QuantumState:
    """Construct a QuantumState, reporting invariant failures as StateValidationError."""
    try:
        return QuantumState(**fields)
    except ValidationError as e:
        raise StateValidationError(str(e)) from e


def cutoff_ceiling(mean: float) -> int:
    """Hard upper bound on the automatic Fock cutoff for a given mean number."""
    return int(math.ceil(mean + 12.0 * math.sqrt(mean + 1.0) + 20.0))


def poisson_tail(cutoff: Union[int, np.ndarray], mean: float) -> Union[float, np.ndarray]:
    """Probability mass above the cutoff for Poisson statistics, P(n > N)."""
    return gammainc(np.asarray(cutoff) + 1.0, mean)


def auto_cutoff(mean: float, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest N >= 1 whose Poisson tail is below tail_tol, capped at the ceiling."""
    if not 0.0 < tail_tol <= 1e-3:
        raise StateValidationError(f"tail_tol {tail_tol!r} outside (0, 1e-3]")
    ceiling = max(cutoff_ceiling(mean), 1)
    candidates = np.arange(1, ceiling + 1)
    ok = np.nonzero(poisson_tail(candidates, mean) <= tail_tol)[0]
    if ok.size == 0:
        logger.warning(f"Fock cutoff hit its ceiling N={ceiling} for mean {mean:.4g}; tail above {tail_tol:g}")
        return ceiling
    return int(candidates[ok[0]])


def pure_state(
    vector: Sequence[complex],
    kind: StateKind = StateKind.ATOMIC,
    truncation_loss: float = 0.0,
    cutoff: Optional[int] = None,
    declared_mean: Optional[float] = None,
) -> QuantumState:
    """Projector onto an amplitude vector.

    Atomic vectors are renormalized to unit length; oscillator vectors keep the
    norm 1 - truncation_loss that truncation leaves behind.
    """
    psi = np.asarray(vector, dtype=np.complex128)
    norm = float(np.linalg.norm(psi))
    if psi.ndim != 1 or norm == 0.0:
        raise StateValidationError("amplitude vector must be a non-zero 1-d array")
    if kind == StateKind.ATOMIC:
        psi = psi / norm
    elif kind == StateKind.OSCILLATOR and cutoff is None:
        cutoff = psi.size - 1
    return _build(
        dim=psi.size,
        matrix=np.outer(psi, psi.conj()),
        kind=kind,
        cutoff=cutoff,
        declared_mean=declared_mean,
        truncation_loss=truncation_loss,
    )


def make_fock(m: int, dim: int, kind: StateKind = StateKind.ATOMIC) -> QuantumState:
    """Number (Fock or Wigner-Dicke) state |m><m|."""
    if dim < 1 or not 0 <= m < dim:
        raise StateValidationError(f"Fock index {m} out of range for dim {dim}")
    psi = np.zeros(dim, dtype=np.complex128)
    psi[m] = 1.0
    return pure_state(psi, kind=kind, declared_mean=float(m) if kind == StateKind.OSCILLATOR else None)


def glauber_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Coherent-state amplitudes e^{-|a|^2/2} a^m / sqrt(m!) for m = 0..cutoff."""
    alpha = complex(alpha)
    m = np.arange(cutoff + 1)
    amps = np.zeros(cutoff + 1, dtype=np.complex128)
    r = abs(alpha)
    if r == 0.0:
        amps[0] = 1.0
        return amps
    log_mod = -0.5 * r * r + m * math.log(r) - 0.5 * gammaln(m + 1.0)
    return np.exp(log_mod) * np.exp(1j * m * np.angle(alpha))


def make_glauber_coherent(
    alpha: complex,
    cutoff: Optional[int] = None,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> QuantumState:
    """Truncated Glauber coherent state.

    Args:
        alpha: Complex coherent amplitude.
        cutoff: Fixed Fock cutoff N (>= 1). When omitted, N is the smallest
            cutoff whose Poisson tail is at most tail_tol.
        tail_tol: Tail tolerance for the automatic cutoff, in (0, 1e-3].

    Returns:
        Oscillator state of dimension N + 1 with the discarded tail recorded
        as truncation_loss.
    """
    mean = abs(complex(alpha)) ** 2
    if cutoff is None:
        cutoff = auto_cutoff(mean, tail_tol)
    elif cutoff < 1:
        raise StateValidationError(f"Fock cutoff must be >= 1, got {cutoff}")
    loss = float(poisson_tail(cutoff, mean))
    return pure_state(
        glauber_amplitudes(alpha, cutoff),
        kind=StateKind.OSCILLATOR,
        truncation_loss=loss,
        cutoff=cutoff,
        declared_mean=mean,
    )


def atomic_coherent_amplitudes(alpha_p: float, beta_p: float, d: int) -> np.ndarray:
    """Binomial SU(2) amplitudes sqrt(C(d-1,k)) cos^{d-1-k} sin^k e^{i k beta'}."""
    k = np.arange(d)
    c = math.cos(alpha_p / 2.0)
    s = math.sin(alpha_p / 2.0)
    amps = np.sqrt(comb(d - 1, k)) * c ** (d - 1 - k) * s ** k
    return amps * np.exp(1j * k * beta_p)


def make_atomic_coherent(alpha_p: float, beta_p: float, d: int) -> QuantumState:
    """Atomic (spin) coherent state |alpha', beta'> of a d-level system."""
    if d < 2:
        raise StateValidationError(f"atomic coherent states need d >= 2, got {d}")
    return pure_state(atomic_coherent_amplitudes(alpha_p, beta_p, d))


def make_equatorial(phi0: float, d: int = 2) -> QuantumState:
    """Equatorial qubit (|0> + e^{i phi0}|1>)/sqrt(2)."""
    if d != 2:
        raise StateValidationError("equatorial states are defined for qubits only")
    return make_atomic_coherent(math.pi / 2.0, phi0, 2)


def haar_vector(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-distributed unit vector drawn from a complex Gaussian."""
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def make_random_pure(seed: int, d: int, kind: StateKind = StateKind.ATOMIC) -> QuantumState:
    """Haar-random pure state, bit-identical for a given seed."""
    if d < 2:
        raise StateValidationError(f"random pure states need d >= 2, got {d}")
    return pure_state(haar_vector(np.random.default_rng(seed), d), kind=kind)


def mix(states: Sequence[QuantumState], weights: Sequence[float]) -> QuantumState:
    """Convex combination sum_i w_i rho_i."""
    if len(states) == 0 or len(states) != len(weights):
        raise DistributionError("need one weight per state and at least one state")
    w = np.asarray(weights, dtype=np.float64)
    if np.any(w < 0.0) or abs(float(np.sum(w)) - 1.0) > WEIGHT_TOL:
        raise DistributionError(f"weights {w.tolist()} are not a probability vector")
    first = states[0]
    for s in states[1:]:
        if s.dim != first.dim:
            raise DimensionMismatchError(f"cannot mix dims {first.dim} and {s.dim}")
        if s.kind != first.kind:
            raise DimensionMismatchError("cannot mix atomic and oscillator states")
    rho = sum(wi * s.matrix for wi, s in zip(w, states))
    loss = float(sum(wi * s.truncation_loss for wi, s in zip(w, states)))
    if first.kind == StateKind.ATOMIC:
        # Renormalize away weight round-off.
        rho = rho / np.real(np.trace(rho))
        loss = 0.0
    return _build(
        dim=first.dim,
        matrix=0.5 * (rho + rho.conj().T),
        kind=first.kind,
        cutoff=first.cutoff,
        declared_mean=None,
        truncation_loss=loss,
    )


def from_explicit(spec: ExplicitMatrixSpec) -> QuantumState:
    """Validate an explicit density matrix."""
    re = np.asarray(spec.re, dtype=np.float64)
    im = np.zeros_like(re) if spec.im is None else np.asarray(spec.im, dtype=np.float64)
    rho = re + 1j * im
    loss = 0.0
    cutoff = None
    if spec.kind == StateKind.OSCILLATOR:
        retained = float(np.trace(re))
        if retained <= 0.0:
            raise StateValidationError(f"oscillator matrix must retain positive trace, got {retained!r}")
        loss = max(0.0, 1.0 - retained)
        cutoff = spec.dim - 1
    return _build(dim=spec.dim, matrix=rho, kind=spec.kind, cutoff=cutoff, truncation_loss=loss)


def from_spec(spec: StateSpec, tail_tol: float = DEFAULT_TAIL_TOL) -> QuantumState:
    """Dispatch a StateSpec variant to its constructor."""
    if isinstance(spec, FockSpec):
        return make_fock(spec.m, spec.dim, spec.kind)
    if isinstance(spec, GlauberSpec):
        return make_glauber_coherent(spec.alpha, spec.cutoff, spec.tail_tol or tail_tol)
    if isinstance(spec, AtomicCoherentSpec):
        return make_atomic_coherent(spec.alpha_p, spec.beta_p, spec.d)
    if isinstance(spec, EquatorialSpec):
        return make_equatorial(spec.phi0, spec.d)
    if isinstance(spec, RandomPureSpec):
        return make_random_pure(spec.seed, spec.d, spec.kind)
    if isinstance(spec, ExplicitMatrixSpec):
        return from_explicit(spec)
    raise StateValidationError(f"unsupported state specification {type(spec).__name__}")


def parse_spec(document: Union[str, dict]) -> StateSpec:
    """Parse a JSON state document; documents without 'variant' are explicit matrices."""
    try:
        data = json.loads(document) if isinstance(document, str) else dict(document)
    except json.JSONDecodeError as e:
        raise StateValidationError(f"malformed state document: {e}") from e
    if not isinstance(data, dict):
        raise StateValidationError("state document must be a JSON object")
    data.setdefault("variant", "explicit")
    try:
        return _spec_adapter.validate_python(data)
    except ValidationError as e:
        raise StateValidationError(str(e)) from e


def load_state_json(source: Union[str, Path], tail_tol: float = DEFAULT_TAIL_TOL) -> QuantumState:
    """Load and validate a state from a JSON file path or JSON text."""
    text = str(source)
    path = Path(text)
    if not text.lstrip().startswith("{") and path.exists():
        text = path.read_text(encoding="utf-8")
    return from_spec(parse_spec(text), tail_tol)
