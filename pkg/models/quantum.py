"""Pydantic value objects for states, distributions, kernels and basis pairs."""

from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator
from scipy.integrate import trapezoid

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-12
UNITARY_TOL = 1e-12


def _frozen_array(value: Any, dtype: Any) -> np.ndarray:
    """Copy into a read-only array of the requested dtype."""
    arr = np.array(value, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _complex_payload(arr: np.ndarray) -> Dict[str, Any]:
    return {"re": np.real(arr).tolist(), "im": np.imag(arr).tolist()}


class StateKind(str, Enum):
    """Physical system a density matrix belongs to."""

    ATOMIC = "atomic"
    OSCILLATOR = "oscillator"


class KernelKind(str, Enum):
    """Phase POVM whose kernel weights multiply the density matrix."""

    CANONICAL = "canonical"
    SU2 = "su2"


class QuantumState(BaseModel):
    """Density operator in the number (Fock or Wigner-Dicke) basis.

    Instances are immutable; the matrix is stored as a read-only array and every
    invariant is checked at construction time.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    dim: int = Field(gt=0, description="Basis size; cutoff + 1 for oscillators")
    matrix: np.ndarray = Field(description="dim x dim complex density matrix")
    kind: StateKind = StateKind.ATOMIC
    cutoff: Optional[int] = Field(default=None, ge=0, description="Fock cutoff N")
    declared_mean: Optional[float] = Field(default=None, ge=0.0, description="Mean number before truncation")
    truncation_loss: float = Field(default=0.0, ge=0.0, le=1.0)

    @field_validator("matrix", mode="before")
    @classmethod
    def coerce_matrix(cls, v):
        """Accept nested lists or arrays and freeze them as complex128."""
        return _frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def check_invariants(self):
        """Enforce shape, Hermiticity, positivity and trace bounds."""
        rho = self.matrix
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"matrix shape {rho.shape} does not match dim {self.dim}")
        if not np.all(np.isfinite(rho)):
            raise ValueError("matrix contains non-finite entries")
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian")
        herm = 0.5 * (rho + rho.conj().T)
        min_eig = float(np.min(np.linalg.eigvalsh(herm)))
        if min_eig < -PSD_TOL:
            raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {min_eig:.3e})")
        tr = float(np.real(np.trace(rho)))
        if self.kind == StateKind.ATOMIC:
            if self.truncation_loss != 0.0:
                raise ValueError("atomic states carry no truncation loss")
            if abs(tr - 1.0) > TRACE_TOL:
                raise ValueError(f"atomic state trace {tr!r} is not 1")
        elif not (1.0 - self.truncation_loss - TRACE_TOL <= tr <= 1.0 + TRACE_TOL):
            raise ValueError(
                f"trace {tr!r} inconsistent with truncation loss {self.truncation_loss!r}"
            )
        return self

    @field_serializer("matrix")
    def serialize_matrix(self, matrix: np.ndarray):
        return _complex_payload(matrix)

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))


class NumberDistribution(BaseModel):
    """Discrete number statistics p(m) = <m|rho|m>."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    p: np.ndarray
    truncation_loss: float = Field(default=0.0, ge=0.0, le=1.0)

    @field_validator("p", mode="before")
    @classmethod
    def coerce_p(cls, v):
        return _frozen_array(v, np.float64)

    @model_validator(mode="after")
    def check_invariants(self):
        if self.p.ndim != 1:
            raise ValueError("number distribution must be one-dimensional")
        if np.any(self.p < -1e-14) or np.any(self.p > 1.0 + 1e-14):
            raise ValueError("number probabilities outside [0, 1]")
        total = float(np.sum(self.p))
        if not (1.0 - self.truncation_loss - 1e-10 <= total <= 1.0 + 1e-10):
            raise ValueError(f"number probabilities sum to {total!r}")
        return self

    @field_serializer("p")
    def serialize_p(self, p: np.ndarray):
        return p.tolist()

    @property
    def probabilities(self) -> np.ndarray:
        """Probabilities with round-off negatives clipped to zero."""
        return np.clip(self.p, 0.0, None)

    def normalized(self) -> np.ndarray:
        """Probabilities renormalized by the retained mass 1 - truncation_loss."""
        return self.probabilities / (1.0 - self.truncation_loss)


class PhaseDistribution(BaseModel):
    """Phase density sampled on K equally spaced nodes of [0, 2pi)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    truncation_loss: float = Field(default=0.0, ge=0.0, le=1.0)

    @field_validator("values", mode="before")
    @classmethod
    def coerce_values(cls, v):
        return _frozen_array(v, np.float64)

    @model_validator(mode="after")
    def check_invariants(self):
        if self.values.ndim != 1 or self.values.size < 2:
            raise ValueError("phase density needs at least two grid nodes")
        if np.min(self.values) < -1e-12:
            raise ValueError(f"phase density negative ({np.min(self.values):.3e})")
        mass = self.mass()
        expected = 1.0 - self.truncation_loss
        if abs(mass - expected) > 1e-9:
            raise ValueError(f"phase density integrates to {mass!r}, expected {expected!r}")
        return self

    @field_serializer("values")
    def serialize_values(self, values: np.ndarray):
        return values.tolist()

    @property
    def K(self) -> int:
        return int(self.values.size)

    @property
    def step(self) -> float:
        return 2.0 * np.pi / self.K

    @property
    def grid(self) -> np.ndarray:
        return self.step * np.arange(self.K)

    @property
    def density(self) -> np.ndarray:
        """Density samples with quadrature noise below zero clipped away."""
        return np.clip(self.values, 0.0, None)

    def integrate(self, samples: np.ndarray) -> float:
        """Trapezoidal integral over one period of per-node samples."""
        return float(trapezoid(np.append(samples, samples[0]), dx=self.step))

    def mass(self) -> float:
        return self.integrate(self.density)

    def normalized(self) -> np.ndarray:
        return self.density / (1.0 - self.truncation_loss)

    def resampled(self, n: int) -> np.ndarray:
        """Normalized density on n >= K nodes by zero-padding its spectrum.

        Exact for a trigonometric polynomial of degree below K / 2, which every
        density built from a dim x dim matrix on a grid of K >= 2 dim is.
        """
        if n == self.K:
            return self.normalized()
        spectrum = np.fft.rfft(self.values)
        padded = np.zeros(n // 2 + 1, dtype=np.complex128)
        padded[:spectrum.size] = spectrum
        if self.K % 2 == 0:
            padded[self.K // 2] *= 0.5
        fine = np.fft.irfft(padded, n=n) * (n / self.K)
        return np.clip(fine, 0.0, None) / (1.0 - self.truncation_loss)


class PhaseKernel(BaseModel):
    """Real symmetric weights G_mn multiplying rho_mn e^{i(n-m)theta}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    G: np.ndarray
    kind: KernelKind = KernelKind.CANONICAL

    @field_validator("G", mode="before")
    @classmethod
    def coerce_g(cls, v):
        return _frozen_array(v, np.float64)

    @model_validator(mode="after")
    def check_invariants(self):
        g = self.G
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("kernel must be a square matrix")
        if np.max(np.abs(g - g.T)) > 1e-12:
            raise ValueError("kernel must be symmetric")
        if not np.all(np.diag(g) == 1.0):
            raise ValueError("kernel diagonal must be exactly 1")
        if self.kind == KernelKind.SU2 and (np.any(g <= 0.0) or np.any(g > 1.0 + 1e-12)):
            raise ValueError("SU2 kernel weights must lie in (0, 1]")
        return self

    @field_serializer("G")
    def serialize_g(self, g: np.ndarray):
        return g.tolist()

    @property
    def dim(self) -> int:
        return int(self.G.shape[0])


class BasisPair(BaseModel):
    """Two orthonormal bases of C^d stored column-wise."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d: int = Field(ge=1)
    A: np.ndarray
    B: np.ndarray
    name_a: str = "A"
    name_b: str = "B"

    @field_validator("A", "B", mode="before")
    @classmethod
    def coerce_basis(cls, v):
        return _frozen_array(v, np.complex128)

    @model_validator(mode="after")
    def check_invariants(self):
        eye = np.eye(self.d)
        for label, basis in (("A", self.A), ("B", self.B)):
            if basis.shape != (self.d, self.d):
                raise ValueError(f"basis {label} has shape {basis.shape}, expected {(self.d, self.d)}")
            if np.max(np.abs(basis.conj().T @ basis - eye)) > UNITARY_TOL:
                raise ValueError(f"basis {label} is not orthonormal")
        return self

    @field_serializer("A", "B")
    def serialize_basis(self, basis: np.ndarray):
        return _complex_payload(basis)


class EntropyFunctional(str, Enum):
    """Which entropy-type functional a value was computed with."""

    H_DISCRETE = "H_discrete"
    R_DISCRETE = "R_discrete"
    R_PHASE = "R_phase"
    H_PHASE_DIFFERENTIAL = "H_phase_differential"


class EntropyValue(BaseModel):
    """An entropy or entropic-knowledge value in bits."""

    model_config = ConfigDict(frozen=True)

    bits: float
    functional: EntropyFunctional
    truncation_loss: float = Field(default=0.0, ge=0.0, le=1.0)
