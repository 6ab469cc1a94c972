"""Pydantic input models: state specifications, sweep configuration and HTTP bodies."""

import math
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from models.quantum import KernelKind, StateKind


class FockSpec(BaseModel):
    """Number state |m> in a basis of size dim."""

    variant: Literal["fock"] = "fock"
    m: int = Field(ge=0, description="Number index")
    dim: int = Field(ge=1, description="Basis size")
    kind: StateKind = StateKind.ATOMIC

    @model_validator(mode="after")
    def check_index(self):
        if self.m >= self.dim:
            raise ValueError(f"Fock index {self.m} out of range for dim {self.dim}")
        return self


class GlauberSpec(BaseModel):
    """Glauber coherent state |alpha>, truncated at a fixed or automatic cutoff."""

    variant: Literal["glauber"] = "glauber"
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    cutoff: Optional[int] = Field(
        default=None,
        ge=1,
        description="Fixed Fock cutoff N; automatic from tail_tol when omitted"
    )
    tail_tol: Optional[float] = Field(default=None, gt=0.0, le=1e-3)

    @property
    def alpha(self) -> complex:
        return complex(self.alpha_re, self.alpha_im)


class AtomicCoherentSpec(BaseModel):
    """SU(2) coherent state |alpha', beta'> of a d-level atom."""

    variant: Literal["atomic_coherent"] = "atomic_coherent"
    alpha_p: float = Field(ge=0.0, le=math.pi, description="Polar angle in radians")
    beta_p: float = Field(default=0.0, ge=0.0, lt=2 * math.pi, description="Azimuth in radians")
    d: int = Field(default=2, ge=2)


class EquatorialSpec(BaseModel):
    """Equatorial qubit (|0> + e^{i phi0}|1>)/sqrt(2)."""

    variant: Literal["equatorial"] = "equatorial"
    phi0: float = 0.0
    d: Literal[2] = 2


class RandomPureSpec(BaseModel):
    """Haar-random pure state drawn from an explicit seed."""

    variant: Literal["random_pure"] = "random_pure"
    seed: int
    d: int = Field(ge=2)
    kind: StateKind = StateKind.ATOMIC


class ExplicitMatrixSpec(BaseModel):
    """Density matrix given entry by entry as real and imaginary parts."""

    variant: Literal["explicit"] = "explicit"
    dim: int = Field(ge=1)
    re: List[List[float]]
    im: Optional[List[List[float]]] = None
    kind: StateKind = StateKind.ATOMIC

    @model_validator(mode="after")
    def check_shape(self):
        for label, rows in (("re", self.re), ("im", self.im)):
            if rows is None:
                continue
            if len(rows) != self.dim or any(len(row) != self.dim for row in rows):
                raise ValueError(f"'{label}' must be a {self.dim}x{self.dim} matrix")
        return self


StateSpec = Annotated[
    Union[FockSpec, GlauberSpec, AtomicCoherentSpec, EquatorialSpec, RandomPureSpec, ExplicitMatrixSpec],
    Field(discriminator="variant"),
]


class SweepConfig(BaseModel):
    """Parameter sweep over a one-parameter state family."""

    family: Literal["atomic_coherent", "glauber"]
    d: int = Field(default=2, ge=2, description="Atomic dimension (atomic_coherent only)")
    beta_p: float = Field(default=0.0, ge=0.0, lt=2 * math.pi)
    start: float
    stop: float
    steps: int = Field(ge=2)
    kernel: KernelKind
    mu: float = Field(default=4.085, gt=0.0)
    grid_k: int = 4096
    tail_tol: float = Field(default=1e-12, gt=0.0, le=1e-3)
    output_path: Optional[str] = None

    @field_validator("grid_k")
    @classmethod
    def check_grid_even(cls, v):
        if v % 2 != 0:
            raise ValueError("grid_k must be even")
        return v

    @model_validator(mode="after")
    def check_range(self):
        if not self.start < self.stop:
            raise ValueError("sweep start must be below stop")
        if self.family == "atomic_coherent" and (self.start < 0.0 or self.stop > math.pi):
            raise ValueError("alpha' sweeps must stay within [0, pi]")
        if self.family == "glauber" and self.start < 0.0:
            raise ValueError("alpha sweeps must start at alpha >= 0")
        if self.grid_k < 2 * self.expected_dim:
            raise ValueError(f"grid_k {self.grid_k} below 2 x expected dimension {self.expected_dim}")
        return self

    @property
    def expected_dim(self) -> int:
        """Largest basis size the sweep will produce."""
        if self.family == "atomic_coherent":
            return self.d
        # Mirrors the automatic Fock cutoff ceiling.
        mean = self.stop ** 2
        return int(math.ceil(mean + 12.0 * math.sqrt(mean + 1.0) + 20.0)) + 1


class StateRequest(BaseModel):
    """Single-state evaluation request."""

    state: StateSpec
    kernel: Optional[KernelKind] = Field(
        default=None,
        description="Phase kernel; su2 for atomic states and canonical for oscillators when omitted"
    )
    grid_k: Optional[int] = Field(default=None, ge=2)
    mu: float = Field(default=1.0, gt=0.0)

    model_config = {
        "json_schema_extra": {
            "example": {
                "state": {"variant": "atomic_coherent", "alpha_p": 1.5707963267948966, "beta_p": 0.0, "d": 2},
                "kernel": "su2",
                "mu": 1.0
            }
        }
    }


class FiniteExcessRequest(BaseModel):
    """Finite-dimensional entropy excess request for a named basis pair."""

    state: StateSpec
    basis_a: Literal["computational", "fourier"] = "computational"
    basis_b: Literal["computational", "fourier"] = "fourier"
