"""Pydantic report and response models for analyses, audits and searches."""

from pydantic import BaseModel, Field, model_validator
from typing import List, Optional, Any, Dict


class APIResponse(BaseModel):
    """Base API response model."""

    success: bool = Field(default=True, description="Request success status")
    data: Optional[Any] = Field(default=None, description="Response data")
    message: Optional[str] = Field(default=None, description="Response message")
    error: Optional[str] = Field(default=None, description="Error message if any")


class ExcessReport(BaseModel):
    """Entropy excess X = H(A) - mu R(B) against its lower bound."""

    h_a: float = Field(description="Entropy of the ignorance variable, bits")
    r_b: float = Field(description="Knowledge of the knowledge variable, bits")
    x: float = Field(description="Entropy excess, bits")
    bound: float = Field(description="Applicable lower bound, bits")
    mu: float = Field(default=1.0, gt=0.0)
    satisfied: bool
    tolerance: float = Field(default=1e-9, description="Slack allowed below the bound")
    x_reversed: Optional[float] = Field(default=None, description="X(B, A) for finite pairs")
    h_sum: Optional[float] = Field(default=None, description="H(A) + H(B), finite pairs only")
    mu_bound: Optional[float] = Field(default=None, description="Maassen-Uffink bound 2 log2(1/f)")
    r_sum: Optional[float] = Field(default=None, description="R(A) + R(B), finite pairs only")

    @model_validator(mode="after")
    def check_consistency(self):
        if abs(self.x - (self.h_a - self.mu * self.r_b)) > 1e-12:
            raise ValueError("x must equal h_a - mu * r_b")
        if self.satisfied != (self.x >= self.bound - self.tolerance):
            raise ValueError("satisfied flag disagrees with x and bound")
        return self


class AuditSummary(BaseModel):
    """Outcome of a randomized inequality audit."""

    suite: str
    samples: int = Field(description="Number of states evaluated")
    min_margin: float = Field(description="Smallest value of (lhs - bound) seen")
    worst_state: Dict[str, Any] = Field(description="Specification of the worst-case state")
    violations: int = 0
    tolerance: float
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)


class SearchStage(BaseModel):
    """One stage of the mu search."""

    method: str
    iterations: int = Field(description="Objective evaluations spent in this stage")
    best_ratio: float


class MuSearchReport(BaseModel):
    """Result of the search for the largest admissible mu at dimension d."""

    d: int
    kernel: str
    mu_estimate: float = Field(description="Smallest sampled ratio H[m]/R[phi]")
    certified_floor: float = Field(description="Largest mu with no sampled violation, less tolerance")
    tolerance: float
    ratio_samples: int = Field(description="Ratios evaluated across all stages")
    budget: int
    seed: int
    converged: bool
    stages: List[SearchStage]
    argmin_params: List[float] = Field(description="Chart coordinates of the incumbent")
    argmin_re: List[float]
    argmin_im: List[float]
    neighborhood_gain: float = Field(description="Largest ratio decrease found by 1e-4 perturbations")
    audit_min_ratio: Optional[float] = None
    audit_improved: bool = Field(default=False, description="The audit undercut the search and set the estimate")
    note: str = ""

    @model_validator(mode="after")
    def check_floor(self):
        if self.certified_floor > self.mu_estimate:
            raise ValueError("certified floor cannot exceed the estimate")
        return self


class TrendPoint(BaseModel):
    d: int
    mu_estimate: float


class TrendReport(BaseModel):
    """mu estimates across dimensions; monotonicity is reported, not enforced."""

    points: List[TrendPoint]
    monotone_decreasing: bool
    reports: List[MuSearchReport] = Field(default_factory=list)


class EvalResult(BaseModel):
    """Number and phase statistics of a single state."""

    dim: int
    kind: str
    kernel: str
    grid_k: int
    truncation_loss: float
    number_p: List[float]
    mean_number: float
    phase_min: float
    phase_max: float
    phase_peak_theta: float
    h_m: float
    r_phi: float
    h_phi_differential: float
    mu: float
    x: float
    x_mu: float


class EvalResponse(APIResponse):
    """Response model for single-state evaluation."""

    data: Optional[EvalResult] = None


class ExcessResponse(APIResponse):
    """Response model for finite-dimensional excess evaluation."""

    data: Optional[ExcessReport] = None


class KernelResponse(APIResponse):
    """Response model for kernel inspection."""

    data: Optional[List[List[float]]] = None


class ObjectiveResponse(APIResponse):
    """Response model for the mu objective; data is null when R[phi] vanishes."""

    data: Optional[float] = None


class ErrorResponse(BaseModel):
    """Error response model."""

    error: str = Field(description="Error type")
    message: str = Field(description="Error message")
    detail: Optional[str] = Field(default=None, description="Additional error details")
    timestamp: str = Field(description="Error timestamp")
