"""FastAPI router for single-state number-phase analysis."""

from fastapi import APIRouter, Depends, HTTPException, Query, status
from fastapi.concurrency import run_in_threadpool
from typing import Annotated
import logging
import math

from dependencies.context import EvaluationContext, get_context
from engine.complementarity import basis_pair, excess_finite
from engine.distributions import default_kernel, su2_kernel
from engine.errors import DimensionMismatchError, DistributionError, QuadratureError, StateValidationError
from engine.mu_search import mu_objective
from engine.states import from_spec, make_atomic_coherent
from engine.sweeps import evaluate_state
from models.requests import FiniteExcessRequest, StateRequest
from models.responses import (
    ErrorResponse, EvalResponse, ExcessResponse, KernelResponse, ObjectiveResponse
)

logger = logging.getLogger(__name__)

MAX_KERNEL_DIM = 256

router = APIRouter(
    prefix="/analysis",
    tags=["analysis"],
    responses={
        400: {"model": ErrorResponse, "description": "Invalid state or parameters"},
        500: {"model": ErrorResponse, "description": "Internal server error"}
    }
)

DOMAIN_ERRORS = (StateValidationError, DimensionMismatchError, DistributionError, QuadratureError)


@router.post(
    "/eval",
    response_model=EvalResponse,
    summary="Evaluate a state",
    description="Number distribution, phase distribution summary, H[m], R[phi] and the entropy excess"
)
async def evaluate(
    request: StateRequest,
    ctx: EvaluationContext = Depends(get_context)
):
    """Evaluate one state specification."""
    try:
        state = from_spec(request.state, ctx.tail_tol)
        kernel = default_kernel(state, request.kernel)
        result = await run_in_threadpool(evaluate_state, state, kernel, ctx.grid_for(request.grid_k), request.mu)
        logger.info(f"Evaluated {request.state.variant} state: X={result.x:.6f}")
        return EvalResponse(success=True, data=result)

    except DOMAIN_ERRORS as e:
        logger.warning(f"Rejected {request.state.variant} state: {e}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(e)
        )


@router.post(
    "/excess-finite",
    response_model=ExcessResponse,
    summary="Finite-dimensional entropy excess",
    description="X(A, B) = H(A) - R(B) for a pair of named projective measurements"
)
async def finite_excess(
    request: FiniteExcessRequest,
    ctx: EvaluationContext = Depends(get_context)
):
    """Entropy excess of a state for the requested basis pair."""
    try:
        state = from_spec(request.state, ctx.tail_tol)
        report = await run_in_threadpool(excess_finite, state, basis_pair(request.basis_a, request.basis_b, state.dim))
        return ExcessResponse(success=True, data=report)

    except DOMAIN_ERRORS as e:
        logger.warning(f"Finite excess rejected: {e}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(e)
        )


@router.get(
    "/su2-kernel",
    response_model=KernelResponse,
    summary="SU2 phase kernel",
    description="Damping weights G_kl of the atomic phase distribution"
)
async def get_su2_kernel(
    d: Annotated[int, Query(ge=2, le=MAX_KERNEL_DIM, description="Atomic dimension")] = 2
):
    """Return the SU2 kernel rows for dimension d."""
    kernel = su2_kernel(d)
    return KernelResponse(success=True, data=kernel.G.tolist())


@router.get(
    "/mu-objective",
    response_model=ObjectiveResponse,
    summary="H[m]/R[phi] of an atomic coherent state",
    description="Ratio whose minimum over pure states is the admissible mu; null when R[phi] vanishes"
)
async def get_mu_objective(
    alpha_p: Annotated[float, Query(ge=0.0, le=math.pi)] = math.pi / 2,
    beta_p: Annotated[float, Query(ge=0.0, lt=2 * math.pi)] = 0.0,
    d: Annotated[int, Query(ge=2, le=MAX_KERNEL_DIM)] = 2,
    ctx: EvaluationContext = Depends(get_context)
):
    """Ratio H[m]/R[phi] for |alpha', beta'> with the SU2 kernel."""
    try:
        state = make_atomic_coherent(alpha_p, beta_p, d)
        ratio = await run_in_threadpool(mu_objective, state, su2_kernel(d), ctx.grid_k, ctx.ratio_floor)
        if math.isinf(ratio):
            return ObjectiveResponse(success=True, data=None, message="R[phi] below the ratio floor")
        return ObjectiveResponse(success=True, data=ratio)

    except DOMAIN_ERRORS as e:
        logger.warning(f"mu objective rejected: {e}")
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=str(e)
        )
