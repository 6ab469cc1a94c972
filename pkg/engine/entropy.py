"""Shannon entropy, discrete knowledge and phase knowledge, all in bits."""

import logging
import math
from typing import Callable, Union

import numpy as np
from scipy.special import entr, rel_entr

from engine.errors import DistributionError, QuadratureError
from models.quantum import EntropyFunctional, EntropyValue, NumberDistribution, PhaseDistribution

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
LOG2_2PI = math.log2(2.0 * math.pi)
DENSITY_FLOOR = 1e-300
SUM_TOL = 1e-10
IDENTITY_TOL = 1e-9
REFINE_TOL = 1e-12
MAX_REFINED_K = 1 << 22


def _as_probabilities(p: Union[NumberDistribution, np.ndarray]) -> tuple:
    """Renormalized probability vector and the missing mass it was scaled by."""
    if isinstance(p, NumberDistribution):
        return p.normalized(), p.truncation_loss
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or np.any(arr < -1e-14):
        raise DistributionError("probabilities must be a 1-d vector of non-negative entries")
    arr = np.clip(arr, 0.0, None)
    total = float(np.sum(arr))
    if total <= 0.0 or total > 1.0 + SUM_TOL:
        raise DistributionError(f"probabilities sum to {total!r}")
    loss = max(0.0, 1.0 - total)
    return arr / total, loss


def entropy_bits(p: np.ndarray) -> float:
    """-sum p log2 p for an already normalized vector, with 0 log 0 = 0."""
    return float(np.sum(entr(p))) / LN2


def shannon_entropy(p: Union[NumberDistribution, np.ndarray]) -> EntropyValue:
    """Shannon entropy H = -sum p log2 p of the renormalized distribution."""
    probs, loss = _as_probabilities(p)
    return EntropyValue(
        bits=max(entropy_bits(probs), 0.0),
        functional=EntropyFunctional.H_DISCRETE,
        truncation_loss=loss,
    )


def knowledge_discrete(p: np.ndarray, d: int) -> EntropyValue:
    """Relative entropy to the uniform distribution, sum p log2(d p) = log2 d - H."""
    arr = np.asarray(p, dtype=np.float64)
    if arr.shape != (d,) or np.any(arr < -1e-14):
        raise DistributionError(f"expected {d} non-negative probabilities")
    arr = np.clip(arr, 0.0, None)
    if abs(float(np.sum(arr)) - 1.0) > SUM_TOL:
        raise DistributionError(f"probabilities sum to {float(np.sum(arr))!r}")
    bits = float(np.sum(rel_entr(arr, 1.0 / d))) / LN2
    return EntropyValue(
        bits=min(max(bits, 0.0), math.log2(d)),
        functional=EntropyFunctional.R_DISCRETE,
    )


def phase_knowledge_bits(density: np.ndarray, step: float) -> float:
    """Periodic trapezoid of P log2(2 pi P) for a normalized density."""
    dens = np.where(density > DENSITY_FLOOR, density, 0.0)
    # Periodic trapezoid on a closed grid reduces to step * sum.
    return step * float(np.sum(rel_entr(dens, 1.0 / (2.0 * math.pi)))) / LN2


def _node_integral(integrand: Callable[[np.ndarray], np.ndarray], density: np.ndarray) -> float:
    dens = np.where(density > DENSITY_FLOOR, density, 0.0)
    return 2.0 * math.pi * float(np.mean(integrand(dens))) / LN2


def refined_phase_integral(P: PhaseDistribution, integrand: Callable[[np.ndarray], np.ndarray]) -> float:
    """Integral of integrand(P) over one period, in bits, converged in the grid size.

    P log P is not band-limited where the density nearly vanishes, so the grid
    is doubled by spectral resampling until two successive values agree to
    REFINE_TOL.
    """
    n = P.K
    value = _node_integral(integrand, P.normalized())
    while n < MAX_REFINED_K:
        n *= 2
        finer = _node_integral(integrand, P.resampled(n))
        if abs(finer - value) <= REFINE_TOL:
            return finer
        value = finer
    logger.warning(f"Phase integral still moving at K={n}; returning the finest value")
    return value


def _phase_knowledge_integrand(dens: np.ndarray) -> np.ndarray:
    return rel_entr(dens, 1.0 / (2.0 * math.pi))


def knowledge_phase(P: PhaseDistribution) -> EntropyValue:
    """Entropic knowledge of phase, the integral of P log2(2 pi P) over one period."""
    bits = refined_phase_integral(P, _phase_knowledge_integrand)
    if bits < -IDENTITY_TOL:
        raise QuadratureError(f"phase knowledge {bits:.3e} is negative; quadrature failed")
    return EntropyValue(
        bits=max(bits, 0.0),
        functional=EntropyFunctional.R_PHASE,
        truncation_loss=P.truncation_loss,
    )


def differential_phase_entropy(P: PhaseDistribution) -> EntropyValue:
    """Differential entropy -integral P log2 P, checked against log2(2 pi) - R[P]."""
    bits = refined_phase_integral(P, entr)
    knowledge = knowledge_phase(P).bits
    gap = abs(bits - (LOG2_2PI - knowledge))
    if gap > IDENTITY_TOL:
        raise QuadratureError(f"differential entropy and phase knowledge disagree by {gap:.3e}")
    return EntropyValue(
        bits=bits,
        functional=EntropyFunctional.H_PHASE_DIFFERENTIAL,
        truncation_loss=P.truncation_loss,
    )
