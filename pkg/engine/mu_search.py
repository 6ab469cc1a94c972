"""Search for the largest mu with H[m] - mu R[phi] >= 0 over pure states of dimension d.

Near number states both H[m] and R[phi] vanish, but H decays like x log(1/x)
while R decays like x, so the ratio H/R diverges there and the infimum is
attained in the interior of state space. States with R[phi] below the ratio
floor are excluded and scored +inf.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from engine.complementarity import QUADRATURE_TOL
from engine.distributions import (
    DEFAULT_GRID_K, number_distribution, phase_density_from_amplitudes,
    phase_distribution, resolve_grid, su2_kernel
)
from engine.entropy import entropy_bits, knowledge_phase, phase_knowledge_bits, shannon_entropy
from engine.errors import DimensionMismatchError, StateValidationError
from engine.states import atomic_coherent_amplitudes, haar_vector
from models.quantum import KernelKind, PhaseKernel, QuantumState
from models.responses import MuSearchReport, SearchStage, TrendPoint, TrendReport

logger = logging.getLogger(__name__)

RATIO_FLOOR = 1e-9
MIN_BUDGET = 1000
SWEEP_SHAPE = (181, 64)
DEFAULT_STARTS = 64
SEEDED_STARTS = 8
START_STEP = 0.25
POLISH_STEP = 1e-2
POLISH_ROUNDS = 10
DISPLACEMENT_TOL = 1e-8
GUARD_RADIUS = 1e-4
GUARD_SAMPLES = 64


def mu_objective(
    state: QuantumState,
    kernel: PhaseKernel,
    K: int = DEFAULT_GRID_K,
    ratio_floor: float = RATIO_FLOOR,
) -> float:
    """H[m]/R[phi] for a pure state; +inf when R[phi] is below the floor."""
    if state.purity < 1.0 - 2.0 * state.truncation_loss - 1e-10:
        raise StateValidationError("the mu objective is defined on pure states")
    h = shannon_entropy(number_distribution(state)).bits
    r = knowledge_phase(phase_distribution(state, kernel, K)).bits
    if r < ratio_floor:
        return math.inf
    return h / r


def chart_amplitudes(params: np.ndarray, d: int) -> np.ndarray:
    """Unit vector from d-1 hyperspherical angles followed by d-1 relative phases."""
    angles = params[: d - 1]
    phases = params[d - 1:]
    sines = np.concatenate(([1.0], np.cumprod(np.sin(angles))))
    cosines = np.concatenate((np.cos(angles), [1.0]))
    return sines * cosines * np.exp(1j * np.concatenate(([0.0], phases)))


def chart_params(psi: np.ndarray) -> np.ndarray:
    """Inverse of chart_amplitudes, up to a global phase."""
    d = psi.size
    moduli = np.abs(psi)
    tails = np.sqrt(np.cumsum((moduli ** 2)[::-1])[::-1])
    angles = np.arctan2(tails[1:], moduli[:-1])
    reference = np.angle(psi[0]) if moduli[0] > 0.0 else 0.0
    phases = np.angle(psi[1:]) - reference
    return np.concatenate((angles, phases))[: 2 * (d - 1)]


class _RatioObjective:
    """Counts evaluations and keeps the best ratio seen; owned by a single task."""

    def __init__(self, d: int, G: np.ndarray, K: int, ratio_floor: float):
        self.d = d
        self.G = G
        self.K = K
        self.step = 2.0 * math.pi / K
        self.ratio_floor = ratio_floor
        self.evaluations = 0
        self.best_ratio = math.inf
        self.best_params: Optional[np.ndarray] = None

    def ratio(self, psi: np.ndarray) -> float:
        self.evaluations += 1
        p = np.abs(psi) ** 2
        p = p / p.sum()
        r = phase_knowledge_bits(phase_density_from_amplitudes(psi, self.G, self.K), self.step)
        if r < self.ratio_floor:
            return math.inf
        return entropy_bits(p) / r

    def __call__(self, params: np.ndarray) -> float:
        value = self.ratio(chart_amplitudes(params, self.d))
        if value < self.best_ratio:
            self.best_ratio = value
            self.best_params = np.array(params, dtype=np.float64)
        return value


def _simplex(x0: np.ndarray, step: float) -> np.ndarray:
    return np.vstack([x0, x0 + step * np.eye(x0.size)])


def _sweep_shape(budget: int, full: Tuple[int, int] = SWEEP_SHAPE) -> Tuple[int, int]:
    """Full alpha' x beta' grid when it fits in half the budget, else a coarsened one."""
    n_alpha, n_beta = full
    allowance = budget // 2
    if n_alpha * n_beta <= allowance:
        return n_alpha, n_beta
    scale = math.sqrt(allowance / (n_alpha * n_beta))
    return max(3, int(n_alpha * scale)), max(2, int(n_beta * scale))


def _coherent_sweep(objective: _RatioObjective, shape: Tuple[int, int], keep: int) -> List[np.ndarray]:
    """Evaluate the atomic coherent family on a grid; return chart points of the best few."""
    n_alpha, n_beta = shape
    scored = []
    for alpha_p in np.linspace(0.0, math.pi, n_alpha):
        for beta_p in np.linspace(0.0, 2.0 * math.pi, n_beta, endpoint=False):
            params = chart_params(atomic_coherent_amplitudes(alpha_p, beta_p, objective.d))
            scored.append((objective(params), len(scored), params))
    scored.sort(key=lambda item: (item[0], item[1]))
    return [params for ratio, _, params in scored[:keep] if math.isfinite(ratio)]


def _refine(
    d: int,
    G: np.ndarray,
    K: int,
    ratio_floor: float,
    x0: np.ndarray,
    maxfev: int,
) -> _RatioObjective:
    """One simplex descent from x0 with its own objective instance."""
    objective = _RatioObjective(d, G, K, ratio_floor)
    if maxfev < 1:
        return objective
    minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": maxfev,
            "xatol": DISPLACEMENT_TOL,
            "fatol": 1e-12,
            "adaptive": True,
            "initial_simplex": _simplex(x0, START_STEP),
        },
    )
    return objective


def search_mu(
    d: int,
    kernel: Optional[PhaseKernel] = None,
    budget: int = 100_000,
    seed: int = 0,
    grid_k: int = DEFAULT_GRID_K,
    starts: int = DEFAULT_STARTS,
    workers: int = 1,
    audit_samples: int = 100_000,
    ratio_floor: float = RATIO_FLOOR,
    sweep_shape: Tuple[int, int] = SWEEP_SHAPE,
) -> MuSearchReport:
    """Estimate the largest admissible mu at dimension d.

    Stage (i) sweeps the atomic coherent family, stage (ii) runs multi-start
    Nelder-Mead over the full pure-state chart, and stage (iii) polishes the
    incumbent with shrinking simplices until the parameter displacement falls
    below 1e-8. Every start draws from its own seed, so the report depends only
    on (d, budget, seed) and not on scheduling.

    Args:
        d: Hilbert-space dimension (>= 2).
        kernel: Phase kernel; the SU2 kernel of dimension d when omitted.
        budget: Objective evaluations for the three stages (>= 1000).
        seed: Master seed for start points and the continuity guard.
        grid_k: Phase quadrature grid size.
        starts: Number of stage (ii) starts.
        workers: Threads used for stage (ii).
        audit_samples: Fresh Haar-random states used to cross-check the estimate.
        ratio_floor: R[phi] below this is treated as degenerate.
        sweep_shape: Full (alpha', beta') grid of stage (i), coarsened to fit the budget.

    Returns:
        MuSearchReport with the estimate, stage trace and incumbent state.
    """
    if d < 2:
        raise DimensionMismatchError(f"mu search needs d >= 2, got {d}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    if budget < MIN_BUDGET:
        raise ValueError(f"budget must be at least {MIN_BUDGET}, got {budget}")
    kernel = kernel if kernel is not None else su2_kernel(d)
    if kernel.dim != d:
        raise DimensionMismatchError(f"kernel dim {kernel.dim} != {d}")
    K = resolve_grid(grid_k, d)
    G = np.asarray(kernel.G)
    stages: List[SearchStage] = []

    # Stage (i): coherent-family sweep.
    sweep = _RatioObjective(d, G, K, ratio_floor)
    shape = _sweep_shape(budget, sweep_shape)
    seeded = _coherent_sweep(sweep, shape, SEEDED_STARTS)
    stages.append(SearchStage(method=f"coherent-sweep {shape[0]}x{shape[1]}", iterations=sweep.evaluations,
                              best_ratio=sweep.best_ratio))
    logger.info(f"d={d} stage (i): {sweep.evaluations} evaluations, best ratio {sweep.best_ratio:.6f}")
    best_ratio, best_params = sweep.best_ratio, sweep.best_params
    used = sweep.evaluations

    # Stage (ii): multi-start simplex descent over the full chart.
    remaining = budget - used
    polish_reserve = min(max(remaining // 10, 50), remaining // 2)
    per_start = max((remaining - polish_reserve) // max(starts, 1), 0)
    start_points = []
    for i in range(starts):
        if i < len(seeded):
            start_points.append(seeded[i])
        else:
            rng = np.random.default_rng([seed, i])
            start_points.append(chart_params(haar_vector(rng, d)))

    def run_start(i: int) -> _RatioObjective:
        return _refine(d, G, K, ratio_floor, start_points[i], per_start)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_start, range(starts)))
    else:
        results = [run_start(i) for i in range(starts)]
    stage_evals = sum(r.evaluations for r in results)
    stage_best = math.inf
    for r in results:
        if r.best_ratio < stage_best:
            stage_best = r.best_ratio
        if r.best_ratio < best_ratio:
            best_ratio, best_params = r.best_ratio, r.best_params
    used += stage_evals
    stages.append(SearchStage(method="multistart-nelder-mead", iterations=stage_evals, best_ratio=stage_best))
    logger.info(f"d={d} stage (ii): {starts} starts, {stage_evals} evaluations, best ratio {stage_best:.6f}")

    # Stage (iii): polish with shrinking simplices.
    converged = False
    polish = _RatioObjective(d, G, K, ratio_floor)
    polish.best_ratio, polish.best_params = best_ratio, best_params
    step = POLISH_STEP
    for _ in range(POLISH_ROUNDS):
        left = budget - used - polish.evaluations
        if left <= best_params.size + 1:
            break
        incumbent = polish.best_params.copy()
        before = polish.best_ratio
        result = minimize(
            polish,
            incumbent,
            method="Nelder-Mead",
            options={
                "maxfev": left,
                "xatol": DISPLACEMENT_TOL,
                "fatol": 1e-14,
                "adaptive": True,
                "initial_simplex": _simplex(incumbent, step),
            },
        )
        displacement = float(np.linalg.norm(polish.best_params - incumbent))
        # Moves along directions the ratio is flat in only shave round-off.
        if result.success and (displacement < DISPLACEMENT_TOL or before - polish.best_ratio < 1e-12):
            converged = True
            break
        step *= 0.1
    used += polish.evaluations
    best_ratio, best_params = polish.best_ratio, polish.best_params
    stages.append(SearchStage(method="polish-nelder-mead", iterations=polish.evaluations, best_ratio=best_ratio))
    if not converged:
        logger.warning(f"d={d} stage (iii) did not converge within the budget")

    # Continuity guard: small perturbations must not uncover a much lower ratio.
    guard = _RatioObjective(d, G, K, ratio_floor)
    rng = np.random.default_rng([seed, starts, d])
    gain = 0.0
    for _ in range(GUARD_SAMPLES):
        direction = rng.standard_normal(best_params.size)
        nearby = best_params + GUARD_RADIUS * direction / np.linalg.norm(direction)
        gain = max(gain, best_ratio - guard(nearby))
    if guard.best_ratio < best_ratio:
        best_ratio, best_params = guard.best_ratio, guard.best_params
    ratio_samples = used + guard.evaluations

    # Independent cross-check on fresh Haar-random states; a lower ratio found
    # here replaces the incumbent.
    audit_min = None
    audit_improved = False
    if audit_samples > 0:
        auditor = _RatioObjective(d, G, K, ratio_floor)
        audit_rng = np.random.default_rng([seed, d, audit_samples])
        for _ in range(audit_samples):
            auditor(chart_params(haar_vector(audit_rng, d)))
        audit_min = auditor.best_ratio
        if audit_min < best_ratio:
            logger.warning(f"d={d} audit found ratio {audit_min:.6f} below the search incumbent {best_ratio:.6f}")
            best_ratio, best_params = audit_min, auditor.best_params
            audit_improved = True

    psi = chart_amplitudes(best_params, d)
    kind = kernel.kind.value
    note = "SU2 kernel assumed for atomic dimension d" if kind == KernelKind.SU2.value else f"{kind} kernel"
    logger.info(f"d={d} mu estimate {best_ratio:.6f} after {ratio_samples} ratio evaluations")
    return MuSearchReport(
        d=d,
        kernel=kind,
        mu_estimate=best_ratio,
        certified_floor=best_ratio - QUADRATURE_TOL,
        tolerance=QUADRATURE_TOL,
        ratio_samples=ratio_samples,
        budget=budget,
        seed=seed,
        converged=converged,
        stages=stages,
        argmin_params=best_params.tolist(),
        argmin_re=psi.real.tolist(),
        argmin_im=psi.imag.tolist(),
        neighborhood_gain=gain,
        audit_min_ratio=audit_min,
        audit_improved=audit_improved,
        note=note,
    )


def mu_trend(
    d_list: Sequence[int],
    budget: int = 100_000,
    seed: int = 0,
    **search_kwargs,
) -> TrendReport:
    """Run search_mu for each dimension; whether mu decreases is reported, not asserted."""
    if list(d_list) != sorted(set(d_list)):
        raise ValueError("d_list must be strictly ascending")
    reports = [search_mu(d, budget=budget, seed=seed, **search_kwargs) for d in d_list]
    estimates = [r.mu_estimate for r in reports]
    monotone = all(b < a for a, b in zip(estimates, estimates[1:]))
    if not monotone:
        logger.warning(f"mu estimates are not strictly decreasing: {estimates}")
    return TrendReport(
        points=[TrendPoint(d=r.d, mu_estimate=r.mu_estimate) for r in reports],
        monotone_decreasing=monotone,
        reports=reports,
    )
