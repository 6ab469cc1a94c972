"""Command-line front end: figure sweeps, inequality audits, mu searches and single-state evaluation.

Usage:
    python cli.py sweep-atomic --d 2 --out fig1.csv
    python cli.py sweep-oscillator --out fig2.csv
    python cli.py mu-search --d 2 4 --budget 100000 --out mu.json
    python cli.py verify --suite theorem1 --d 2 --samples 10000
    python cli.py eval --state '{"variant": "glauber", "alpha_re": 1.0}'

Exit codes: 0 success, 1 configuration or input error, 2 inequality violation.
"""

import argparse
import logging
import math
import sys
from typing import List, Optional

from config import settings
from engine.audits import audit_bialynicki, audit_mixed_mu, audit_number_phase, audit_theorem1
from engine.complementarity import QUADRATURE_TOL
from engine.distributions import default_kernel, number_distribution, phase_distribution
from engine.mu_search import mu_trend, search_mu
from engine.output import dump_json, write_csv, write_number_csv, write_phase_csv
from engine.states import from_spec, load_state_json, parse_spec
from engine.sweeps import evaluate_state, sweep_atomic, sweep_oscillator
from models.quantum import KernelKind
from models.requests import SweepConfig

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2

SUITES = ["theorem1", "eq6", "eq7", "eq8", "mixed_mu"]


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--grid-k", type=int, default=settings.grid_k, help="Phase quadrature grid size")
    parser.add_argument("--tail-tol", type=float, default=settings.tail_tol, help="Fock truncation tail tolerance")
    parser.add_argument("--seed", type=int, default=settings.seed)
    parser.add_argument("--out", default=None, help="Output file; stdout when omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="numphase", description=__doc__.splitlines()[0])
    parser.add_argument("--log-level", default=settings.log_level)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-atomic", help="H[m], R[phi] and excesses along the atomic coherent meridian")
    _common(p)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--alpha-start", type=float, default=0.0)
    p.add_argument("--alpha-stop", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=181)
    p.add_argument("--beta-p", type=float, default=0.0)
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], default=KernelKind.SU2.value)
    p.add_argument("--mu", type=float, default=settings.sweep_mu)
    p.add_argument("--workers", type=int, default=settings.workers)

    p = sub.add_parser("sweep-oscillator", help="H[m], R[phi] and X along real Glauber amplitudes")
    _common(p)
    p.add_argument("--alpha-start", type=float, default=0.0)
    p.add_argument("--alpha-stop", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=61)
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], default=KernelKind.CANONICAL.value)
    p.add_argument("--workers", type=int, default=settings.workers)

    p = sub.add_parser("mu-search", help="Largest admissible mu per dimension")
    _common(p)
    p.add_argument("--d", type=int, nargs="+", default=[2], help="One dimension, or several for a trend report")
    p.add_argument("--budget", type=int, default=settings.mu_budget)
    p.add_argument("--starts", type=int, default=settings.mu_starts)
    p.add_argument("--audit-samples", type=int, default=settings.mu_audit_samples)
    p.add_argument("--workers", type=int, default=settings.workers)

    p = sub.add_parser("verify", help="Randomized audit of one inequality")
    _common(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--d", type=int, default=None, help="Atomic dimension; oscillator ensemble for eq7/eq8 when omitted")
    p.add_argument("--mu", type=float, default=None)

    p = sub.add_parser("eval", help="Evaluate one state")
    _common(p)
    p.add_argument("--state", default=None, help="JSON state document or path to one")
    p.add_argument("--variant", choices=["fock", "glauber", "atomic_coherent", "equatorial", "random_pure"])
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.0, help="Glauber amplitude, real part")
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--alpha-p", type=float, default=0.0)
    p.add_argument("--beta-p", type=float, default=0.0)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--kernel", choices=[k.value for k in KernelKind], default=None)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--number-csv", default=None, help="Also write p(m) here")
    p.add_argument("--phase-csv", default=None, help="Also write P(theta) here")
    return parser


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_sweep_atomic(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        family="atomic_coherent",
        d=args.d,
        beta_p=args.beta_p,
        start=args.alpha_start,
        stop=args.alpha_stop,
        steps=args.steps,
        kernel=args.kernel,
        mu=args.mu,
        grid_k=args.grid_k,
        tail_tol=args.tail_tol,
        output_path=args.out,
    )
    result = sweep_atomic(cfg, workers=args.workers)
    _emit(write_csv(result.columns, result.rows, cfg.output_path), cfg.output_path)
    if result.flags["min_X_mu"] < -QUADRATURE_TOL:
        logger.error(f"X_mu drops to {result.flags['min_X_mu']:.3e} at mu={cfg.mu}")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sweep_oscillator(args: argparse.Namespace) -> int:
    cfg = SweepConfig(
        family="glauber",
        start=args.alpha_start,
        stop=args.alpha_stop,
        steps=args.steps,
        kernel=args.kernel,
        grid_k=args.grid_k,
        tail_tol=args.tail_tol,
        output_path=args.out,
    )
    result = sweep_oscillator(cfg, workers=args.workers)
    _emit(write_csv(result.columns, result.rows, cfg.output_path), cfg.output_path)
    logger.info(f"Monotone: H_m {bool(result.flags['H_m_increasing'])}, R_phi {bool(result.flags['R_phi_increasing'])}")
    if result.flags["min_X"] < -QUADRATURE_TOL:
        logger.error(f"X drops to {result.flags['min_X']:.3e}")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_mu_search(args: argparse.Namespace) -> int:
    options = dict(
        grid_k=args.grid_k,
        starts=args.starts,
        audit_samples=args.audit_samples,
        workers=args.workers,
        ratio_floor=settings.ratio_floor,
        sweep_shape=(settings.mu_sweep_alpha_steps, settings.mu_sweep_beta_steps),
    )
    if len(args.d) == 1:
        report = search_mu(args.d[0], budget=args.budget, seed=args.seed, **options)
    else:
        report = mu_trend(args.d, budget=args.budget, seed=args.seed, **options)
    _emit(dump_json(report, args.out), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise ValueError("--samples must be at least 1")
    if args.suite == "theorem1":
        summary = audit_theorem1(args.d or 2, args.samples, args.seed)
    elif args.suite == "eq6":
        summary = audit_bialynicki(args.samples, args.seed, args.grid_k, args.tail_tol)
    elif args.suite == "mixed_mu":
        summary = audit_mixed_mu(args.samples, args.seed, args.mu or settings.mixed_mu, args.grid_k)
    else:
        mu = args.mu if args.mu is not None else (1.0 if args.suite == "eq7" else settings.sweep_mu)
        summary = audit_number_phase(args.samples, args.seed, mu, args.d, args.grid_k, args.tail_tol)
    _emit(dump_json(summary, args.out), args.out)
    return EXIT_OK if summary.passed else EXIT_VIOLATION


def _state_document(args: argparse.Namespace) -> dict:
    if args.variant == "fock":
        return {"variant": "fock", "m": args.m, "dim": args.dim}
    if args.variant == "glauber":
        return {"variant": "glauber", "alpha_re": args.alpha, "alpha_im": args.alpha_im, "cutoff": args.cutoff}
    if args.variant == "atomic_coherent":
        return {"variant": "atomic_coherent", "alpha_p": args.alpha_p, "beta_p": args.beta_p, "d": args.d}
    if args.variant == "equatorial":
        return {"variant": "equatorial", "phi0": args.phi0}
    return {"variant": "random_pure", "seed": args.seed, "d": args.d}


def cmd_eval(args: argparse.Namespace) -> int:
    if args.state is not None:
        state = load_state_json(args.state, args.tail_tol)
    elif args.variant is not None:
        state = from_spec(parse_spec(_state_document(args)), args.tail_tol)
    else:
        raise ValueError("eval needs --state or --variant")
    kernel = default_kernel(state, KernelKind(args.kernel) if args.kernel else None)
    result = evaluate_state(state, kernel, args.grid_k, args.mu)
    if args.number_csv:
        write_number_csv(number_distribution(state), args.number_csv)
    if args.phase_csv:
        write_phase_csv(phase_distribution(state, kernel, args.grid_k), args.phase_csv)
    _emit(dump_json(result, args.out), args.out)
    return EXIT_OK


COMMANDS = {
    "sweep-atomic": cmd_sweep_atomic,
    "sweep-oscillator": cmd_sweep_oscillator,
    "mu-search": cmd_mu_search,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    try:
        return COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
