"""Benchmark command line: run and compare the solvers under a shared
protocol, probe the counterexample problems, and report curvature bounds.

Exit codes: 0 on success, 1 on solver or input errors, 2 on usage errors.
"""

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .baselines import PenaltyConfig, PgdConfig, pgd_solve, penalty_solve
from .core import SolverConfig, TerminalReason, TraceRecorder
from .counterexample import failure_problem, pw_fw_run, success_problem
from .curvature import empirical_curvature
from .frank_wolfe import fw_solve
from .io import gaussian_kernel, read_csv_dataset, write_factor, write_trace
from .synthetic import initial_factor, planted_instance

ALGOS = ("fw", "pgd", "penalty")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _curvature_arg(text):
    if text == "auto":
        return "auto"
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("curvature must be positive or 'auto'")
    return value


def _x0_arg(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected x0 as 'a,b'")
    return np.array([float(p) for p in parts])


def _add_instance_args(parser):
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV dataset; rows are instances")
    src.add_argument("--planted", nargs=2, type=_positive_int, metavar=("N", "K"),
                     help="synthetic instance P = W* W*^T with known optimum 0")
    parser.add_argument("--has-header", action="store_true",
                        help="skip the first CSV row")
    parser.add_argument("--labels", type=int, default=None, metavar="COL",
                        help="label column index; sets k to the class count")
    parser.add_argument("--k", type=_positive_int, default=None,
                        help="number of clusters (required without labels)")
    parser.add_argument("--bandwidth", type=float, default=1.0,
                        help="Gaussian kernel length scale (default 1.0)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the instance and the shared initial point")


def _add_run_args(parser):
    parser.add_argument("--epsilon", type=float, default=1e-6,
                        help="stationarity tolerance (default 1e-6)")
    parser.add_argument("--max-iters", type=_positive_int, default=None,
                        help="iteration cap (default 100000; outer cap for penalty)")
    parser.add_argument("--curvature", type=_curvature_arg, default="auto",
                        help="step constant for fw: a float or 'auto'")
    parser.add_argument("--stall-tol", type=float, default=None,
                        help="stop when consecutive objectives differ by less")
    parser.add_argument("--paper-stop", action="store_true",
                        help="preset: stall tolerance 1e-3 and iteration cap 50")
    parser.add_argument("--no-timing", action="store_true",
                        help="write zero timing fields (for byte-exact comparisons)")
    parser.add_argument("--init", choices=("dirichlet", "barycenter", "vertex"),
                        default="dirichlet", help="shared initial factor")
    parser.add_argument("--pgd-fw-gap", action="store_true",
                        help="record the linearization gap on pgd iterates "
                             "instead of the projected-gradient residual")


def _load_instance(args, parser):
    """Build (P, k) from either --planted or --input."""
    if args.planted is not None:
        if args.k is not None or args.labels is not None:
            parser.error("--planted already fixes k; drop --k/--labels")
        n, k = args.planted
        if k < 2:
            parser.error("planted k must be at least 2")
        P, _ = planted_instance(n, k, seed=args.seed)
        return P, k
    dataset = read_csv_dataset(args.input, has_header=args.has_header,
                               label_column=args.labels)
    if args.labels is not None:
        if args.k is not None:
            parser.error("--k conflicts with --labels (k comes from the classes)")
        k = dataset.n_classes
    elif args.k is not None:
        k = args.k
    else:
        parser.error("--k is required when the dataset has no label column")
    if k < 2:
        parser.error("need at least 2 clusters")
    return gaussian_kernel(dataset, bandwidth=args.bandwidth), k


def _resolve_stops(args, parser):
    """Apply --paper-stop, rejecting conflicting explicit flags."""
    if args.paper_stop:
        if args.max_iters is not None or args.stall_tol is not None:
            parser.error("--paper-stop conflicts with --max-iters/--stall-tol")
        return 1e-3, 50
    stall = args.stall_tol if args.stall_tol is not None else 0.0
    max_iters = args.max_iters if args.max_iters is not None else 100_000
    return stall, max_iters


def _run_algo(algo, P, W0, args, stall, max_iters):
    """Run one solver; returns (W, trace, extra_summary_fields)."""
    start = time.perf_counter()
    if algo == "fw":
        config = SolverConfig(epsilon=args.epsilon, max_iterations=max_iters,
                              curvature_C=args.curvature,
                              objective_stall_tol=stall)
        W, trace, cert = fw_solve(P, W0, config)
        extra = {"final_stationarity": float(trace.fw_gap[-1]),
                 "certified": cert.certified,
                 "certificate_violations": len(cert.violations)}
    elif algo == "pgd":
        config = PgdConfig(epsilon=args.epsilon, max_iterations=max_iters,
                           stall_tol=stall)
        gap_kind = "fw" if args.pgd_fw_gap else "residual"
        W, trace = pgd_solve(P, W0, config, gap_kind=gap_kind)
        extra = {"final_stationarity": float(trace.fw_gap[-1])}
    elif algo == "penalty":
        config = PenaltyConfig(stall_tol=stall if stall > 0 else 1e-3,
                               max_outer=min(max_iters, 100_000))
        W, trace = penalty_solve(P, W0, config)
        extra = {"final_stationarity": None}
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    extra["wall_seconds"] = 0.0 if args.no_timing else time.perf_counter() - start
    return W, trace, extra


def _summary(algo, trace, extra):
    return {
        "algo": algo,
        "final_objective": float(trace.objective[-1]),
        "iterations": int(trace.t[-1]),
        "terminal_reason": trace.terminal_reason.value,
        **extra,
    }


def cmd_solve(args, parser):
    P, k = _load_instance(args, parser)
    stall, max_iters = _resolve_stops(args, parser)
    W0 = initial_factor(P.n, k, seed=args.seed, kind=args.init)
    W, trace, extra = _run_algo(args.algo, P, W0, args, stall, max_iters)
    write_trace(trace, args.out, include_timing=not args.no_timing)
    if args.w_out:
        write_factor(W, args.w_out)
    print(json.dumps(_summary(args.algo, trace, extra)))
    return 0


def cmd_compare(args, parser):
    algos = args.algos.split(",")
    for algo in algos:
        if algo not in ALGOS:
            parser.error(f"unknown algorithm {algo!r}; choose from {','.join(ALGOS)}")
    P, k = _load_instance(args, parser)
    stall, max_iters = _resolve_stops(args, parser)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    W0 = initial_factor(P.n, k, seed=args.seed, kind=args.init)

    summaries = {}
    for algo in algos:
        W, trace, extra = _run_algo(algo, P, W0.copy(), args, stall, max_iters)
        write_trace(trace, out_dir / f"{algo}.trace.jsonl",
                    include_timing=not args.no_timing)
        write_factor(W, out_dir / f"{algo}.factor.csv")
        summaries[algo] = _summary(algo, trace, extra)

    best = min(summaries, key=lambda a: summaries[a]["final_objective"])
    report = {"algorithms": summaries, "lowest_objective": best}
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(report, fh, indent=2)
    print(json.dumps(report))
    return 0


def cmd_counterexample(args, parser):
    problem = failure_problem() if args.variant == "failure" else success_problem()
    trajectory = pw_fw_run(problem, args.x0, steps=args.steps, T=args.T)
    if args.out:
        recorder = TraceRecorder(with_gap=False)
        gammas = np.append(trajectory.gammas, 0.0)
        for i in range(len(trajectory.points)):
            recorder.append(i, float(trajectory.objectives[i]), None,
                            float(gammas[i]), 0.0)
        write_trace(recorder.finish(TerminalReason.MAX_ITERATIONS), args.out,
                    include_timing=False)
    final = trajectory.points[-1]
    print(json.dumps({
        "variant": args.variant,
        "steps": args.steps,
        "T": args.T,
        "final_point": [float(final[0]), float(final[1])],
        "final_objective": float(trajectory.objectives[-1]),
    }))
    return 0


def cmd_curvature(args, parser):
    P, k = _load_instance(args, parser)
    report = empirical_curvature(P, k, samples=args.samples, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(report.to_json() + "\n")
    print(report.to_json())
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="simplexnmf",
        description="Solvers and diagnostics for symmetric NMF with "
                    "row-stochastic factors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run one solver and write its trace")
    p_solve.add_argument("--algo", choices=ALGOS, required=True)
    _add_instance_args(p_solve)
    _add_run_args(p_solve)
    p_solve.add_argument("--out", required=True, help="trace output (JSON lines)")
    p_solve.add_argument("--w-out", default=None, help="factor matrix output (CSV)")
    p_solve.set_defaults(func=cmd_solve)

    p_cmp = sub.add_parser("compare", help="run several solvers from a shared start")
    p_cmp.add_argument("--algos", default="fw,pgd,penalty",
                       help="comma-separated subset of fw,pgd,penalty")
    _add_instance_args(p_cmp)
    _add_run_args(p_cmp)
    p_cmp.add_argument("--out-dir", required=True)
    p_cmp.set_defaults(func=cmd_compare)

    p_ce = sub.add_parser("counterexample",
                          help="run the piecewise-linear triangle problems")
    p_ce.add_argument("--variant", choices=("failure", "success"), required=True)
    p_ce.add_argument("--x0", type=_x0_arg, default=np.array([0.5, 1.5]))
    p_ce.add_argument("--steps", choices=("diminishing", "linesearch"),
                      default="diminishing")
    p_ce.add_argument("--T", type=_positive_int, default=1000)
    p_ce.add_argument("--out", default=None, help="trajectory output (JSON lines)")
    p_ce.set_defaults(func=cmd_counterexample)

    p_curv = sub.add_parser("curvature", help="curvature bounds and sampling report")
    _add_instance_args(p_curv)
    p_curv.add_argument("--samples", type=_positive_int, default=1000)
    p_curv.add_argument("--out", default=None, help="report output (JSON)")
    p_curv.set_defaults(func=cmd_curvature)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
