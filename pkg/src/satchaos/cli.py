"""Command-line driver: solve, trace, verify and sweep.

Exit codes are fixed for CI use: 0 success, 1 input error, 2 guard refusal,
3 verification findings. Reports are JSON with sorted keys; traces and
sweeps are CSV. With --deterministic the wall-clock timings are dropped so
identical flags (and seed) give byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .amplifier import LogisticParams, amplify_detect, snap_dyadic, sweep_crossing_bounds
from .circuit import run as circuit_run, sat_decision_exact
from .config import (
    DEFAULT_LOGISTIC_A,
    DEFAULT_MAX_ENUM_VARS,
    DEFAULT_MAX_QUBITS,
    DEFAULT_THRESHOLD,
    GuardExceeded,
)
from .gqtm.program import run_sat_gqtm
from .sat import DimacsError, count_models, parse_dimacs
from .verify import DEFAULT_SEED, SUITES

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GUARD = 2
EXIT_FINDINGS = 3


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    try:
        bounds = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if bounds[0] > bounds[1] or bounds[0] < 1:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return bounds


def _add_run_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("path", help="DIMACS CNF file")
    sub.add_argument("--backend", choices=("circuit", "gqtm"), default="circuit")
    sub.add_argument("--a", type=float, default=DEFAULT_LOGISTIC_A,
                     help="logistic parameter (default %(default)s)")
    sub.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                     help="detection threshold (default %(default)s)")
    sub.add_argument("--max-qubits", type=int, default=DEFAULT_MAX_QUBITS,
                     help="refuse circuits beyond this register size")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--deterministic", action="store_true",
                     help="omit timings so identical flags give identical bytes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satchaos",
        description="Chaos-amplified SAT: circuit and machine backends, "
                    "logistic detection, verification suites.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="decide one instance, emit a JSON report")
    _add_run_flags(solve)
    solve.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")

    trace = commands.add_parser("trace", help="emit the amplifier trace as CSV")
    _add_run_flags(trace)
    trace.add_argument("--csv", metavar="PATH", help="write the trace here instead of stdout")

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--count", type=int, default=100,
                        help="random instances for the oracle suite")
    verify.add_argument("--max-n", type=int, default=10,
                        help="largest variable count for random instances")
    verify.add_argument("--n", type=_parse_range, default=(2, 40), metavar="LO..HI",
                        help="variable range for the bounds suite")
    verify.add_argument("--json", metavar="PATH")
    verify.add_argument("--deterministic", action="store_true")

    sweep = commands.add_parser("sweep", help="crossing-index sweep as CSV")
    sweep.add_argument("--n", type=_parse_range, default=(2, 40), metavar="LO..HI")
    sweep.add_argument("--r", default="1",
                       help="comma-separated seeds r for x0 = r/2^n (default 1)")
    sweep.add_argument("--a", type=float, default=DEFAULT_LOGISTIC_A)
    sweep.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    sweep.add_argument("--csv", metavar="PATH")
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_instance(path: str):
    return parse_dimacs(Path(path).read_text())


def _run_backend(inst, args):
    """Dispatch to a backend; returns (report fields, snapped q², timings)."""
    params = LogisticParams(args.a, args.threshold)
    timings: dict[str, float] = {}
    if args.backend == "circuit":
        t0 = time.perf_counter()
        result = circuit_run(inst, max_qubits=args.max_qubits)
        timings["run_s"] = time.perf_counter() - t0
        q_squared, _ = snap_dyadic(result.q_squared, inst.num_vars)
        t0 = time.perf_counter()
        trace = amplify_detect(q_squared, inst.num_vars, params)
        timings["amplify_s"] = time.perf_counter() - t0
        lay = result.layout
        extra = {"gate_counts": result.gate_counts, "machine": None}
        decision = trace.decision
    else:
        t0 = time.perf_counter()
        machine_run = run_sat_gqtm(inst, params)
        timings["run_s"] = time.perf_counter() - t0
        timings["amplify_s"] = 0.0  # the machine loop amplifies inline
        q_squared = machine_run.q_squared
        trace = machine_run.trace
        from .circuit import layout as layout_fn

        lay = layout_fn(inst)
        extra = {
            "gate_counts": None,
            "machine": {
                "branch_count": machine_run.branch_count,
                "unitary_steps": machine_run.unitary_steps,
            },
        }
        decision = machine_run.decision
    layout_echo = {
        "s": list(lay.s),
        "s_f": lay.s_f,
        "mu": lay.mu,
        "single_clause": lay.single_clause,
        "total_qubits": lay.total_qubits,
    }
    return decision, q_squared, trace, layout_echo, extra, params, timings


def cmd_solve(args) -> int:
    inst = _load_instance(args.path)
    t0 = time.perf_counter()
    decision, q_squared, trace, layout_echo, extra, params, timings = _run_backend(inst, args)
    timings["total_s"] = time.perf_counter() - t0
    r_oracle = (
        count_models(inst) if inst.num_vars <= DEFAULT_MAX_ENUM_VARS else None
    )
    bounds = trace.bounds
    report = {
        "n": inst.num_vars,
        "m": inst.num_clauses,
        "backend": args.backend,
        "decision": decision,
        "q_squared": q_squared,
        "r_oracle": r_oracle,
        "layout": layout_echo,
        "amplifier": {
            "a": params.a,
            "threshold": params.threshold,
            "k_star": trace.first_crossing,
            "k_low": None if bounds is None else bounds[0],
            "k_high": None if bounds is None else bounds[1],
            "iterations": len(trace.x) - 1,
            "decision": trace.decision,
        },
        "warnings": list(inst.warnings),
        "timings": None if args.deterministic else timings,
        **extra,
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.json)
    return EXIT_OK


def cmd_trace(args) -> int:
    inst = _load_instance(args.path)
    _, _, trace, _, _, _, _ = _run_backend(inst, args)
    _emit(trace.to_csv(), args.csv)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        if name == "gates":
            results.append(SUITES[name](seed=args.seed))
        elif name == "bounds":
            results.append(SUITES[name](n_lo=args.n[0], n_hi=args.n[1]))
        elif name == "oracle":
            results.append(SUITES[name](count=args.count, max_n=args.max_n,
                                        seed=args.seed))
        else:
            results.append(SUITES[name](seed=args.seed))
    report = {
        "ok": all(r.ok for r in results),
        "suites": [
            {
                "suite": r.suite,
                "ok": r.ok,
                "checks": r.checks,
                "findings": list(r.findings),
                "warnings": list(r.warnings),
                "seed": r.seed,
            }
            for r in results
        ],
    }
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    for r in results:
        print(r.summary())
        for finding in r.findings:
            print(f"  FINDING: {finding}")
        for warning in r.warnings:
            print(f"  warning: {warning}")
    return EXIT_OK if report["ok"] else EXIT_FINDINGS


def cmd_sweep(args) -> int:
    try:
        r_values = tuple(int(tok) for tok in args.r.split(","))
    except ValueError:
        print(f"error: --r expects comma-separated integers, got {args.r!r}",
              file=sys.stderr)
        return EXIT_INPUT
    if any(r < 1 for r in r_values):
        print("error: --r seeds must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    params = LogisticParams(args.a, args.threshold)
    rows = sweep_crossing_bounds(range(args.n[0], args.n[1] + 1), r_values, params)
    lines = ["n,r,x0,k_star,k_low,k_high,exists_within_2n,within_upper,meets_lower"]
    for row in rows:
        k_star = "" if row.first_crossing is None else row.first_crossing
        lines.append(
            f"{row.n},{row.r},{row.x0!r},{k_star},{row.k_low},{row.k_high},"
            f"{int(row.exists_within_2n)},{int(row.within_upper)},{int(row.meets_lower)}"
        )
    _emit("\n".join(lines) + "\n", args.csv)
    return EXIT_OK


_COMMANDS = {
    "solve": cmd_solve,
    "trace": cmd_trace,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: cannot read {exc.filename!r}", file=sys.stderr)
        return EXIT_INPUT
    except DimacsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GuardExceeded as exc:
        print(f"guard refusal: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
