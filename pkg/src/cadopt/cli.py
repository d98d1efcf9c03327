"""Command-line front end.

Subcommands: ``solve`` (one instance with certificates), ``sweep`` (a range
of error radii, optionally in parallel), ``bound`` (analytic lower bounds),
``profile`` (square-root-measurement outcome profile), ``fourier-check``
(decay-envelope verification).  Output goes to stdout or ``--output`` as
JSON or CSV with 12 significant digits.

Exit codes: 0 success, 2 usage error, 3 numerical failure (including
non-optimal solver status or decay violations), 4 file I/O failure.
Runs are deterministic: identical arguments, including ``--seed``, produce
identical output.  ``CAD_THREADS`` caps sweep parallelism.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bounds import general_lower_bound, qcp_bound, qsad_bound
from .fourier import decay_bound, decay_check
from .srm import outcome_profile, srm
from .errors import (
    BadDelta,
    BadDimension,
    BadInput,
    BadPovm,
    BadState,
    CadError,
    LinearDependence,
    NotPsd,
    NumericalFailure,
)
from .problems import load_problem_json, qcp_problem, qsad_problem
from .solver import probabilities, reconstruct_povm, simulate_outcomes, solve_cad

_USAGE_ERRORS = (BadInput, BadDelta, BadDimension, BadState, LinearDependence)
_NUMERIC_ERRORS = (NumericalFailure, NotPsd, BadPovm)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _fmt(value):
    """12-significant-digit serialization, locale independent."""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _json_ready(value):
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(_fmt(value))
    if isinstance(value, (np.integer, int)):
        return int(value)
    return value


def _write_rows(header, rows, fmt, out):
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, (int, float, np.number)) else v for v in row])
    else:
        out.write(json.dumps([_json_ready(dict(zip(header, row))) for row in rows], indent=2))
        out.write("\n")


def _parse_delta_range(text, n):
    """Parse '3' or '0..7' into an inclusive list of radii."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if not (0 <= lo <= hi <= n - 1):
        raise BadDelta(f"delta range {text!r} outside [0, {n - 1}]")
    return list(range(lo, hi + 1))


def _build_problem(args, delta):
    if args.problem == "custom":
        if not args.input:
            raise BadInput("--input is required for custom problems")
        return load_problem_json(args.input, delta)
    if args.n is None or args.c is None:
        raise BadInput("--n and --c are required for qcp/qsad problems")
    maker = qcp_problem if args.problem == "qcp" else qsad_problem
    return maker(args.n, args.c, delta)


def _solver_kwargs(args):
    return dict(gap_tol=args.gap_tol, feas_tol=args.feas_tol, max_iter=args.max_iter)


def _solve_record(problem, args):
    sol = solve_cad(problem, **_solver_kwargs(args))
    pb = probabilities(sol)
    return sol, pb


def _threads():
    value = os.environ.get("CAD_THREADS", "").strip()
    if value:
        return max(1, int(value))
    return os.cpu_count() or 1


def _cmd_solve(args, out):
    problem = _build_problem(args, int(args.delta))
    sol, pb = _solve_record(problem, args)
    record = {
        "problem": {"kind": problem.kind, "n": problem.n, "c": problem.c, "delta": problem.delta},
        "ps": pb.ps,
        "pe": pb.pe,
        "pi": pb.pi,
        "primal_value": sol.primal_value,
        "dual_value": sol.dual_value,
        "gap": sol.gap,
        "pres": sol.pres,
        "dres": sol.dres,
        "iterations": sol.iterations,
        "status": sol.status,
    }
    if args.simulate_trials:
        if args.format != "json":
            raise BadInput("--simulate-trials requires --format json")
        true_site = args.k0 if args.k0 is not None else problem.n // 2
        counts = simulate_outcomes(
            reconstruct_povm(sol), true_site, args.simulate_trials, args.seed
        )
        record["simulation"] = {
            "true_site": true_site,
            "trials": counts.trials,
            "seed": counts.seed,
            "inconclusive": counts.inconclusive,
            "per_site": [int(v) for v in counts.per_site],
        }
    if args.format == "json":
        out.write(json.dumps(_json_ready(record), indent=2))
        out.write("\n")
    else:
        header = ["delta", "ps", "pe", "pi", "primal_value", "dual_value", "gap", "iterations", "status"]
        row = [problem.delta, pb.ps, pb.pe, pb.pi, sol.primal_value, sol.dual_value, sol.gap, sol.iterations, sol.status]
        _write_rows(header, [row], "csv", out)
    return EXIT_OK if sol.status == "optimal" else EXIT_NUMERIC


def _sweep_rows(args, deltas):
    base = _build_problem(args, deltas[0])
    sd = srm(base.gram)

    def solve_one(delta):
        problem = _build_problem(args, delta)
        sol, pb = _solve_record(problem, args)
        bound = general_lower_bound(sd, delta).value
        return sol, pb, bound

    with ThreadPoolExecutor(max_workers=min(_threads(), len(deltas))) as pool:
        results = list(pool.map(solve_one, deltas))
    return sd, results


def _cmd_sweep(args, out):
    probe = _build_problem(args, 0)
    deltas = _parse_delta_range(args.delta, probe.n) if args.delta else list(range(probe.n))
    sd, results = _sweep_rows(args, deltas)
    header = ["delta", "ps", "pe", "pi", "bound", "ps_me"]
    rows = []
    worst = EXIT_OK
    for delta, (sol, pb, bound) in zip(deltas, results):
        rows.append([delta, pb.ps, pb.pe, pb.pi, bound, sd.ps_me])
        if sol.status != "optimal":
            worst = EXIT_NUMERIC
    if args.format == "json":
        payload = []
        for delta, (sol, pb, bound) in zip(deltas, results):
            payload.append(
                {
                    "delta": delta,
                    "ps": pb.ps,
                    "pe": pb.pe,
                    "pi": pb.pi,
                    "bound": bound,
                    "ps_me": sd.ps_me,
                    "primal_value": sol.primal_value,
                    "dual_value": sol.dual_value,
                    "gap": sol.gap,
                    "iterations": sol.iterations,
                    "status": sol.status,
                }
            )
        out.write(json.dumps(_json_ready(payload), indent=2))
        out.write("\n")
    else:
        _write_rows(header, rows, "csv", out)
    return worst


def _cmd_bound(args, out):
    probe = _build_problem(args, 0)
    deltas = _parse_delta_range(args.delta, probe.n) if args.delta else list(range(probe.n))
    sd = srm(probe.gram)
    rows = []
    for delta in deltas:
        value = general_lower_bound(sd, delta, clamp_negative=args.clamp).value
        if probe.kind == "qcp":
            closed = qcp_bound(probe.c, delta, sd.ps_me)
        elif probe.kind == "qsad":
            closed = qsad_bound(probe.n, probe.c, delta)
        else:
            closed = float("nan")
        rows.append([delta, value, closed, sd.ps_me])
    _write_rows(["delta", "bound", "closed_form", "ps_me"], rows, args.format, out)
    return EXIT_OK


def _cmd_profile(args, out):
    probe = _build_problem(args, 0)
    sd = srm(probe.gram)
    true_site = args.k0 if args.k0 is not None else probe.n // 2
    prof = outcome_profile(sd, true_site)
    rows = [[int(off), p] for off, p in zip(prof.offsets, prof.probs)]
    _write_rows(["delta_offset", "probability"], rows, args.format, out)
    return EXIT_OK


def _cmd_fourier_check(args, out):
    check = decay_check(args.c, args.kmax)
    rows = [
        [k, check.coefficients[k], decay_bound(k, args.c, check.m0)]
        for k in range(args.kmax + 1)
    ]
    if args.format == "json":
        payload = {
            "c": args.c,
            "m0": check.m0,
            "violations": list(check.violations),
            "rows": [_json_ready(dict(zip(["k", "mu_hat", "bound"], row))) for row in rows],
        }
        out.write(json.dumps(_json_ready(payload), indent=2))
        out.write("\n")
    else:
        _write_rows(["k", "mu_hat", "bound"], rows, "csv", out)
    if check.violations:
        print(f"decay violations at k={check.violations}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _add_common(parser, with_problem=True):
    if with_problem:
        parser.add_argument("--problem", choices=("qcp", "qsad", "custom"), default="qcp")
        parser.add_argument("--n", type=int, help="number of hypotheses (qcp/qsad)")
        parser.add_argument("--c", type=float, help="pairwise overlap parameter (qcp/qsad)")
        parser.add_argument("--input", help="custom problem JSON file")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", help="write here instead of stdout")


def _add_solver_opts(parser):
    parser.add_argument("--gap-tol", type=float, default=1e-7)
    parser.add_argument("--feas-tol", type=float, default=1e-8)
    parser.add_argument("--max-iter", type=int, default=200)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cadopt",
        description="Certified-answer discrimination: block SDP solves, baselines and bounds. Site indices are 0-based.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance and report certificates")
    _add_common(p)
    _add_solver_opts(p)
    p.add_argument("--delta", required=True, help="error radius (single integer)")
    p.add_argument("--simulate-trials", type=int, default=0, help="sample outcomes from the solved measurement (json only)")
    p.add_argument("--k0", type=int, help="true site for --simulate-trials (default: center)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed for --simulate-trials")

    p = sub.add_parser("sweep", help="solve a range of error radii")
    _add_common(p)
    _add_solver_opts(p)
    p.add_argument("--delta", help="range like 0..24 (default: all radii)")
    p.set_defaults(format="csv")

    p = sub.add_parser("bound", help="analytic lower bounds per error radius")
    _add_common(p)
    p.add_argument("--delta", help="range like 0..24 (default: all radii)")
    p.add_argument("--clamp", action="store_true", help="clamp negative per-site terms at zero")
    p.set_defaults(format="csv")

    p = sub.add_parser("profile", help="square-root-measurement outcome profile")
    _add_common(p)
    p.add_argument("--k0", type=int, help="true site (default: center)")
    p.set_defaults(format="csv")

    p = sub.add_parser("fourier-check", help="verify the decay envelope of the kernel coefficients")
    _add_common(p, with_problem=False)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--kmax", type=int, default=40)
    p.set_defaults(format="csv")

    return parser


_HANDLERS = {
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "bound": _cmd_bound,
    "profile": _cmd_profile,
    "fourier-check": _cmd_fourier_check,
}


def run(argv):
    """Parse ``argv`` (no program name) and execute; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    buffer = io.StringIO()
    try:
        code = _HANDLERS[args.command](args, buffer)
    except _USAGE_ERRORS + (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except json.JSONDecodeError as exc:
        print(f"error: invalid problem file: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CadError as exc:  # anything uncategorized from the library
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = buffer.getvalue()
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
