"""Command-line front end: trace geodesics, cut times, inverse problems.

Subcommands:

    exp      sample a geodesic and print t, x, y, z, v, theta, c rows
    cut      stratum, cut time and conjugate-at-cut flag of a covector
    solve    optimal trajectory(ies) reaching a target state
    profile  cut time along the one-parameter covector family (0, sin b, cos b)

Output is CSV by default or JSON lines with ``--format json``; numbers are
printed with 10 significant digits and infinities as the literal ``inf``.
Exit codes: 0 success, 2 usage error, 3 unsupported region, 4 solver
non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import maxwell, synthesis
from .expmap import State, exp
from .pendulum import Covector, classify, flow

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_NONCONVERGENCE = 4


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return "%.10g" % x


def _emit_rows(rows, columns, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(",".join(columns) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        for row in rows:
            out.write(
                json.dumps(
                    {c: ("inf" if math.isinf(v) else float(_fmt(v))) for c, v in zip(columns, row)},
                    sort_keys=False,
                )
                + "\n"
            )


def _cmd_exp(args, out) -> int:
    if args.t <= 0.0:
        raise SystemExit("exp: --t must be positive")
    if args.samples < 2:
        raise SystemExit("exp: --samples must be at least 2")
    lam = Covector(args.theta, args.c, args.alpha)
    rows = []
    for i in range(args.samples):
        t = args.t * i / (args.samples - 1)
        q = exp(lam, t) if t > 0.0 else State(0.0, 0.0, 0.0, 0.0)
        pend = flow(lam, t)
        rows.append((t, q.x, q.y, q.z, q.v, pend.theta, pend.c))
    _emit_rows(rows, ["t", "x", "y", "z", "v", "theta", "c"], args.format, out)
    return EXIT_OK


def _cmd_cut(args, out) -> int:
    lam = Covector(args.theta, args.c, args.alpha)
    stratum = classify(lam)
    t1 = maxwell.cut_time(lam)
    if args.format == "csv":
        out.write("stratum,t_cut,conjugate\n")
        conj = ""
        if t1.finite:
            conj = "true" if maxwell.conjugate_at_cut(lam) else "false"
        out.write(f"{stratum.tag},{_fmt(t1.as_float())},{conj}\n")
    else:
        rec = {"stratum": stratum.tag, "t_cut": "inf" if not t1.finite else float(_fmt(t1.value))}
        if t1.finite:
            rec["conjugate"] = maxwell.conjugate_at_cut(lam)
        out.write(json.dumps(rec) + "\n")
    return EXIT_OK


def _solve_one(q: State, tol: float):
    region = synthesis.classify_target(q)
    if region is synthesis.Region.ORIGIN:
        return region, (), 0.0, 0.0
    if region in synthesis._SPECIAL:
        r = synthesis.solve_special(q)
    elif region in synthesis._GENERIC:
        r = synthesis.solve_generic(q, tol)
    else:
        raise synthesis.UnsupportedRegionError(
            "target lies on a boundary set outside the implemented synthesis"
        )
    return r.region, r.trajectories, r.residual, r.sr_distance


def _solve_report(q: State, tol: float, fmt: str, out) -> None:
    region, trajs, residual, dist = _solve_one(q, tol)
    if fmt == "csv":
        out.write("region,theta,c,alpha,t1,residual,sr_distance\n")
        if not trajs:
            out.write(f"{region.value},,,,,{_fmt(residual)},{_fmt(dist)}\n")
        for nu in trajs:
            out.write(
                f"{region.value},{_fmt(nu.lam.theta)},{_fmt(nu.lam.c)},"
                f"{_fmt(nu.lam.alpha)},{_fmt(nu.t)},{_fmt(residual)},{_fmt(dist)}\n"
            )
    else:
        rec = {
            "region": region.value,
            "trajectories": [
                {
                    "theta": float(_fmt(nu.lam.theta)),
                    "c": float(_fmt(nu.lam.c)),
                    "alpha": float(_fmt(nu.lam.alpha)),
                    "t1": float(_fmt(nu.t)),
                }
                for nu in trajs
            ],
            "residual": float(_fmt(residual)),
            "sr_distance": float(_fmt(dist)),
        }
        out.write(json.dumps(rec) + "\n")


def _cmd_solve(args, out) -> int:
    try:
        if args.batch is not None:
            with open(args.batch, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#"):
                        continue
                    parts = [float(p) for p in line.replace(",", " ").split()]
                    if len(parts) != 4:
                        raise SystemExit(f"solve: bad batch row: {line!r}")
                    _solve_report(State(*parts), args.tol, args.format, out)
        else:
            if None in (args.x, args.y, args.z, args.v):
                raise SystemExit("solve: give x y z v or --batch FILE")
            _solve_report(State(args.x, args.y, args.z, args.v), args.tol, args.format, out)
    except synthesis.UnsupportedRegionError as err:
        print(f"solve: unsupported region: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except synthesis.NonConvergenceError as err:
        print(f"solve: non-convergence: {err}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def _cmd_profile(args, out) -> int:
    if args.steps < 2:
        raise SystemExit("profile: --steps must be at least 2")
    rows = []
    for i in range(args.steps):
        beta = 0.5 * math.pi * i / (args.steps - 1)
        rows.append((beta, maxwell.cut_profile(beta).as_float()))
    _emit_rows(rows, ["beta", "t_cut"], args.format, out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="engelsr",
        description="Geodesics, cut times and optimal synthesis on the Engel group",
    )
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p_exp = sub.add_parser("exp", help="trace a geodesic")
    p_exp.add_argument("--theta", type=float, required=True)
    p_exp.add_argument("--c", type=float, required=True)
    p_exp.add_argument("--alpha", type=float, required=True)
    p_exp.add_argument("--t", type=float, required=True)
    p_exp.add_argument("--samples", type=int, default=101)
    p_exp.set_defaults(func=_cmd_exp)

    p_cut = sub.add_parser("cut", help="cut time of a covector")
    p_cut.add_argument("--theta", type=float, required=True)
    p_cut.add_argument("--c", type=float, required=True)
    p_cut.add_argument("--alpha", type=float, required=True)
    p_cut.set_defaults(func=_cmd_cut)

    p_solve = sub.add_parser("solve", help="optimal trajectory to a target state")
    p_solve.add_argument("x", type=float, nargs="?")
    p_solve.add_argument("y", type=float, nargs="?")
    p_solve.add_argument("z", type=float, nargs="?")
    p_solve.add_argument("v", type=float, nargs="?")
    p_solve.add_argument("--tol", type=float, default=1e-8)
    p_solve.add_argument("--batch", type=str, default=None)
    p_solve.set_defaults(func=_cmd_solve)

    p_prof = sub.add_parser("profile", help="cut time over the beta family")
    p_prof.add_argument("--steps", type=int, default=181)
    p_prof.set_defaults(func=_cmd_profile)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except SystemExit as err:
        if isinstance(err.code, str):
            print(err.code, file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
