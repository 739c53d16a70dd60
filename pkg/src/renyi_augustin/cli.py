"""Command line interface: ``renyi-augustin {solve,sweep,check,example1}``.

Exit codes: 0 on success, 1 on usage or input errors, 2 when an iteration
hits ``--max-iter`` without converging.
"""
import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import properties
from .augustin import solve_augustin_mean
from .channels import example1_closed_form, example1_discretized
from .validation import check_order, check_pair

EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED = 0, 1, 2
LN2 = math.log(2.0)


class InputError(Exception):
    pass


def fmt(x):
    """17 significant digits; round-trips doubles exactly."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % x


def _json_float(x):
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")


def resolve_channel_path(name):
    """A filesystem path, or the name of a bundled channel file."""
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("renyi_augustin") / "data" / name
    if bundled.is_file():
        return bundled
    raise InputError("channel file not found: %s" % name)


def load_channel(name):
    """Parse a ``{"W": [[...]], "P": [...]}`` channel file."""
    path = resolve_channel_path(name)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError("%s: invalid JSON (%s)" % (name, exc)) from None
    if not isinstance(data, dict):
        raise InputError("%s: top level must be an object with fields 'W' and 'P'" % name)
    for key in ("W", "P"):
        if key not in data:
            raise InputError("%s: missing field '%s'" % (name, key))
    W, P = data["W"], data["P"]
    if not isinstance(W, list) or not all(isinstance(r, list) for r in W):
        raise InputError("%s: field 'W' must be a list of rows" % name)
    for i, row in enumerate(W):
        if len(row) != len(W[0]):
            raise InputError("%s: W row %d has %d entries, expected %d"
                             % (name, i, len(row), len(W[0])))
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError("%s: W row %d entry %d is not a number" % (name, i, j))
    if not isinstance(P, list) or any(isinstance(v, bool) or not isinstance(v, (int, float))
                                      for v in P):
        raise InputError("%s: field 'P' must be a list of numbers" % name)
    try:
        P, W = check_pair(P, W)
    except ValueError as exc:
        raise InputError("%s: %s" % (name, exc)) from None
    return P, W


def parse_alphas(spec):
    """``"0.25,0.5,1"`` or an inclusive range ``"start:step:stop"``."""
    spec = spec.strip()
    if not spec:
        raise InputError("empty alpha list")
    try:
        if ":" in spec:
            start, step, stop = (float(s) for s in spec.split(":"))
            if step <= 0:
                raise InputError("range step must be positive")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            alphas = [start + i * step for i in range(max(count, 0))]
        else:
            alphas = [float(s) for s in spec.split(",") if s.strip()]
    except ValueError:
        raise InputError("cannot parse alpha list %r" % spec) from None
    if not alphas:
        raise InputError("empty alpha list")
    return sorted(alphas)


def _order(alpha):
    try:
        alpha = check_order(alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if math.isinf(alpha):
        raise InputError("order alpha=inf is not supported by the Augustin solver")
    return alpha


def _write(args, text):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _solve(args, alpha, P, W):
    try:
        return solve_augustin_mean(alpha, P, W, tol=args.tol, max_iter=args.max_iter,
                                   beta=args.beta)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_solve(args):
    P, W = load_channel(args.channel)
    alpha = _order(args.alpha)
    report = _solve(args, alpha, P, W)
    scale = LN2 if args.bits else 1.0
    info = report.information / scale
    if args.format == "csv":
        header = ["alpha", "beta", "information", "iterations", "residual_tv", "converged"]
        header += ["mean_%d" % i for i in range(len(report.mean))]
        row = [report.alpha, report.beta, info, report.iterations, report.residual_tv,
               report.converged, *report.mean]
        _write(args, _csv_text(header, [row]))
    else:
        out = {
            "alpha": report.alpha,
            "beta": report.beta,
            "units": "bits" if args.bits else "nats",
            "information": _json_float(info),
            "mean": [float(v) for v in report.mean],
            "iterations": report.iterations,
            "residual_tv": _json_float(report.residual_tv),
            "converged": report.converged,
            "W": W.tolist(),
            "P": P.tolist(),
        }
        _write(args, json.dumps(out, indent=2) + "\n")
    if math.isinf(report.information) or report.converged:
        return EXIT_OK
    return EXIT_NOT_CONVERGED


def cmd_sweep(args):
    P, W = load_channel(args.channel)
    alphas = [_order(a) for a in parse_alphas(args.alphas)]
    scale = LN2 if args.bits else 1.0
    rows, status = [], EXIT_OK
    for alpha in alphas:
        report = _solve(args, alpha, P, W)
        if not (report.converged or math.isinf(report.information)):
            status = EXIT_NOT_CONVERGED
        rows.append([alpha, report.information / scale, report.iterations, report.residual_tv])
    _write(args, _csv_text(["alpha", "information", "iterations", "residual"], rows))
    return status


def _parse_size(text):
    try:
        parts = tuple(int(s) for s in text.lower().split("x"))
    except ValueError:
        raise InputError("cannot parse size %r (expected NXxNY or N)" % text) from None
    if any(p < 1 for p in parts) or len(parts) not in (1, 2):
        raise InputError("invalid size %r" % text)
    return parts


def cmd_check(args):
    if args.trials < 1:
        raise InputError("trials must be >= 1")
    check = properties.CHECKS[args.property]
    kwargs = {"trials": args.trials, "seed": args.seed}
    if args.sizes:
        size = _parse_size(args.sizes)
        if args.property in ("pinsker", "homogeneity"):
            kwargs["size"] = size[-1]
        else:
            kwargs["size"] = size if len(size) == 2 else (size[0], size[0])
    result = check(**kwargs)
    lines = ["# property=%s seed=%d rng=%s tolerance=%s"
             % (result.name, result.seed, properties.RNG_ALGORITHM, fmt(result.tolerance))]
    lines += ["trial %d worst_slack %s" % (i, fmt(s)) for i, s in enumerate(result.slacks)]
    lines.append("%s: %s (trials=%d, worst slack %s)"
                 % (result.name, "PASS" if result.passed else "FAIL", result.trials,
                    fmt(result.worst_slack)))
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if result.passed else EXIT_INPUT


def cmd_example1(args):
    if not args.gamma > 0.5:
        raise InputError("gamma must exceed 0.5")
    alpha = _order(args.alpha)
    grids = [int(g) for g in args.grids.split(",") if g.strip()]
    if not grids or min(grids) < 2:
        raise InputError("grid sizes must be integers >= 2")
    closed = example1_closed_form(args.gamma, alpha)
    if math.isinf(closed):
        print("note: alpha >= 1, the continuum information is infinite; "
              "reporting raw values only", file=sys.stderr)
    rows, status = [], EXIT_OK
    for n in grids:
        W, P = example1_discretized(args.gamma, n, n)
        report = _solve(args, alpha, P, W)
        if not report.converged:
            status = EXIT_NOT_CONVERGED
        rel = abs(report.information - closed) / closed if math.isfinite(closed) else math.nan
        rows.append([n, n, report.information, closed, rel])
    _write(args, _csv_text(["n", "m", "I_computed", "I_closed_form", "rel_error"], rows))
    return status


def build_parser():
    parser = argparse.ArgumentParser(
        prog="renyi-augustin",
        description="Augustin information and Renyi divergence tools for finite channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--beta", type=float, default=None,
                       help="tilting order (default min(1, 1/alpha))")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--max-iter", type=int, default=100_000)
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("solve", help="Augustin mean and information of one channel")
    p.add_argument("channel", help="channel JSON file or bundled name (e.g. bsc01.json)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--bits", action="store_true", help="report information in bits")
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="Augustin information over a list of orders")
    p.add_argument("channel")
    p.add_argument("--alphas", required=True, help="comma list or start:step:stop")
    p.add_argument("--bits", action="store_true")
    solver_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="randomized property checks")
    p.add_argument("property", choices=sorted(properties.CHECKS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--sizes", default=None, help="instance size NXxNY (or N)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("example1", help="refinement study of the partially noiseless channel")
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--grids", default="16,32,64,128")
    solver_flags(p)
    p.set_defaults(func=cmd_example1)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
