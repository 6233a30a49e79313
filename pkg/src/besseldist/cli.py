"""``besseldist`` command line: eval, table, fit, sample, check.

Every command writes CSV (``#``-prefixed metadata lines, then a header and
rows; floats in 17-significant-digit scientific notation) or JSON
(``{"meta": ..., "data": ...}``, floats in shortest round-trip form).

Exit codes: 0 success, 1 usage error, 2 partial evaluation, 3 ambiguous
optimisation, 4 failed self-check.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import shlex
import sys

import numpy as np

from . import __version__
from . import approx, sampling, selfcheck, specfun
from . import dist as D
from .errors import AmbiguityError, DomainError, UnsupportedClosedForm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_AMBIGUOUS = 3
EXIT_CHECK_FAILED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- output ------------------------------------------------------------------


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.16e}"
    return str(v)


def _jsonable(v):
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def render_csv(meta: dict, header: list, rows: list) -> str:
    out = io.StringIO()
    for k, v in meta.items():
        out.write(f"# {k}={v}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_csv_cell(v) for v in row] for row in rows)
    return out.getvalue()


def render_json(meta: dict, data) -> str:
    return json.dumps({"meta": _jsonable(meta), "data": _jsonable(data)}, indent=2, allow_nan=False) + "\n"


def _emit(args, meta, header, rows, data):
    text = render_json(meta, data) if args.format == "json" else render_csv(meta, header, rows)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)


def _meta(args, **extra):
    meta = {"tool": "besseldist", "version": __version__, "command": args.command_line}
    meta.update(extra)
    return meta


# -- argument helpers --------------------------------------------------------


def _parse_dist(text):
    try:
        return D.parse_spec(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _parse_points(text) -> list:
    """``"0,1.5,3"`` or ``"lo:hi:n"`` (``n`` evenly spaced points, ends included)."""
    text = text.strip()
    try:
        if text.count(":") == 2 and "," not in text:
            lo, hi, n = text.split(":")
            n = int(n)
            if n < 1:
                raise ValueError
            return np.linspace(float(lo), float(hi), n).tolist()
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse points {text!r}; use 'x1,x2,...' or 'lo:hi:n'") from None


def _parse_floats(text, what):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None


# -- commands ----------------------------------------------------------------

EVAL_FUNCTIONS = ("pdf", "cdf", "sf", "quantile", "chf", "mgf")


def cmd_eval(args) -> int:
    d = _parse_dist(args.dist)
    points = _parse_points(args.points)
    if not points:
        raise UsageError("no evaluation points given")
    fn = getattr(d, args.fn)
    rows = []
    failed = 0
    for x in points:
        try:
            value = fn(x)
        except (DomainError, UnsupportedClosedForm, ValueError, OverflowError) as exc:
            rows.append([x, None, None, f"{type(exc).__name__}: {exc}"])
            failed += 1
            continue
        value = complex(value)
        rows.append([x, value.real, value.imag, None])
    meta = _meta(args, dist=D.format_spec(d), fn=args.fn, failed=failed)
    header = ["x", "value", "imag", "error"]
    data = {
        "dist": D.format_spec(d),
        "fn": args.fn,
        "rows": [dict(zip(header, row)) for row in rows],
    }
    _emit(args, meta, header, rows, data)
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_table(args) -> int:
    alphas = approx.DEFAULT_ALPHAS if args.alphas is None else _parse_floats(args.alphas, "alphas")
    columns = None if not args.column else [_parse_dist(c) for c in args.column]
    try:
        table = approx.quantile_table(alphas, columns, args.reference)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _meta(args, reference=args.reference), table.header(), table.rows(), table.as_dict())
    return EXIT_OK


def cmd_fit(args) -> int:
    try:
        result = approx.fit_lambda(args.sigma, args.metric, tuple(args.bracket))
    except AmbiguityError as exc:
        sys.stderr.write(f"{exc}\n# lambda,distance\n")
        for lam, dist in exc.scan:
            sys.stderr.write(f"{_csv_cell(float(lam))},{_csv_cell(float(dist))}\n")
        return EXIT_AMBIGUOUS
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    data = result.as_dict()
    header = ["lambda_star", "distance_star", "metric", "sigma", "iterations", "bracket_lo", "bracket_hi"]
    row = [result.lambda_star, result.distance_star, result.metric, result.sigma,
           result.iterations, result.bracket[0], result.bracket[1]]
    _emit(args, _meta(args), header, [row], data)
    return EXIT_OK


def cmd_sample(args) -> int:
    d = _parse_dist(args.dist)
    try:
        batch = sampling.sample(d, args.n, args.seed, args.representation)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    meta = _meta(args, **batch.metadata())
    values = batch.values.tolist()
    _emit(args, meta, ["value"], [[v] for v in values], {"values": values})
    return EXIT_OK


def cmd_check(args) -> int:
    ctx = specfun.perturbed_k0(args.perturb_k0) if args.perturb_k0 else contextlib.nullcontext()
    with ctx:
        results = selfcheck.run(args.suite)
    header = ["suite", "name", "passed", "value", "threshold", "detail"]
    rows = [[r.suite, r.name, r.passed, float(r.value), float(r.threshold), r.detail] for r in results]
    failed = sum(not r.passed for r in results)
    meta = _meta(args, suite=args.suite, failed=failed)
    _emit(args, meta, header, rows, {"results": [r.as_dict() for r in results]})
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="output path (default: standard output)")

    parser = _Parser(prog="besseldist", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"besseldist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate pdf/cdf/chf/mgf at points")
    p.add_argument("--dist", required=True, help=D.GRAMMAR)
    p.add_argument("--fn", choices=EVAL_FUNCTIONS, default="pdf")
    p.add_argument("--points", required=True, help="'x1,x2,...' or 'lo:hi:n'")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="critical-value table with percent deviations")
    p.add_argument("--alphas", help="comma-separated tail probabilities")
    p.add_argument("--column", action="append", help="distribution spec; repeat for each column")
    p.add_argument("--reference", type=int, default=0, help="index of the reference column")
    p.set_defaults(handler=cmd_table)

    p = sub.add_parser("fit", parents=[common], help="best Laplace lambda for a Bessel law")
    p.add_argument("--metric", choices=("ks", "wasserstein"), default="ks")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--bracket", type=float, nargs=2, default=(1.0, 2.5), metavar=("LO", "HI"))
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("sample", parents=[common], help="seeded samples as a single column")
    p.add_argument("--dist", required=True, help=D.GRAMMAR)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--representation", help="sampler representation (family-specific)")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("check", parents=[common], help="run the built-in verification suites")
    p.add_argument("--suite", choices=(*selfcheck.SUITES, "all"), default="all")
    p.add_argument("--perturb-k0", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_check)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        args.command_line = shlex.join(["besseldist", *argv])
        return args.handler(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
