"""Command-line front end: deterministic CSV/JSON for every solver and
sweep, with optional matplotlib figure output next to the delimited data.

Exit codes: 0 success, 1 argument/validation errors, 2 partial failure
(some sweep cells failed; the rest were still written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analysis, annulus, rectangle

DEFAULT_TOL = 1e-12
_PUNCTURED_NOTE = (
    "note: the companion text's lambda_1(Omega_0) = j_{2,1}^2 ~= 23.3746 is "
    "inconsistent with j_{2,1} = 5.13562 (whose square is 26.3746); the "
    "table-consistent value 26.3746 is reported."
)


class CLIError(Exception):
    """Argument/validation failure: message to stderr, exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit 2; the CLI uses 1
        raise CLIError(message)


# --- value formatting --------------------------------------------------------

def _fmt(value, precision: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{precision}g}"
    return "" if value is None else str(value)


def _json_value(value, precision: int):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # parse the CSV rendering so both formats decode to the same double
        return float(f"{float(value):.{precision}g}")
    return value


def _emit(columns, records, args) -> None:
    precision = args.precision
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_fmt(v, precision) for v in rec])
        text = buf.getvalue()
    else:
        rows = [
            {col: _json_value(v, precision) for col, v in zip(columns, rec)}
            for rec in records
        ]
        text = json.dumps({"columns": list(columns), "rows": rows}, indent=1)
        text += "\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- argument parsing helpers -------------------------------------------------

def _parse_float_list(text: str) -> list[float]:
    """Accept '0.5', '0.1,0.2', or a range 'lo:hi:step'."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CLIError(f"range must be lo:hi:step, got {text!r}")
        lo, hi, step = (float(p) for p in parts)
        if step <= 0 or hi < lo:
            raise CLIError(f"bad range {text!r}")
        count = int(math.floor((hi - lo) / step + 1e-9))
        return [round(lo + i * step, 12) for i in range(count + 1)]
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise CLIError(f"bad number list {text!r}: {exc}") from None


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise CLIError(f"bad integer list {text!r}: {exc}") from None


def _parse_cases(text: str) -> list[tuple[int, float]]:
    cases = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            k, a = part.split(":")
            cases.append((int(k), float(a)))
        except ValueError as exc:
            raise CLIError(f"bad case {part!r} (want k:a): {exc}") from None
    if not cases:
        raise CLIError("no cases given")
    return cases


def _check_radii(values, extended: bool) -> list[float]:
    limit = 0.995 if extended else analysis.ENVELOPE_MAX_A
    for a in values:
        if not 0.0 <= a < 1.0:
            raise CLIError("inner radius must lie in [0,1)")
        if a > limit + 1e-12:
            raise CLIError(
                f"inner radius {a} outside the supported envelope (a <= {limit}"
                + ("" if extended else "; use --extended beyond 0.95") + ")")
    return list(values)


def _add_output_options(sub, plot: bool = False):
    sub.add_argument("--tol", type=float,
                     default=float(os.environ.get("BUCKLE_TOL", DEFAULT_TOL)),
                     help="root tolerance on mu (env BUCKLE_TOL, default 1e-12)")
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--precision", type=int, default=10,
                     help="significant digits for floats (4..17)")
    if plot:
        sub.add_argument("--plot", metavar="FILE",
                         help="also render a matplotlib figure to FILE")


def _check_precision(args) -> None:
    if not 4 <= args.precision <= 17:
        raise CLIError("precision must lie in [4, 17]")


def _workers(args) -> int:
    n = getattr(args, "parallel", 1) or 1
    if n < 1:
        raise CLIError("--parallel must be >= 1")
    return n


def _pmap(fn, items, workers: int) -> list:
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))  # map preserves input order


# --- sweep cell workers (top level: picklable) --------------------------------

def _table_cell(item):
    a, tol = item
    try:
        res = annulus.first_eigenvalue(a, tol)
        return ("ok", (res.a, res.k_max, res.k_opt, res.sqrt_lambda1,
                       res.normalized))
    except Exception as exc:
        return ("err", f"a={a}: {exc}")


def _branch_cell(item):
    k, a, tol = item
    try:
        point = annulus.tau(k, a, tol)
        return ("ok", (point.k, point.a, point.mu, point.lam))
    except Exception as exc:
        return ("err", f"k={k}, a={a}: {exc}")


def _rect_sweep_cell(item):
    ell, tol = item
    try:
        res = rectangle.first_eigenvalue_rect(ell, tol)
        return ("ok", (res.ell, res.m_opt, res.lambda1, res.nodal_domains))
    except Exception as exc:
        return ("err", f"ell={ell}: {exc}")


def _collect(results) -> tuple[list, list[str]]:
    rows, failures = [], []
    for status, payload in results:
        (rows if status == "ok" else failures).append(payload)
    return rows, failures


# --- commands ------------------------------------------------------------------

def _cmd_table(args) -> int:
    radii = _check_radii(_parse_float_list(args.a), args.extended)
    results = _pmap(_table_cell, [(a, args.tol) for a in radii], _workers(args))
    rows, failures = _collect(results)
    _emit(("a", "k_max", "k_opt", "sqrt_lambda1", "lambda1_area"), rows, args)
    for msg in failures:
        print(f"error: {msg}", file=sys.stderr)
    if args.plot and rows:
        from . import plots
        plots.save_table_figure(
            [analysis.TableRow(a=r[0], k_max=r[1], k_opt=r[2],
                               sqrt_lambda1=r[3], normalized=r[4])
             for r in rows], args.plot)
    return 2 if failures else 0


def _cmd_branches(args) -> int:
    k_set = _parse_int_list(args.k)
    a_grid = _check_radii(_parse_float_list(args.a_range), args.extended)
    cells = [(k, a, args.tol) for k in k_set for a in a_grid]
    results = _pmap(_branch_cell, cells, _workers(args))
    rows, failures = _collect(results)
    _emit(("k", "a", "mu", "lambda"), rows, args)
    for msg in failures:
        print(f"error: {msg}", file=sys.stderr)
    if args.plot and rows:
        from . import plots
        by_k = {}
        for k, a, mu, lam in rows:
            by_k.setdefault(k, []).append(
                annulus.BranchPoint(k=k, a=a, mu=mu, lam=lam))
        plots.save_branches_figure(list(by_k.values()), args.plot)
    return 2 if failures else 0


def _cmd_radial(args) -> int:
    cases = _parse_cases(args.cases)
    _check_radii([a for _, a in cases], extended=False)
    profiles = analysis.radial_profiles(cases, args.tol, args.samples)
    records = []
    for prof in profiles:
        for r, v in zip(prof.r, prof.v):
            records.append((prof.k, prof.a, prof.mu, float(r), float(v)))
    _emit(("k", "a", "mu", "r", "v"), records, args)
    if args.plot:
        from . import plots
        plots.save_radial_figure(profiles, args.plot)
    return 0


def _cmd_first(args) -> int:
    radii = _check_radii([float(args.a)], args.extended)
    res = annulus.first_eigenvalue(radii[0], args.tol)
    _emit(("a", "k_max", "k_opt", "sqrt_lambda1", "lambda1", "lambda1_area"),
          [(res.a, res.k_max, res.k_opt, res.sqrt_lambda1, res.lambda1,
            res.normalized)], args)
    return 0


def _cmd_punctured(args) -> int:
    mu0 = annulus.tau(0, 0.0, args.tol).mu
    lam1 = annulus.first_eigenvalue(0.0, args.tol)
    _emit(("quantity", "value"),
          [("mu_first_k0", mu0),
           ("sqrt_lambda1", lam1.sqrt_lambda1),
           ("lambda1", lam1.lambda1)], args)
    print(_PUNCTURED_NOTE, file=sys.stderr)
    return 0


def _cmd_disk(args) -> int:
    if args.t < 1:
        raise CLIError("zero index --t must be >= 1")
    if args.radius <= 0:
        raise CLIError("disk radius --R must be positive")
    lam = annulus.disk_eigenvalue(args.k, args.t, args.radius)
    _emit(("quantity", "value"),
          [("lambda", lam), ("sqrt_lambda", math.sqrt(lam))], args)
    return 0


def _cmd_rect(args) -> int:
    if args.ell <= 0:
        raise CLIError("half-height --ell must be positive")
    if args.m is not None:
        mode = rectangle.mode_gamma(args.k, args.m, args.ell, args.tol)
        _emit(("k", "m", "ell", "parity", "gamma", "lambda"),
              [(mode.k, mode.m, mode.ell, mode.parity, mode.gamma, mode.lam)],
              args)
        return 0
    res = rectangle.first_eigenvalue_rect(args.ell, args.tol)
    m_star, lam_star = rectangle.minimize_lambda1_real(args.ell)
    _emit(("quantity", "value"),
          [("m_opt", res.m_opt), ("lambda1", res.lambda1),
           ("nodal_domains", res.nodal_domains),
           ("m_star", m_star), ("lambda_star", lam_star)], args)
    return 0


def _cmd_rect_sweep(args) -> int:
    ells = _parse_float_list(args.ell_range)
    if any(e <= 0 for e in ells):
        raise CLIError("half-heights must be positive")
    results = _pmap(_rect_sweep_cell, [(e, args.tol) for e in ells],
                    _workers(args))
    rows, failures = _collect(results)
    _emit(("ell", "m_opt", "lambda1", "nodal_domains"), rows, args)
    for msg in failures:
        print(f"error: {msg}", file=sys.stderr)
    if args.plot and rows:
        from . import plots
        plots.save_rect_sweep_figure(
            [rectangle.RectFirstResult(ell=r[0], m_opt=r[1], lambda1=r[2],
                                       nodal_domains=r[3]) for r in rows],
            args.plot)
    return 2 if failures else 0


def _cmd_asymptotics(args) -> int:
    grid = _check_radii(_parse_float_list(args.a_grid), extended=False)
    fit = analysis.fit_asymptotics(grid, args.tol)
    records = [("c_k_estimate", a, v) for a, v in fit.c_k_estimates]
    records += [("c_mu_estimate", a, v) for a, v in fit.c_mu_estimates]
    records += [
        ("c_k", None, fit.c_k),
        ("c_mu", None, fit.c_mu),
        ("c_k_last", None, fit.c_k_last),
        ("c_mu_last", None, fit.c_mu_last),
        ("c_k_flagged", None, fit.c_k_flagged),
        ("c_mu_flagged", None, fit.c_mu_flagged),
    ]
    _emit(("quantity", "a", "value"), records, args)
    if args.plot:
        from . import plots
        plots.save_asymptotics_figure(fit, args.plot)
    return 0


def _cmd_specfun(args) -> int:
    from . import specfun
    if args.what != "eval":
        raise CLIError("usage: specfun eval {J|Y|dJ|dY|jzero} n x")
    kind, n, x = args.kind, args.n, args.x
    if kind == "J":
        value = specfun.bessel_j(n, x)
    elif kind == "Y":
        value = specfun.bessel_y(n, x)
    elif kind == "dJ":
        value = specfun.bessel_deriv("J", n, x)
    elif kind == "dY":
        value = specfun.bessel_deriv("Y", n, x)
    elif kind == "jzero":
        value = specfun.bessel_j_zero(n, int(x)).value
    else:
        raise CLIError(f"unknown kind {kind!r}")
    print(f"{value:.17g}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="buckle",
                     description="Clamped-plate buckling eigenvalues on "
                                 "annuli, the punctured disk, the disk and "
                                 "mixed-condition rectangles.")
    subs = parser.add_subparsers(
        dest="command", required=True,
        metavar="{table,branches,radial,first,punctured,disk,rect,"
                "rect-sweep,asymptotics}")

    sub = subs.add_parser("table", help="first-eigenvalue table rows")
    sub.add_argument("--a", required=True,
                     help="inner radii: list '0.1,0.5' or range 'lo:hi:step'")
    sub.add_argument("--parallel", type=int, default=os.cpu_count(),
                     help="worker processes (default: machine parallelism)")
    sub.add_argument("--extended", action="store_true",
                     help="allow 0.95 < a <= 0.995 (no accuracy guarantee)")
    _add_output_options(sub, plot=True)
    sub.set_defaults(func=_cmd_table)

    sub = subs.add_parser("branches", help="tau_k(a) branch sweep")
    sub.add_argument("--k", default="0,1,2,3,4", help="mode indices")
    sub.add_argument("--a-range", dest="a_range", default="0:0.4:0.01")
    sub.add_argument("--parallel", type=int, default=os.cpu_count())
    sub.add_argument("--extended", action="store_true")
    _add_output_options(sub, plot=True)
    sub.set_defaults(func=_cmd_branches)

    sub = subs.add_parser("radial", help="radial eigenfunction profiles")
    sub.add_argument("--cases",
                     default=",".join(f"{k}:{a}" for k, a in analysis.FIGURE_CASES),
                     help="list of k:a pairs")
    sub.add_argument("--samples", type=int, default=1024)
    _add_output_options(sub, plot=True)
    sub.set_defaults(func=_cmd_radial)

    sub = subs.add_parser("first", help="first eigenvalue at one inner radius")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--extended", action="store_true")
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_first)

    sub = subs.add_parser("punctured", help="punctured-disk quantities")
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_punctured)

    sub = subs.add_parser("disk", help="clamped disk eigenvalue")
    sub.add_argument("--k", type=int, default=0)
    sub.add_argument("--t", type=int, default=1)
    sub.add_argument("--R", dest="radius", type=float, default=1.0)
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_disk)

    sub = subs.add_parser("rect", help="rectangle first eigenvalue / branch")
    sub.add_argument("--ell", type=float, required=True)
    sub.add_argument("--m", type=float, default=None,
                     help="longitudinal wavenumber (omit for the minimum)")
    sub.add_argument("--k", type=int, default=1,
                     help="transverse branch index (with --m)")
    _add_output_options(sub)
    sub.set_defaults(func=_cmd_rect)

    sub = subs.add_parser("rect-sweep", help="rectangle sweep over ell")
    sub.add_argument("--ell-range", dest="ell_range", required=True,
                     help="range 'lo:hi:step' or list")
    sub.add_argument("--parallel", type=int, default=os.cpu_count())
    _add_output_options(sub, plot=True)
    sub.set_defaults(func=_cmd_rect_sweep)

    sub = subs.add_parser("asymptotics", help="thin-annulus constant fits")
    sub.add_argument("--a-grid", dest="a_grid",
                     default=",".join(str(a) for a in
                                      analysis.DEFAULT_ASYMPTOTIC_GRID))
    _add_output_options(sub, plot=True)
    sub.set_defaults(func=_cmd_asymptotics)

    sub = subs.add_parser("specfun")  # undocumented debug hook
    sub.add_argument("what")
    sub.add_argument("kind")
    sub.add_argument("n", type=int)
    sub.add_argument("x", type=float)
    sub.set_defaults(func=_cmd_specfun, precision=17, format="csv", out=None)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "precision"):
            _check_precision(args)
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # computation failure on a single-shot command
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
