"""Command-line front end.

Usage::

    putzerlog logm    [FILE] [--json] [--verbose] [--poly {min,char}] [--tol TOL]
    putzerlog curve   [FILE] [--t-start T0] [--t-end T1] [--samples N]
    putzerlog formula [FILE] [--latex] [--segment]
    putzerlog check   [FILE] [--rtol RTOL] [--segment]

``FILE`` is a matrix in plain text (first line ``n``, then ``n`` rows) or a
JSON object ``{"n": n, "entries": [...]}`` with row-major entries; ``-`` or
no argument reads standard input.

Exit status: 0 success, 1 input error, 2 mathematical precondition violated
(eigenvalue on the closed negative real axis, empty ``t`` range), 3
verification failure or any other numerical failure.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import oracles
from .closed_form import render
from .errors import (
    DimensionError,
    DomainError,
    MatrixParseError,
    PrincipalLogUndefined,
    PutzerError,
)
from .matrix_core import inf_norm, linear_combination
from .putzer_log import eval_log_curve, log_at_one, plan, segment_plan
from .spectral import DEFAULT_MINPOLY_TOL, reciprocal_polynomial

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_VERIFY = 3

DEFAULT_CHECK_RTOL = 1e-7
CHECK_POINTS = 9


# -- input ------------------------------------------------------------------


def _parse_json(text, source):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise MatrixParseError(f"{source}: expected an object with fields 'n' and 'entries'")
    for field in ("n", "entries"):
        if field not in obj:
            raise MatrixParseError(f"{source}: missing field {field!r}")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixParseError(f"{source}: field 'n' must be a positive integer, got {n!r}")
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise MatrixParseError(f"{source}: field 'entries' must be a list")
    values = []
    for idx, x in enumerate(entries):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise MatrixParseError(f"{source}: field 'entries'[{idx}] is not a finite number: {x!r}")
        values.append(float(x))
    if len(values) != n * n:
        raise DimensionError(f"{source}: 'entries' has {len(values)} values, expected n*n = {n * n}")
    return np.array(values).reshape(n, n)


def _parse_plain(text, source):
    lines = [(no, line.split("#", 1)[0].split()) for no, line in enumerate(text.splitlines(), 1)]
    lines = [(no, tokens) for no, tokens in lines if tokens]
    if not lines:
        raise MatrixParseError(f"{source}: empty input")
    no, tokens = lines[0]
    if len(tokens) != 1:
        raise MatrixParseError(f"{source}: line {no}: expected the dimension n alone")
    try:
        n = int(tokens[0])
    except ValueError:
        raise MatrixParseError(f"{source}: line {no}: dimension {tokens[0]!r} is not an integer") from None
    if n < 1:
        raise MatrixParseError(f"{source}: line {no}: dimension must be positive, got {n}")
    rows = lines[1:]
    if len(rows) > n:
        raise MatrixParseError(f"{source}: line {rows[n][0]}: unexpected data after {n} rows")
    out = np.zeros((n, n))
    for i, (no, tokens) in enumerate(rows):
        if len(tokens) != n:
            raise MatrixParseError(f"{source}: line {no}: row {i + 1} has {len(tokens)} entries, expected {n}")
        for j, tok in enumerate(tokens):
            try:
                val = float(tok)
            except ValueError:
                raise MatrixParseError(f"{source}: line {no}: entry {j + 1} {tok!r} is not a number") from None
            if not math.isfinite(val):
                raise MatrixParseError(f"{source}: line {no}: entry {j + 1} is not finite")
            out[i, j] = val
    if len(rows) < n:
        raise DimensionError(f"{source}: found {len(rows)} rows, expected {n}")
    return out


def parse_matrix_text(text, source="<input>"):
    """Parse matrix text in either accepted format."""
    if text.lstrip().startswith(("{", "[")):
        return _parse_json(text, source)
    return _parse_plain(text, source)


def parse_matrix(path=None):
    """Read a matrix from ``path`` (``None`` or ``"-"`` for standard input).

    Raises
    ------
    MatrixParseError
        Malformed input, with the offending line or field.
    DimensionError
        Entry count does not match ``n``.
    """
    if path is None or path == "-":
        return parse_matrix_text(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixParseError(f"{path}: cannot read: {exc.strerror}") from None
    return parse_matrix_text(text, path)


# -- output helpers ---------------------------------------------------------


def _g(x):
    return f"{float(x) + 0.0:.12g}"


def format_matrix(m):
    return "\n".join(" ".join(_g(x) for x in row) for row in np.asarray(m)) + "\n"


def _json_number(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _domain_json(dom):
    return {"lo": _json_number(dom.lo), "hi": _json_number(dom.hi)}


def _poly_json(p):
    return {
        "kind": p.kind,
        "degree": p.k,
        "coeffs": [float(c) + 0.0 for c in p.coeffs],
        "residual": float(p.residual),
        "fallback": bool(p.fallback),
    }


def _render_poly(coeffs, var, style, ascending=False):
    """Render ``sum coeffs[j] * var**j`` from ascending ``coeffs``.

    Terms are printed highest degree first unless ``ascending``.
    """
    mul = "*" if style == "plain" else ""
    out = ""
    order = range(len(coeffs)) if ascending else range(len(coeffs) - 1, -1, -1)
    for j in order:
        a = float(coeffs[j])
        if a == 0.0:
            continue
        if j == 0:
            mono = ""
        elif j == 1:
            mono = var
        else:
            mono = f"{var}^{j}" if style == "plain" else f"{var}^{{{j}}}"
        mag = _g(abs(a))
        body = mono if (mono and abs(a) == 1.0) else (f"{mag}{mul}{mono}" if mono else mag)
        if not out:
            out = ("-" if a < 0 else "") + body
        else:
            out += (" - " if a < 0 else " + ") + body
    return out or "0"


# -- commands ---------------------------------------------------------------


def cmd_logm(args, out):
    a = parse_matrix(args.file)
    pl = segment_plan(a, args.poly, args.tol)
    res = log_at_one(pl, residual=not args.no_residual)
    if args.json:
        payload = {
            "value": [[float(x) + 0.0 for x in row] for row in res.value],
            "t": res.t,
            "residual": _json_number(res.residual),
            "polynomial": _poly_json(pl.polynomial),
            "domain": _domain_json(pl.domain),
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(format_matrix(res.value))
        if args.verbose:
            out.write(f"# residual ||expm(X) - A|| / ||A|| = {_g(res.residual)}\n")
            out.write(f"# polynomial {pl.polynomial.kind}, degree {pl.k}, residual {_g(pl.polynomial.residual)}\n")
            out.write(f"# domain of I - (I - A) t: {pl.domain}\n")
    return EXIT_OK


def _truncate(t0, t1, dom, err):
    lo, hi = t0, t1
    if lo <= dom.lo:
        lo = dom.lo + 1e-9 * max(1.0, abs(dom.lo))
    if hi >= dom.hi:
        hi = dom.hi - 1e-9 * max(1.0, abs(dom.hi))
    if (lo, hi) != (t0, t1):
        err.write(f"warning: t range [{_g(t0)}, {_g(t1)}] truncated to [{_g(lo)}, {_g(hi)}]; D = {dom}\n")
    return lo, hi


def cmd_curve(args, out, err):
    a = parse_matrix(args.file)
    if args.samples < 1:
        raise ValueError(f"--samples must be positive, got {args.samples}")
    if args.t_end < args.t_start:
        raise ValueError(f"--t-end {args.t_end} is below --t-start {args.t_start}")
    n = a.shape[0]
    pl = plan(np.eye(n) - a, args.poly, args.tol)
    lo, hi = _truncate(args.t_start, args.t_end, pl.domain, err)
    if not lo <= hi:
        raise DomainError(args.t_start if args.t_start >= pl.domain.hi else args.t_end,
                          pl.domain.hi if args.t_start >= pl.domain.hi else pl.domain.lo,
                          "upper" if args.t_start >= pl.domain.hi else "lower")
    ts = np.linspace(lo, hi, args.samples) if args.samples > 1 else np.array([lo])
    out.write(",".join(["t"] + [f"x{i}{j}" for i in range(n) for j in range(n)]) + "\n")
    for t in ts:
        res = eval_log_curve(pl, t, residual=False)
        out.write(",".join([_g(t)] + [_g(x) for x in res.value.ravel()]) + "\n")
    if args.verbose:
        err.write(f"# polynomial {pl.polynomial.kind}, degree {pl.k}; D = {pl.domain}\n")
    return EXIT_OK


def _formula_plan(args, a):
    target = np.eye(a.shape[0]) - a if args.segment else a
    return plan(target, args.poly, args.tol)


def cmd_formula(args, out):
    a = parse_matrix(args.file)
    pl = _formula_plan(args, a)
    style = "latex" if args.latex else "plain"
    p = pl.polynomial
    asc = list(reversed((1.0,) + tuple(p.coeffs)))
    q = reciprocal_polynomial(p)
    if style == "plain":
        out.write(f"p(x) = {_render_poly(asc, 'x', style)}\n")
        out.write(f"q(s) = {_render_poly(q, 's', style, ascending=True)}\n")
        out.write(f"D = {pl.domain}\n")
        for i, f in enumerate(pl.functions, 1):
            out.write(f"f{i}(t) = {render(f, style)}\n")
    else:
        lam = r"\lambda"
        out.write(f"p({lam}) = {_render_poly(asc, lam, style)}\n")
        out.write(f"q(s) = {_render_poly(q, 's', style, ascending=True)}\n")
        lo = r"-\infty" if math.isinf(pl.domain.lo) else _g(pl.domain.lo)
        hi = r"\infty" if math.isinf(pl.domain.hi) else _g(pl.domain.hi)
        out.write(r"\mathcal{D} = " + f"({lo}, {hi})\n")
        for i, f in enumerate(pl.functions, 1):
            out.write(f"f_{{{i}}}(t) = {render(f, style)}\n")
    if args.verbose:
        out.write(f"# {p.kind} polynomial, residual {_g(p.residual)}"
                  + (" (minimal-degree search fell back)" if p.fallback else "") + "\n")
    return EXIT_OK


def check_grid(dom, points=CHECK_POINTS):
    """``points`` values of ``t`` spread over ``D`` intersected with ``[-0.5, 1]``.

    Finite endpoints of ``D`` are pulled in by 10% so that the oracles never
    approach a singularity of the integrands.
    """
    lo = 0.9 * dom.lo if dom.lo >= -0.5 else -0.5
    hi = 0.9 * dom.hi if dom.hi <= 1.0 else 1.0
    return np.linspace(lo, hi, points)


def run_checks(pl, grid, oracle_rtol=oracles.DEFAULT_RTOL):
    """Maximum discrepancy of each applicable oracle against the closed form.

    Discrepancies mix absolute and relative error: ``|a - b| / max(1, |b|)``.
    Returns a dict mapping oracle name to a float (``None`` if not applicable).
    """
    a = pl.matrix
    n = a.shape[0]
    closed = {float(t): pl.coefficients(float(t)) for t in grid}
    report = {"ode": 0.0, "quadrature": 0.0, "series": None, "expm": 0.0}

    def scaled(x, ref):
        return float(np.max(np.abs(np.asarray(x) - ref)) / max(1.0, float(np.max(np.abs(ref)))))

    for side in (-1.0, 1.0):
        stops = [float(t) for t in grid if t * side > 0.0]
        if not stops:
            continue
        end = max(stops, key=lambda s: s * side)
        sol = oracles.solve_putzer_ivp(pl.polynomial, end, oracle_rtol, t_eval=stops)
        for t in stops:
            report["ode"] = max(report["ode"], scaled(closed[t], sol.at(t)))
    for t in grid:
        t = float(t)
        quad = np.array([oracles.quad_integrand(r, t, oracle_rtol) for r in pl.integrands])
        report["quadrature"] = max(report["quadrature"], scaled(closed[t], quad))
        value = linear_combination(closed[t], pl.powers)
        target = np.eye(n) - a * t
        report["expm"] = max(report["expm"], inf_norm(oracles.expm(value) - target) / inf_norm(target))
        if inf_norm(a * t) < 0.9:
            ser = oracles.series_log(a, t)
            prev = report["series"] or 0.0
            report["series"] = max(prev, inf_norm(value - ser) / max(1.0, inf_norm(ser)))
    return report


def cmd_check(args, out, err):
    a = parse_matrix(args.file)
    pl = _formula_plan(args, a)
    grid = check_grid(pl.domain)
    report = run_checks(pl, grid)
    out.write(f"polynomial: {pl.polynomial.kind}, degree {pl.k}, residual {_g(pl.polynomial.residual)}\n")
    out.write(f"D = {pl.domain}; {len(grid)} points in [{_g(grid[0])}, {_g(grid[-1])}]\n")
    failed = []
    for name, value in report.items():
        if value is None:
            out.write(f"{name:<11} n/a\n")
            continue
        ok = value <= args.rtol
        if not ok:
            failed.append(name)
        out.write(f"{name:<11} {value:.3e}  {'ok' if ok else 'FAIL'}\n")
    if failed:
        err.write(f"verification failed: {', '.join(failed)} exceeded rtol {_g(args.rtol)}\n")
        return EXIT_VERIFY
    return EXIT_OK


# -- entry point ------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", default=None, help="matrix file (default: standard input)")
    common.add_argument("--poly", choices=("min", "char"), default="min", help="annihilating polynomial (default min)")
    common.add_argument("--tol", type=float, default=DEFAULT_MINPOLY_TOL, help="minimal-polynomial residual threshold")
    common.add_argument("--json", action="store_true", help="structured output (logm)")
    common.add_argument("--latex", action="store_true", help="LaTeX rendering (formula)")
    common.add_argument("--verbose", action="store_true", help="print diagnostics")
    common.add_argument("--no-residual", action="store_true", help="skip the exponential round-trip residual")

    parser = argparse.ArgumentParser(prog="putzerlog", description="Principal matrix logarithm by a Putzer-type closed form.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("logm", parents=[common], help="print log A")
    curve = sub.add_parser("curve", parents=[common], help="CSV samples of log((1-t)I + tA)")
    curve.add_argument("--t-start", type=float, default=0.0)
    curve.add_argument("--t-end", type=float, default=1.0)
    curve.add_argument("--samples", type=int, default=11)
    formula = sub.add_parser("formula", parents=[common], help="print p, q, D and the coefficient functions")
    formula.add_argument("--segment", action="store_true", help="plan on I - A (segment form) instead of A")
    check = sub.add_parser("check", parents=[common], help="compare the closed form against the oracles")
    check.add_argument("--rtol", type=float, default=DEFAULT_CHECK_RTOL)
    check.add_argument("--segment", action="store_true", help="plan on I - A (segment form) instead of A")
    return parser


def main(argv=None, out=None, err=None):
    """Run the CLI and return its exit status."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.command == "logm":
            return cmd_logm(args, out)
        if args.command == "curve":
            return cmd_curve(args, out, err)
        if args.command == "formula":
            return cmd_formula(args, out)
        return cmd_check(args, out, err)
    except (MatrixParseError, DimensionError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except PrincipalLogUndefined as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except DomainError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECONDITION
    except PutzerError as exc:
        err.write(f"numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_VERIFY
    except ValueError as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT


def console_main():
    sys.exit(main())
