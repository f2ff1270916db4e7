"""Closed-form coefficient functions of the Putzer-type logarithm formula.

Each coefficient function is the integral from 0 to ``t`` of a rational
function whose denominator is the reciprocal polynomial ``q``. This module
builds those integrands, splits them into real partial fractions, and
integrates every elementary piece symbolically into a
:class:`ClosedFormFunction` that can be evaluated and rendered.

Partial-fraction coefficients and term values are computed in
``WORKING_DPS``-digit arithmetic (mpmath) and rounded to ``float`` only on
output. Closely spaced eigenvalues make the log coefficients grow like the
inverse gaps while the functions themselves stay of order one; in double
precision that cancellation alone destroys 7-8 digits.

Term values are always evaluated as ``g(t) - g(0)``, so every function
vanishes exactly at ``t = 0``.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from numpy.polynomial import polynomial as P

from .errors import InconsistentFactorization, SingularMatrixError
from .matrix_core import mat_solve
from .spectral import DomainInterval, RealFactorization

WORKING_DPS = 40

_mp = mpmath.MPContext()
_mp.dps = WORKING_DPS
_ZERO = _mp.mpf(0)
_ONE = _mp.mpf(1)


def _m(x):
    return _mp.mpf(x)


@dataclass(frozen=True)
class RationalIntegrand:
    """``numerator(s) / q(s)``; numerator ascending, ``q`` in factored form."""

    index: int
    numerator: tuple
    denominator: RealFactorization

    def __call__(self, s):
        return P.polyval(s, self.numerator) / self.denominator(s)


# -- elementary fractions ---------------------------------------------------
# Coefficient fields hold mpmath numbers; ``__call__`` evaluates in floats.


@dataclass(frozen=True)
class Monomial:
    """``coef * s**power`` (polynomial part of an improper integrand)."""

    coef: object
    power: int

    def __call__(self, s):
        return float(self.coef) * np.asarray(s, dtype=float) ** self.power


@dataclass(frozen=True)
class LinearFraction:
    """``coef / (s - root)**power``."""

    coef: object
    root: float
    power: int

    def __call__(self, s):
        return float(self.coef) / (np.asarray(s, dtype=float) - self.root) ** self.power


@dataclass(frozen=True)
class QuadFraction:
    """``(lin*s + const) / (s**2 + b*s + c)**power``."""

    lin: object
    const: object
    b: float
    c: float
    power: int

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        return (float(self.lin) * s + float(self.const)) / (s * s + self.b * s + self.c) ** self.power


# -- antiderivative terms ---------------------------------------------------
# ``at(s)`` is the literal term; ``delta(t)`` is ``at(t) - at(0)`` computed
# without cancellation, both in working precision.


@dataclass(frozen=True)
class LogTerm:
    """``coef * ln|s - root|``."""

    coef: object
    root: float

    def at(self, s):
        return self.coef * _mp.log(abs(_m(s) - _m(self.root)))

    def delta(self, t):
        return self.coef * _mp.log1p(-_m(t) / _m(self.root))


@dataclass(frozen=True)
class QuadLogTerm:
    """``coef * ln(s**2 + b*s + c)``."""

    coef: object
    b: float
    c: float

    def at(self, s):
        s = _m(s)
        return self.coef * _mp.log(s * s + self.b * s + self.c)

    def delta(self, t):
        t = _m(t)
        return self.coef * _mp.log1p((t * t + self.b * t) / _m(self.c))


@dataclass(frozen=True)
class AtanTerm:
    """``coef * atan((2s + b) / sqrt(4c - b**2))``."""

    coef: object
    b: float
    c: float

    @property
    def width(self):
        return _mp.sqrt(4 * _m(self.c) - _m(self.b) ** 2)

    def at(self, s):
        return self.coef * _mp.atan((2 * _m(s) + self.b) / self.width)

    def delta(self, t):
        w = self.width
        x = (2 * _m(t) + self.b) / w
        y = _m(self.b) / w
        # atan(x) - atan(y) without a branch jump
        return self.coef * _mp.atan2(x - y, 1 + x * y)


@dataclass(frozen=True)
class RationalTerm:
    """``coef / (s - root)**power``."""

    coef: object
    root: float
    power: int

    def at(self, s):
        return self.coef / (_m(s) - self.root) ** self.power

    def delta(self, t):
        return self.at(t) - self.at(0)


@dataclass(frozen=True)
class QuadRationalTerm:
    """``(lin*s + const) / (s**2 + b*s + c)**power``, the rational part left by Hermite reduction."""

    lin: object
    const: object
    b: float
    c: float
    power: int

    def at(self, s):
        s = _m(s)
        return (self.lin * s + self.const) / (s * s + self.b * s + self.c) ** self.power

    def delta(self, t):
        return self.at(t) - self.at(0)


@dataclass(frozen=True)
class PolyTerm:
    """``coef * s**power``."""

    coef: object
    power: int

    def at(self, s):
        return self.coef * _m(s) ** self.power

    def delta(self, t):
        return self.at(t)


@dataclass(frozen=True)
class ClosedFormFunction:
    """Sum of antiderivative terms plus ``constant``, normalised so ``f(0) = 0``.

    ``constant`` is ``-sum(term.at(0))``. ``domain``, when set, is enforced
    by :func:`evaluate`.
    """

    terms: tuple = ()
    constant: object = _ZERO
    domain: DomainInterval = None

    def __call__(self, t):
        return evaluate(self, t)

    def raw(self, t):
        """Literal ``sum(term.at(t)) + constant`` as a float."""
        return float(sum((term.at(t) for term in self.terms), _ZERO) + self.constant)

    def with_domain(self, domain):
        return ClosedFormFunction(self.terms, self.constant, domain)


# -- polynomial helpers (ascending coefficient lists of mpf) ----------------


def _pmul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pdivmod(num, den):
    num = list(num)
    quot = [_ZERO] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        coef = num[shift + len(den) - 1] / lead
        quot[shift] = coef
        for j, d in enumerate(den):
            num[shift + j] -= coef * d
    return quot, num[: len(den) - 1]


def _factor_product(fact, which=None, keep=0):
    """Monic product of the factors; factor ``which`` is raised to ``keep`` instead."""
    out = [_ONE]
    for idx, (root, m) in enumerate(fact.linear):
        e = keep if which == ("lin", idx) else m
        for _ in range(e):
            out = _pmul(out, [-_m(root), _ONE])
    for idx, (b, c, m) in enumerate(fact.quadratics):
        e = keep if which == ("quad", idx) else m
        for _ in range(e):
            out = _pmul(out, [_m(c), _m(b), _ONE])
    return out


# -- operations -------------------------------------------------------------


def build_integrands(p, fact):
    """Integrands of the ``k`` coefficient functions.

    ``f1' = ck s**(k-1) / q``; for ``i >= 2`` the numerator is
    ``-(s**(i-2) + c1 s**(i-1) + ... + c(k-i) s**(k-2))``, which reduces to
    ``-s**(k-2)`` for ``i = k``. With ``k = 1`` only ``f1' = c1 / (1 + c1 s)``
    exists: the derivative of ``ln(1 - lam s)`` for ``p = x - lam``.
    """
    k = p.k
    c = (1.0,) + tuple(p.coeffs)
    integrands = [RationalIntegrand(1, tuple([0.0] * (k - 1) + [c[k]]), fact)]
    for i in range(2, k + 1):
        num = [0.0] * (k - 1)
        for j in range(0, k - i + 1):
            num[i - 2 + j] = -c[j]
        integrands.append(RationalIntegrand(i, tuple(num), fact))
    return integrands


def partial_fractions(r):
    """Real partial-fraction decomposition of a :class:`RationalIntegrand`.

    Improper integrands (``q`` loses degree when ``A`` has zero
    eigenvalues) are first reduced by polynomial division and the quotient
    comes back as :class:`Monomial` items. The remaining coefficients solve
    the square system obtained by clearing denominators and matching powers
    of ``s``.
    """
    fact = r.denominator
    num = [_m(x) / _m(fact.constant) for x in r.numerator]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    den = _factor_product(fact)
    d = len(den) - 1

    out = []
    if len(num) - 1 >= d and any(x != 0 for x in num):
        quot, num = _pdivmod(num, den)
        out += [Monomial(a, j) for j, a in enumerate(quot) if a != 0]
    if d == 0 or not any(x != 0 for x in num):
        return out

    rhs = np.array((list(num) + [_ZERO] * d)[:d], dtype=object)
    columns, shapes = [], []
    for idx, (root, m) in enumerate(fact.linear):
        for j in range(1, m + 1):
            columns.append(_factor_product(fact, ("lin", idx), m - j))
            shapes.append(("lin", root, j))
    for idx, (b, c, m) in enumerate(fact.quadratics):
        for j in range(1, m + 1):
            cof = _factor_product(fact, ("quad", idx), m - j)
            columns.append([_ZERO] + cof)
            columns.append(cof)
            shapes.append(("quad", b, c, j))
    system = np.empty((d, d), dtype=object)
    for col, poly in enumerate(columns):
        system[:, col] = (poly + [_ZERO] * d)[:d]
    try:
        sol = mat_solve(system, rhs)
    except SingularMatrixError as exc:
        raise InconsistentFactorization(
            f"partial-fraction system is singular (pivot {exc.pivot})"
        ) from exc

    pos = 0
    for shape in shapes:
        if shape[0] == "lin":
            out.append(LinearFraction(sol[pos], shape[1], shape[2]))
            pos += 1
        else:
            out.append(QuadFraction(sol[pos], sol[pos + 1], shape[1], shape[2], shape[3]))
            pos += 2
    return out


def _hermite_step(frac):
    """One Hermite reduction step for ``(u s + v) / Q**j``, ``j >= 2``.

    Writes ``u s + v = B Q + C Q'`` with ``B`` constant and ``C`` linear, so

        integral P/Q**j = -C / ((j-1) Q**(j-1)) + integral (B + C'/(j-1)) / Q**(j-1)
    """
    u, v, j = frac.lin, frac.const, frac.power
    b, c = _m(frac.b), _m(frac.c)
    # unknowns (B, c1, c0) with C = c1 s + c0 and Q' = 2 s + b
    system = np.array([
        [_ONE, _m(2), _ZERO],
        [b, b, _m(2)],
        [c, _ZERO, b],
    ], dtype=object)
    big_b, c1, c0 = mat_solve(system, np.array([_ZERO, u, v], dtype=object))
    rational = QuadRationalTerm(-c1 / (j - 1), -c0 / (j - 1), frac.b, frac.c, j - 1)
    remainder = QuadFraction(_ZERO, big_b + c1 / (j - 1), frac.b, frac.c, j - 1)
    return rational, remainder


def integrate_elementary(fractions, domain=None):
    """Antiderivative of a sum of elementary fractions with ``F(0) = 0``."""
    logs, quadlogs, atans, rationals, quad_rationals, polys = {}, {}, {}, [], [], []
    pending = list(fractions)
    while pending:
        fr = pending.pop(0)
        if isinstance(fr, Monomial):
            polys.append(PolyTerm(fr.coef / (fr.power + 1), fr.power + 1))
        elif isinstance(fr, LinearFraction):
            if fr.power == 1:
                logs[fr.root] = logs.get(fr.root, _ZERO) + fr.coef
            else:
                rationals.append(RationalTerm(fr.coef / (1 - fr.power), fr.root, fr.power - 1))
        elif isinstance(fr, QuadFraction):
            if fr.power == 1:
                key = (fr.b, fr.c)
                width = _mp.sqrt(4 * _m(fr.c) - _m(fr.b) ** 2)
                quadlogs[key] = quadlogs.get(key, _ZERO) + fr.lin / 2
                atans[key] = atans.get(key, _ZERO) + (fr.const - fr.lin * fr.b / 2) * 2 / width
            else:
                rational, remainder = _hermite_step(fr)
                quad_rationals.append(rational)
                pending.append(remainder)
        else:
            raise TypeError(f"not an elementary fraction: {fr!r}")

    terms = [LogTerm(coef, root) for root, coef in sorted(logs.items()) if coef != 0]
    terms += [QuadLogTerm(coef, b, c) for (b, c), coef in sorted(quadlogs.items()) if coef != 0]
    terms += [AtanTerm(coef, b, c) for (b, c), coef in sorted(atans.items()) if coef != 0]
    terms += sorted((t for t in rationals if t.coef != 0), key=lambda t: (t.root, t.power))
    terms += [t for t in quad_rationals if t.lin != 0 or t.const != 0]
    terms += sorted((t for t in polys if t.coef != 0), key=lambda t: t.power)
    constant = -sum((t.at(0) for t in terms), _ZERO)
    return ClosedFormFunction(tuple(terms), constant, domain)


def antiderivative(r, domain=None):
    """Closed-form ``f(t) = integral_0^t r(s) ds``."""
    return integrate_elementary(partial_fractions(r), domain)


def _evaluate_scalar(f, t):
    return float(sum((term.delta(t) for term in f.terms), _ZERO)) + 0.0


def evaluate(f, t):
    """Value of ``f`` at ``t`` (scalar or array).

    Raises
    ------
    DomainError
        If ``f.domain`` is set and some ``t`` lies outside it.
    """
    t_arr = np.asarray(t, dtype=float)
    if f.domain is not None:
        for tt in t_arr.ravel():
            f.domain.check(float(tt))
    if t_arr.ndim == 0:
        return _evaluate_scalar(f, float(t_arr))
    return np.array([_evaluate_scalar(f, float(tt)) for tt in t_arr.ravel()]).reshape(t_arr.shape)


# -- rendering --------------------------------------------------------------


def _num(x):
    return f"{float(x) + 0.0:.12g}"


def _rational(x, max_den=1000):
    frac = Fraction(x).limit_denominator(max_den)
    if frac.denominator > 1 and abs(float(frac) - x) <= 1e-12 * max(1.0, abs(x)):
        return frac
    return None


def _coef(x, style):
    """Render a positive multiplier: ``(p/q)`` for small-denominator fractions."""
    frac = _rational(x)
    if frac is not None:
        if style == "latex":
            return rf"\frac{{{frac.numerator}}}{{{frac.denominator}}}"
        return f"({frac.numerator}/{frac.denominator})"
    s = _num(x)
    if style == "plain" and s.isdigit():
        s += ".0"
    return s


def _power(j, style):
    if j == 1:
        return "t"
    return f"t^{j}" if style == "plain" else f"t^{{{j}}}"


def _poly(coeffs, style):
    """Render ascending coefficients, constant first: ``1+2*t``."""
    mul = "*" if style == "plain" else ""
    out = ""
    for j, a in enumerate(coeffs):
        a = float(a)
        if a == 0.0:
            continue
        mag = _num(abs(a))
        if j == 0:
            body = mag
        else:
            body = _power(j, style) if abs(a) == 1.0 else f"{mag}{mul}{_power(j, style)}"
        sign = "-" if a < 0 else ("+" if out else "")
        out += sign + body
    return out or "0"


def _over(num, den, power, style):
    if style == "latex":
        den = den if power == 1 else f"({den})^{{{power}}}"
        return rf"\frac{{{num}}}{{{den}}}"
    den = f"({den})" if power == 1 else f"({den})^{power}"
    return f"({num})/{den}"


def _term_parts(term, style):
    """``(signed multiplier, body, joiner)``; log forms are rendered so they vanish at 0."""
    ln = "ln" if style == "plain" else r"\ln"
    atan = "atan" if style == "plain" else r"\arctan"
    mul = "*" if style == "plain" else ""
    if isinstance(term, LogTerm):
        return float(term.coef), f"{ln}({_poly([1.0, -1.0 / term.root], style)})", mul
    if isinstance(term, QuadLogTerm):
        return float(term.coef), f"{ln}({_poly([1.0, term.b / term.c, 1.0 / term.c], style)})", mul
    if isinstance(term, AtanTerm):
        w = float(term.width)
        return float(term.coef), f"{atan}({_poly([term.b / w, 2.0 / w], style)})", mul
    if isinstance(term, RationalTerm):
        den = _poly([-term.root, 1.0], style)
        if style == "latex":
            return float(term.coef), _over("1", den, term.power, style), ""
        return float(term.coef), (f"({den})" if term.power == 1 else f"({den})^{term.power}"), "/"
    if isinstance(term, QuadRationalTerm):
        body = _over(_poly([term.const, term.lin], style), _poly([term.c, term.b, 1.0], style), term.power, style)
        return 1.0, body, None
    if isinstance(term, PolyTerm):
        return float(term.coef), _power(term.power, style), mul
    raise TypeError(term)


def _folded_constant(f):
    """Constant making the rendered expression vanish at 0.

    Log and polynomial terms render in forms already zero at 0
    (``ln(1+2*t)`` rather than ``ln|t+0.5|``); the others do not.
    """
    total = sum(
        (term.at(0) for term in f.terms if not isinstance(term, (LogTerm, QuadLogTerm, PolyTerm))),
        _ZERO,
    )
    return -float(total) + 0.0


def render(f, style="plain"):
    """Deterministic text form of ``f``.

    Terms appear as: logs by root, quadratic logs, arctangents, rational
    terms, polynomial terms, then the constant. Multipliers that are
    small-denominator fractions print as ``(p/q)``; every other number uses
    12 significant digits.
    """
    if style not in ("plain", "latex"):
        raise ValueError(f"unknown style {style!r}")
    pieces = []
    for term in f.terms:
        coef, body, joiner = _term_parts(term, style)
        if coef == 0.0:
            continue
        sign = "-" if coef < 0 else "+"
        if joiner is None:
            pieces.append(("+", body))
        else:
            pieces.append((sign, f"{_coef(abs(coef), style)}{joiner}{body}"))
    const = _folded_constant(f)
    if const != 0.0:
        pieces.append(("-" if const < 0 else "+", _num(abs(const))))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
