"""Principal logarithm as a polynomial in the matrix.

For a matrix ``A`` and an annihilating polynomial of degree ``k``,

    log(I - A t) = f1(t) I + f2(t) A + ... + fk(t) A**(k-1)

for every ``t`` in the admissible interval of ``A``. :func:`plan` does the
one-off symbolic work (polynomial, spectrum, factorisation, antiderivatives)
and :func:`eval_log_curve` evaluates the formula at any ``t``.

:func:`logm` obtains ``log A`` by planning on ``B = I - A`` and evaluating at
``t = 1``, since ``I - B t = (1 - t) I + t A``; :func:`segment_samples` does
the same for points of the segment from ``I`` to ``A``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import antiderivative, build_integrands, evaluate
from .errors import DomainError, PrincipalLogUndefined
from .matrix_core import as_matrix, inf_norm, linear_combination, matrix_powers
from .oracles import expm
from .spectral import (
    DEFAULT_CLUSTER_TOL,
    DEFAULT_MINPOLY_TOL,
    characteristic_polynomial,
    domain_interval,
    eigenvalues,
    factor_reciprocal,
    minimal_polynomial,
    reciprocal_polynomial,
    refine_polynomial,
)

#: relative half-width of the band treated as the closed negative real axis
NEGATIVE_AXIS_TOL = 1e-9

_KINDS = {"minimal": "minimal", "min": "minimal", "characteristic": "characteristic", "char": "characteristic"}


@dataclass(frozen=True)
class PutzerPlan:
    """Everything needed to evaluate ``log(I - A t)`` for many ``t``."""

    matrix: np.ndarray
    polynomial: object
    spectrum: object
    factorization: object
    integrands: tuple
    functions: tuple
    domain: object
    powers: tuple

    @property
    def k(self):
        return self.polynomial.k

    def coefficients(self, t):
        """``(f1(t), ..., fk(t))`` after checking ``t`` against the domain."""
        self.domain.check(t)
        return np.array([evaluate(f, t) for f in self.functions])


@dataclass(frozen=True)
class LogResult:
    """A computed logarithm and its diagnostics.

    ``residual`` is ``||expm(value) - (I - A t)|| / ||I - A t||`` (``nan``
    when skipped); ``polynomial_residual`` is ``||p(A)|| / ||A||**k``.
    """

    value: np.ndarray
    t: float
    residual: float
    polynomial_residual: float
    coefficients: tuple = ()


def plan(a, poly_kind="minimal", tol=DEFAULT_MINPOLY_TOL, eig_tol=DEFAULT_CLUSTER_TOL):
    """Build a :class:`PutzerPlan` for the curve ``t -> log(I - a t)``.

    Parameters
    ----------
    a : array_like, shape (n, n)
    poly_kind : {"minimal", "characteristic"}
    tol : float
        Residual threshold for accepting a minimal-polynomial degree.
    eig_tol : float
        Relative eigenvalue clustering tolerance.
    """
    a = as_matrix(a)
    try:
        kind = _KINDS[poly_kind]
    except KeyError:
        raise ValueError(f"unknown polynomial kind {poly_kind!r}") from None
    poly = minimal_polynomial(a, tol) if kind == "minimal" else characteristic_polynomial(a)
    spec = eigenvalues(a, eig_tol)
    fact = factor_reciprocal(reciprocal_polynomial(poly), spec)
    poly = refine_polynomial(poly, fact, a)
    dom = domain_interval(spec)
    integrands = tuple(build_integrands(poly, fact))
    functions = tuple(antiderivative(r, dom) for r in integrands)
    powers = tuple(matrix_powers(a, poly.k))
    return PutzerPlan(a, poly, spec, fact, integrands, functions, dom, powers)


def _residual(value, target):
    denom = inf_norm(target)
    return inf_norm(expm(value) - target) / (denom if denom > 0 else 1.0)


def eval_log_curve(plan, t, residual=True):
    """``log(I - A t)`` from the plan's closed-form coefficients.

    Raises
    ------
    DomainError
        If ``t`` is outside the plan's admissible interval.
    """
    t = float(t)
    coeffs = plan.coefficients(t)
    value = linear_combination(coeffs, plan.powers) + 0.0
    target = np.eye(plan.matrix.shape[0]) - plan.matrix * t
    res = _residual(value, target) if residual else math.nan
    return LogResult(value, t, res, plan.polynomial.residual, tuple(coeffs))


def negative_axis_eigenvalues(a, tol=NEGATIVE_AXIS_TOL):
    """Eigenvalues of ``a`` within the band around the closed negative real axis."""
    a = as_matrix(a)
    band = tol * inf_norm(a)
    return [z for z in np.linalg.eigvals(a) if abs(z.imag) <= band and z.real <= band]


def segment_plan(a, poly_kind="minimal", tol=DEFAULT_MINPOLY_TOL, neg_tol=NEGATIVE_AXIS_TOL):
    """Plan for ``B = I - a``, whose curve ``log(I - B t)`` is ``log((1 - t) I + t a)``.

    Raises
    ------
    PrincipalLogUndefined
        If ``a`` has an eigenvalue within the negative-axis band.
    """
    a = as_matrix(a)
    bad = negative_axis_eigenvalues(a, neg_tol)
    if bad:
        raise PrincipalLogUndefined(bad)
    return plan(np.eye(a.shape[0]) - a, poly_kind, tol)


def log_at_one(pl, residual=True):
    """``log A`` from a :func:`segment_plan`, i.e. the curve at ``t = 1``."""
    try:
        return eval_log_curve(pl, 1.0, residual)
    except DomainError as exc:
        eigs = np.linalg.eigvals(np.eye(pl.matrix.shape[0]) - pl.matrix)
        bad = [z for z in eigs if z.real <= 0.0]
        raise PrincipalLogUndefined(bad or eigs) from exc


def logm(a, poly_kind="minimal", tol=DEFAULT_MINPOLY_TOL, neg_tol=NEGATIVE_AXIS_TOL, residual=True):
    """Principal logarithm of ``a``.

    Raises
    ------
    PrincipalLogUndefined
        If ``a`` has an eigenvalue on (or within ``neg_tol * ||a||`` of) the
        closed negative real axis.
    """
    return log_at_one(segment_plan(a, poly_kind, tol, neg_tol), residual)


def segment_samples(a, ts, poly_kind="minimal", tol=DEFAULT_MINPOLY_TOL, neg_tol=NEGATIVE_AXIS_TOL, residual=True):
    """``log((1 - t) I + t a)`` for each ``t`` in ``ts`` (all in ``[0, 1]``), sharing one plan."""
    ts = [float(t) for t in ts]
    for t in ts:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"segment parameter {t!r} is outside [0, 1]")
    pl = segment_plan(a, poly_kind, tol, neg_tol)
    return [eval_log_curve(pl, t, residual) for t in ts]
