"""Annihilating polynomials, spectra, and the admissible parameter interval.

Sign conventions follow the monic form

    p(x) = x**k + c1 x**(k-1) + ... + c(k-1) x + ck

so an :class:`AnnihilatingPolynomial` stores ``(c1, ..., ck)``. The
reciprocal polynomial ``q(s) = s**k p(1/s) = 1 + c1 s + ... + ck s**k`` is
kept in ascending order, which is the order in which it appears as a
denominator.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConvergenceError, DomainError, InconsistentFactorization
from .matrix_core import as_matrix, inf_norm, mat_poly_eval

DEFAULT_MINPOLY_TOL = 1e-9
DEFAULT_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class AnnihilatingPolynomial:
    """Monic polynomial ``p`` with ``p(A) = 0``.

    ``residual`` is ``||p(A)||_inf / ||A||_inf**k`` measured on the source
    matrix (0 for the zero matrix). ``fallback`` is set when a minimal
    polynomial was requested but no degree below ``n`` passed the residual
    test, so the characteristic polynomial was returned instead.
    """

    coeffs: tuple
    kind: str = "characteristic"
    residual: float = 0.0
    fallback: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("polynomial degree must be at least 1")
        if self.kind not in ("characteristic", "minimal"):
            raise ValueError(f"unknown polynomial kind {self.kind!r}")

    @property
    def k(self):
        return len(self.coeffs)

    def descending(self):
        """Coefficients ``[1, c1, ..., ck]`` (highest power first)."""
        return np.array((1.0,) + self.coeffs)

    def __call__(self, x):
        return np.polyval(self.descending(), x)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues grouped into real values and conjugate pairs.

    ``real_eigs`` holds ``(value, multiplicity)``; ``complex_pairs`` holds
    ``(re, im, multiplicity)`` with ``im > 0`` (the conjugate is implied).
    """

    real_eigs: tuple = ()
    complex_pairs: tuple = ()

    @property
    def degree(self):
        return sum(m for _, m in self.real_eigs) + 2 * sum(m for _, _, m in self.complex_pairs)

    def values(self):
        """All eigenvalues as a complex array, repeated by multiplicity."""
        out = []
        for v, m in self.real_eigs:
            out += [complex(v)] * m
        for re, im, m in self.complex_pairs:
            out += [complex(re, im), complex(re, -im)] * m
        return np.array(out, dtype=complex)


@dataclass(frozen=True)
class DomainInterval:
    """Open interval ``(lo, hi)`` of admissible parameters; ``0`` is always inside."""

    lo: float = -math.inf
    hi: float = math.inf

    def __contains__(self, t):
        return self.lo < t < self.hi

    def check(self, t):
        """Raise :class:`DomainError` naming the violated endpoint."""
        if not t > self.lo:
            raise DomainError(t, self.lo, "lower")
        if not t < self.hi:
            raise DomainError(t, self.hi, "upper")

    def __str__(self):
        lo = "-inf" if math.isinf(self.lo) else f"{self.lo:.12g}"
        hi = "+inf" if math.isinf(self.hi) else f"{self.hi:.12g}"
        return f"({lo}, {hi})"


@dataclass(frozen=True)
class RealFactorization:
    """``q(s) = constant * prod (s - r)**m * prod (s**2 + b s + c)**m``.

    ``linear`` holds ``(r, m)`` sorted by root; ``quadratics`` holds
    ``(b, c, m)`` with ``b**2 - 4c < 0``.
    """

    constant: float
    linear: tuple = ()
    quadratics: tuple = ()
    residual: float = 0.0

    @property
    def degree(self):
        return sum(m for _, m in self.linear) + 2 * sum(m for _, _, m in self.quadratics)

    def monic(self):
        """Ascending coefficients of the product of the factors (constant dropped)."""
        out = np.array([1.0])
        for r, m in self.linear:
            for _ in range(m):
                out = P.polymul(out, [-r, 1.0])
        for b, c, m in self.quadratics:
            for _ in range(m):
                out = P.polymul(out, [c, b, 1.0])
        return out

    def expand(self):
        """Ascending coefficients of the reconstructed ``q``."""
        return self.constant * self.monic()

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        out = np.full(s.shape, self.constant)
        for r, m in self.linear:
            out = out * (s - r) ** m
        for b, c, m in self.quadratics:
            out = out * (s * s + b * s + c) ** m
        return out


def _scale(a):
    sigma = inf_norm(a)
    return (sigma if sigma > 0 else 1.0), sigma


def polynomial_residual(coeffs, a):
    """``||p(a)||_inf / ||a||_inf**k``, evaluated on ``a / ||a||`` to avoid overflow."""
    a = as_matrix(a)
    sigma, _ = _scale(a)
    return inf_norm(mat_poly_eval([c / sigma**j for j, c in enumerate(coeffs, 1)], a / sigma))


def characteristic_polynomial(a):
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence.

    The recurrence runs on ``a / ||a||`` and the coefficients are rescaled
    afterwards, which keeps intermediate traces of order one.
    """
    a = as_matrix(a)
    n = a.shape[0]
    sigma, _ = _scale(a)
    a_hat = a / sigma
    eye = np.eye(n)
    m = np.zeros_like(a)
    c_prev = 1.0
    coeffs = []
    for j in range(1, n + 1):
        m = a_hat @ m + c_prev * eye
        c_prev = -np.trace(a_hat @ m) / j
        coeffs.append(c_prev * sigma**j + 0.0)
    return AnnihilatingPolynomial(tuple(coeffs), "characteristic", polynomial_residual(coeffs, a))


def minimal_polynomial(a, tol=DEFAULT_MINPOLY_TOL, eig_tol=DEFAULT_CLUSTER_TOL):
    """Lowest-degree monic ``p`` with ``||p(a)|| <= tol * ||a||**k``.

    Candidate degrees start at the number of distinct eigenvalues of ``a``
    (clustered with ``eig_tol``, conjugate pairs counting twice): below that
    no polynomial can annihilate ``a``, yet tightly packed spectra can make
    the residual test pass spuriously. For each candidate ``k`` the
    coefficients come from a least-squares fit of ``-vec(a**k)`` on
    ``vec(I), ..., vec(a**(k-1))``. A candidate is accepted only if it
    also factors consistently with the spectrum (see
    :func:`factor_reciprocal`); a Jordan block can otherwise let a
    polynomial one degree short pass the residual test. When no ``k < n``
    passes, the characteristic polynomial is returned with ``fallback=True``;
    when the spectrum alone already forces degree ``n`` no search is run and
    ``fallback`` stays False.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    a = as_matrix(a)
    n = a.shape[0]
    sigma, norm = _scale(a)
    if norm == 0.0:
        return AnnihilatingPolynomial((0.0,), "minimal", 0.0)
    spec = eigenvalues(a, eig_tol)
    k_min = max(1, len(spec.real_eigs) + 2 * len(spec.complex_pairs))
    a_hat = a / sigma
    powers = [np.eye(n)]
    for _ in range(1, k_min):
        powers.append(powers[-1] @ a_hat)
    for k in range(k_min, n):
        current = powers[-1] @ a_hat
        basis = np.column_stack([m.ravel() for m in powers[::-1]])  # a^(k-1), ..., I
        sol, *_ = np.linalg.lstsq(basis, -current.ravel(), rcond=None)
        residual = inf_norm(mat_poly_eval(sol, a_hat))
        if residual <= tol:
            coeffs = tuple(c * sigma**j + 0.0 for j, c in enumerate(sol, 1))
            if _consistent(coeffs, spec):
                return AnnihilatingPolynomial(coeffs, "minimal", residual)
        powers.append(current)
    cp = characteristic_polynomial(a)
    return AnnihilatingPolynomial(cp.coeffs, "characteristic", cp.residual,
                                  fallback=k_min < n)


def _consistent(coeffs, spec):
    try:
        factor_reciprocal(np.array((1.0,) + tuple(coeffs)), spec)
    except InconsistentFactorization:
        return False
    return True


def companion_matrix(p):
    """Companion matrix with an identity subdiagonal block and last column ``-(ck, ..., c1)``."""
    k = p.k
    c = np.zeros((k, k))
    c[1:, :-1] = np.eye(k - 1)
    c[:, -1] = -np.array(p.coeffs[::-1])
    return c


def _clusters(values, radius):
    """Single-linkage clusters of complex values; returns (mean, count) pairs."""
    remaining = list(values)
    groups = []
    while remaining:
        group = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for z in list(remaining):
                if min(abs(z - g) for g in group) <= radius:
                    group.append(z)
                    remaining.remove(z)
                    grew = True
        groups.append((complex(np.mean(group)), len(group)))
    return groups


def eigenvalues(a, tol=DEFAULT_CLUSTER_TOL):
    """Spectrum of ``a`` with multiplicities.

    Values whose imaginary part (or modulus) is below ``tol * ||a||_inf``
    are snapped to the real axis (or to zero); values closer than that are
    merged into one eigenvalue of higher multiplicity.
    """
    a = as_matrix(a)
    sigma, _ = _scale(a)
    try:
        # LAPACK geev: Hessenberg reduction followed by shifted QR
        z = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration did not converge: {exc}") from exc
    radius = tol * sigma
    upper = []
    n_lower = 0
    for w in z:
        if abs(w.imag) <= radius:
            re = 0.0 if abs(w.real) <= radius else w.real
            upper.append(complex(re, 0.0))
        elif w.imag > 0:
            upper.append(w)
        else:
            n_lower += 1
    real, pairs = [], []
    for mean, count in _clusters(upper, radius):
        if mean.imag == 0.0 or abs(mean.imag) <= radius:
            real.append((float(mean.real), count))
        else:
            pairs.append((float(mean.real), float(abs(mean.imag)), count))
    if sum(m for *_, m in pairs) != n_lower:
        raise ConvergenceError("eigenvalues are not closed under conjugation")
    real.sort()
    pairs.sort()
    return Spectrum(tuple(real), tuple(pairs))


def domain_interval(spec):
    """Open interval of ``t`` with ``1 - lam*t > 0`` for every real eigenvalue ``lam``."""
    pos = [v for v, _ in spec.real_eigs if v > 0]
    neg = [v for v, _ in spec.real_eigs if v < 0]
    lo = 1.0 / min(neg) if neg else -math.inf
    hi = 1.0 / max(pos) if pos else math.inf
    return DomainInterval(lo, hi)


def reciprocal_polynomial(p):
    """Ascending coefficients ``(1, c1, ..., ck)`` of ``q(s) = s**k p(1/s)``."""
    return np.array((1.0,) + tuple(p.coeffs))


def _expand_roots(linear, quads):
    out = np.array([1.0])
    for lam, e in linear:
        for _ in range(e):
            out = P.polymul(out, [1.0, -lam])
    for re, im, e in quads:
        for _ in range(e):
            out = P.polymul(out, [1.0, -2.0 * re, re * re + im * im])
    return out


def factor_reciprocal(q, spec, tol=1e-6):
    """Factor ``q`` over the reals using the roots ``1/lam`` of ``q(s) = prod(1 - lam s)``.

    The spectrum gives the distinct eigenvalues and their algebraic
    multiplicities; the multiplicity each one carries in ``p`` (which can be
    smaller for a minimal polynomial) is chosen as the combination whose
    expansion best reproduces ``q``.

    Raises
    ------
    InconsistentFactorization
        If no admissible combination reproduces ``q`` to ``tol * max|q_j|``.
    """
    q = np.asarray(q, dtype=float)
    k = len(q) - 1  # degree of p; zero eigenvalues lower the degree of q only
    scale = float(np.max(np.abs(q)))
    nonzero_real = [(v, m) for v, m in spec.real_eigs if v != 0.0]
    zero_mult = sum(m for v, m in spec.real_eigs if v == 0.0)
    pairs = list(spec.complex_pairs)

    best = None
    choices = [range(1, m + 1) for _, m in nonzero_real] + [range(1, m + 1) for *_, m in pairs]
    if zero_mult:
        choices.append(range(1, zero_mult + 1))
    for combo in itertools.product(*choices):
        lin = [(v, e) for (v, _), e in zip(nonzero_real, combo)]
        quad = [(re, im, e) for (re, im, _), e in zip(pairs, combo[len(lin):])]
        nzero = combo[-1] if zero_mult else 0
        deg = sum(e for _, e in lin) + 2 * sum(e for *_, e in quad) + nzero
        if deg != k:
            continue
        rec = _expand_roots(lin, quad)
        diff = np.zeros(max(len(rec), len(q)))
        diff[: len(q)] += q
        diff[: len(rec)] -= rec
        residual = float(np.max(np.abs(diff))) / scale
        if best is None or residual < best[0]:
            best = (residual, lin, quad)

    if best is None:
        raise InconsistentFactorization(
            f"no assignment of eigenvalue multiplicities gives degree {k}"
        )
    residual, lin, quad = best
    if residual > tol:
        raise InconsistentFactorization(
            f"spectrum does not reproduce q: relative residual {residual:.3e}"
        )
    constant = 1.0
    linear = []
    for lam, e in lin:
        constant *= (-lam) ** e
        linear.append((1.0 / lam, e))
    quadratics = []
    for re, im, e in quad:
        mod2 = re * re + im * im
        constant *= mod2**e
        quadratics.append((-2.0 * re / mod2, 1.0 / mod2, e))
    linear.sort()
    quadratics.sort()
    return RealFactorization(constant, tuple(linear), tuple(quadratics), residual)


def refine_polynomial(p, fact, a):
    """Replace the coefficients of ``p`` by those of the expanded factorisation.

    The eigenvalues are usually far more accurate than coefficients from the
    trace recurrence or the least-squares fit (those errors scale with
    ``||A||**j``), and the expansion is exactly consistent with the factors
    used for partial fractions. Coefficients belonging to zero eigenvalues
    come out as exact zeros.
    """
    q = fact.expand()
    coeffs = np.zeros(p.k)
    coeffs[: len(q) - 1] = q[1:]
    return AnnihilatingPolynomial(
        tuple(coeffs), p.kind, polynomial_residual(coeffs, a), p.fallback
    )
