"""Independent numerical checks for the closed-form logarithm.

None of these routines use the partial-fraction machinery:

* :func:`solve_putzer_ivp` integrates the companion-matrix initial value
  problem with an adaptive Dormand-Prince 5(4) pair;
* :func:`quad_integrand` integrates the rational integrands with adaptive
  Gauss-Kronrod (7/15) quadrature;
* :func:`series_log` sums the Mercator series of ``log(I - A t)``;
* :func:`expm` is a scaling-and-squaring Taylor exponential used for
  round-trip residuals.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .matrix_core import as_matrix, inf_norm, lu_factor, lu_solve
from .spectral import companion_matrix

DEFAULT_RTOL = 1e-10


@dataclass(frozen=True)
class OdeSolution:
    """Accepted output points ``(t, x)`` of :func:`solve_putzer_ivp`."""

    grid: tuple
    tolerance: float
    steps: int = 0

    def at(self, t):
        for tt, x in self.grid:
            if tt == t:
                return x
        raise KeyError(t)

    @property
    def final(self):
        return self.grid[-1][1]


# Dormand-Prince 5(4) nodes and weights (stage coupling drops out for x' = g(t))
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])


def _ivp_rhs(p):
    """Right-hand side ``x' = (I - C t)^{-1} b`` of the companion system.

    ``b = -e2`` for ``k >= 2``; for ``k = 1`` it is ``(c1,)``, the coordinate
    of ``-A`` in the one-element basis ``{I}``.
    """
    k = p.k
    comp = companion_matrix(p)
    b = np.zeros(k)
    if k == 1:
        b[0] = p.coeffs[0]
    else:
        b[1] = -1.0
    eye = np.eye(k)

    def rhs(t):
        return lu_solve(lu_factor(eye - comp * t), b)

    return rhs


def _check_ivp_domain(p, t_end):
    roots = np.roots(p.descending())
    for lam in roots:
        if abs(lam.imag) <= 1e-12 * max(1.0, abs(lam)) and 1.0 - lam.real * t_end <= 0.0:
            bound = 1.0 / lam.real
            raise DomainError(t_end, bound, "upper" if bound > 0 else "lower")


def solve_putzer_ivp(p, t_end, rtol=DEFAULT_RTOL, atol=None, t_eval=None, max_steps=100000):
    """Integrate ``(I - C t) x' = -e2, x(0) = 0`` from 0 to ``t_end``.

    Parameters
    ----------
    p : AnnihilatingPolynomial
    t_end : float
        May be negative; the integration then runs backwards.
    rtol, atol : float
        Local error tolerances (``atol`` defaults to ``rtol``).
    t_eval : sequence of float, optional
        Extra output points between 0 and ``t_end``; steps are clipped to
        land on them exactly.

    Returns
    -------
    OdeSolution
        Grid starting at ``(0, zeros)`` and ending at ``t_end``.
    """
    _check_ivp_domain(p, t_end)
    atol = rtol if atol is None else atol
    rhs = _ivp_rhs(p)
    x = np.zeros(p.k)
    grid = [(0.0, x.copy())]
    if t_end == 0.0:
        return OdeSolution(tuple(grid), rtol)

    direction = math.copysign(1.0, t_end)
    stops = sorted({float(t) for t in (t_eval or ()) if 0.0 < t * direction < abs(t_end)} | {t_end},
                   key=lambda s: s * direction)
    t = 0.0
    f0 = rhs(t)
    h = direction * min(abs(t_end), 0.01 / max(1.0, float(np.max(np.abs(f0)))))
    steps = 0
    for stop in stops:
        while (stop - t) * direction > 0.0:
            if steps >= max_steps:
                raise ConvergenceError(f"step limit reached at t = {t!r}")
            if abs(h) <= 1e-14 * max(1.0, abs(t)):
                raise ConvergenceError(f"step size underflow at t = {t!r}")
            last = (t + h - stop) * direction >= 0.0
            if last:
                h = stop - t
            # the right-hand side depends on t only, so stage states are not needed
            k = [f0] + [rhs(t + _C[i] * h) for i in range(1, 7)]
            x_new = x + h * sum(b * kk for b, kk in zip(_B5, k))
            err_vec = h * sum((b5 - b4) * kk for b5, b4, kk in zip(_B5, _B4, k))
            scale = atol + rtol * np.maximum(np.abs(x), np.abs(x_new))
            err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
            steps += 1
            if err <= 1.0:
                t = stop if last else t + h
                x = x_new
                f0 = k[6]
                factor = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
            else:
                factor = max(0.2, 0.9 * err ** -0.2)
                last = False
            h *= factor
        grid.append((t, x.copy()))
    return OdeSolution(tuple(grid), rtol, steps)


# 15-point Kronrod nodes (non-negative half) and weights; the 7-point Gauss
# rule uses the odd-indexed nodes.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[1:7:2] = _WG[:3]
_GWEIGHTS[9:15:2] = _WG[:3][::-1]
_GWEIGHTS[7] = _WG[3]


def gauss_kronrod(f, a, b):
    """``(K15 estimate, |K15 - G7|)`` for the integral of ``f`` over ``[a, b]``."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _NODES), dtype=float)
    kron = half * float(_KWEIGHTS @ fx)
    gauss = half * float(_GWEIGHTS @ fx)
    return kron, abs(kron - gauss)


def adaptive_quad(f, a, b, rtol=DEFAULT_RTOL, atol=None, limit=500):
    """Globally adaptive Gauss-Kronrod integration of a vectorised ``f``."""
    atol = rtol * 1e-2 if atol is None else atol
    if a == b:
        return 0.0
    value, err = gauss_kronrod(f, a, b)
    heap = [(-err, a, b, value)]
    total, total_err = value, err
    while total_err > max(atol, rtol * abs(total)):
        if len(heap) >= limit:
            worst = heap[0]
            raise ConvergenceError(
                f"subdivision limit reached; worst interval [{worst[1]!r}, {worst[2]!r}] "
                f"with error estimate {-worst[0]:.3e}"
            )
        neg_err, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = gauss_kronrod(f, lo, mid)
        v2, e2 = gauss_kronrod(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
    # re-sum to shed drift from the running updates
    return float(sum(item[3] for item in heap))


def quad_integrand(r, t, rtol=DEFAULT_RTOL):
    """Numerical value of ``integral_0^t r(s) ds`` for a :class:`RationalIntegrand`."""
    for root, _ in r.denominator.linear:
        if min(0.0, t) <= root <= max(0.0, t):
            raise DomainError(t, root, "upper" if root > 0 else "lower")
    return adaptive_quad(r, 0.0, float(t), rtol=rtol)


def series_log(a, t, terms_cap=2000):
    """``log(I - a t) = -sum_m (a t)**m / m`` for ``||a t||_inf < 0.9``."""
    a = as_matrix(a)
    x = a * t
    if not inf_norm(x) < 0.9:
        raise ValueError(f"series needs ||A t||_inf < 0.9, got {inf_norm(x):.3g}")
    result = np.zeros_like(x)
    if t == 0.0 or inf_norm(x) == 0.0:
        return result
    power = np.eye(a.shape[0])
    for m in range(1, terms_cap + 1):
        power = power @ x
        term = power / m
        result -= term
        if inf_norm(term) < 1e-14 * inf_norm(result):
            return result
    raise ConvergenceError(f"series did not converge; last term norm {inf_norm(term):.3e}")


_TAYLOR_DEGREE = 13


def expm(x):
    """Matrix exponential by scaling and squaring with a degree-13 Taylor core.

    ``x`` is scaled by ``2**-s`` so that ``||x / 2**s||_inf <= 0.5``.
    """
    x = as_matrix(x)
    norm = inf_norm(x)
    s = 0 if norm <= 0.5 else int(math.ceil(math.log2(norm / 0.5)))
    if s > 1100:
        raise OverflowError(f"||X||_inf = {norm:.3e} is too large to exponentiate")
    y = x / 2.0**s
    eye = np.eye(x.shape[0])
    result = eye.copy()
    for j in range(_TAYLOR_DEGREE, 0, -1):
        result = eye + (y @ result) / j
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            result = result @ result
    if not np.all(np.isfinite(result)):
        raise OverflowError("matrix exponential overflowed")
    return result
