"""
Checking the closed form against independent oracles
====================================================

The coefficient vector (f1(t), ..., fk(t)) solves a k-dimensional linear
ODE driven by the companion matrix; each f_i is also a definite integral
of a rational function. Both can be computed numerically without any
partial fractions, which gives two independent checks.
"""

import numpy as np

from putzerlog import eval_log_curve, plan, quad_integrand, series_log, solve_putzer_ivp

rng = np.random.default_rng(3)
A = rng.standard_normal((5, 5))
pl = plan(A)
print("polynomial degree", pl.k, "| domain", pl.domain)

lo = max(pl.domain.lo, -1.0) * 0.9
hi = min(pl.domain.hi, 1.0) * 0.9
for t in np.linspace(lo, hi, 5):
    closed = pl.coefficients(t)
    ode = solve_putzer_ivp(pl.polynomial, t).final
    quad = np.array([quad_integrand(r, t) for r in pl.integrands])
    print(f"t={t:+.3f}  |closed-ode|={np.max(np.abs(closed - ode)):.1e}  "
          f"|closed-quad|={np.max(np.abs(closed - quad)):.1e}")

# near t = 0 the Mercator series applies as well
t = 0.5 / np.abs(A).sum(1).max()
diff = eval_log_curve(pl, t).value - series_log(A, t)
print("series agreement at small t:", np.abs(diff).max())

# `putzerlog check matrix.txt` runs all of this on a 9-point grid
