"""
Degenerate and edge cases
=========================

Zero eigenvalues lower the degree of q and make the integrands improper;
repeated complex pairs call for Hermite reduction; eigenvalues on the
closed negative real axis have no principal logarithm.
"""

import numpy as np

from putzerlog import DomainError, PrincipalLogUndefined, eval_log_curve, logm, plan, render

# nilpotent: log(I - N t) is a polynomial in t
N = np.triu(np.ones((3, 3)), 1)
for i, f in enumerate(plan(N).functions, 1):
    print(f"nilpotent f{i}(t) =", render(f))

# a Jordan-coupled repeated complex pair produces rational terms
blk = np.array([[1.0, 2.0], [-2.0, 1.0]])
J = np.block([[blk, np.eye(2)], [np.zeros((2, 2)), blk]])
pl = plan(J)
print("\nrepeated pair, q factors:", pl.factorization.quadratics)
print("f4(t) =", render(pl.functions[3]))
print("LaTeX:", render(pl.functions[3], "latex"))

# the curve stops at the first singular point 1/lambda_max
A = np.diag([4.0, 1.0])
try:
    eval_log_curve(plan(A), 0.3)
except DomainError as exc:
    print("\n", exc)

# no principal logarithm for eigenvalues on (-inf, 0]
try:
    logm(np.diag([2.0, -1.0]))
except PrincipalLogUndefined as exc:
    print(exc)

# a rotation by almost pi is fine: its eigenvalues are off the real axis
th = 3.1
R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
print("\nlog of rotation by 3.1:\n", logm(R).value)
