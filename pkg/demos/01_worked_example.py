"""
A 3x3 logarithm from start to finish
====================================

We take the matrix

    A = [[ 7,  4, -4],
         [ 4,  7, -4],
         [-1, -1,  4]]

and compute log A by planning on B = I - A, since
log((1 - t) I + t A) = log(I - B t) and t = 1 gives log A.
"""

import math

import numpy as np

from putzerlog import (
    eigenvalues,
    eval_log_curve,
    logm,
    minimal_polynomial,
    plan,
    reciprocal_polynomial,
    render,
)

A = np.array([[7.0, 4.0, -4.0], [4.0, 7.0, -4.0], [-1.0, -1.0, 4.0]])
B = np.eye(3) - A

# B has a repeated eigenvalue but is diagonalizable, so its minimal
# polynomial has degree 2 rather than 3
p = minimal_polynomial(B)
print("minimal polynomial coefficients:", np.round(p.coeffs, 12), "residual", p.residual)
print("spectrum of B:", eigenvalues(B))
print("q(s) ascending:", reciprocal_polynomial(p))

# The plan holds the closed-form coefficient functions f1, f2
pl = plan(B)
for i, f in enumerate(pl.functions, 1):
    print(f"f{i}(t) =", render(f))
print("admissible t:", pl.domain)

# Evaluate at t = 1 and compare with the hand-derived expression
res = eval_log_curve(pl, 1.0)
expected = (math.log(3) + 2 / 9 * math.log(0.25)) * np.eye(3) + math.log(0.25) / 9 * B
print("log A =\n", res.value)
print("max deviation from hand result:", np.max(np.abs(res.value - expected)))
print("round-trip residual ||expm(X) - A|| / ||A||:", res.residual)

# logm does the shift internally
assert np.allclose(logm(A).value, res.value, atol=1e-15)
