"""
Sampling the logarithm along a segment
======================================

One plan serves every t: the symbolic work (polynomial, spectrum,
partial fractions) is done once and each sample only evaluates k scalar
functions and a linear combination of cached powers.
"""

import numpy as np

from putzerlog import expm, segment_samples

rng = np.random.default_rng(0)
V = rng.standard_normal((4, 4))
# complex pair 1 +- 2i plus two real eigenvalues
D = np.array([[1.0, 2.0, 0, 0], [-2.0, 1.0, 0, 0], [0, 0, 3.0, 0], [0, 0, 0, 0.5]])
A = V @ D @ np.linalg.inv(V)

ts = np.linspace(0.0, 1.0, 6)
results = segment_samples(A, ts)

print("   t    ||log||    residual")
for t, r in zip(ts, results):
    print(f"{t:4.1f}  {np.abs(r.value).sum(1).max():9.5f}  {r.residual:.2e}")

# the curve starts at the zero matrix and ends at log A
M = (1 - ts[-1]) * np.eye(4) + ts[-1] * A
print("endpoint check:", np.abs(expm(results[-1].value) - M).max())

# the same samples from the command line:
#   putzerlog curve matrix.txt --samples 6
