"""Random matrix fixtures shared by the test modules.

Eigenvector matrices are rejection-sampled to ``cond(V) <= MAX_COND`` so
that accuracy targets measure the formula, not an ill-conditioned basis.
"""

import numpy as np

MAX_COND = 100.0

WORKED_A = np.array([[7.0, 4.0, -4.0], [4.0, 7.0, -4.0], [-1.0, -1.0, 4.0]])


def random_basis(rng, n, max_cond=MAX_COND):
    while True:
        v = rng.standard_normal((n, n))
        if np.linalg.cond(v) <= max_cond:
            return v


def random_eigenvalues(rng, n, re_min=0.1, radius=10.0):
    """``n`` eigenvalues (conjugate pairs kept adjacent) with ``Re > re_min`` and ``|z| <= radius``."""
    eig = []
    while len(eig) < n:
        if n - len(eig) >= 2 and rng.random() < 0.5:
            z = rng.uniform(0.1, radius) * np.exp(1j * rng.uniform(0.0, np.pi / 2))
            if z.real > re_min and z.imag > 1e-3:
                eig += [z, z.conjugate()]
        else:
            eig.append(complex(rng.uniform(re_min, radius)))
    return eig


def block_diagonal(eig, jordan=()):
    """Real block form: 2x2 rotation-scaling blocks for pairs, ones above the diagonal at ``jordan``."""
    n = len(eig)
    d = np.zeros((n, n))
    i = 0
    while i < n:
        z = eig[i]
        if z.imag != 0.0:
            d[i:i + 2, i:i + 2] = [[z.real, z.imag], [-z.imag, z.real]]
            i += 2
        else:
            d[i, i] = z.real
            i += 1
    for i in jordan:
        d[i, i + 1] = 1.0
    return d


def random_diagonalizable(rng, n):
    """``(A, eigenvalues)`` for a random real diagonalizable ``A``."""
    eig = random_eigenvalues(rng, n)
    v = random_basis(rng, n)
    return v @ block_diagonal(eig) @ np.linalg.inv(v), eig


def random_repeated(rng, n):
    """Random ``A`` with repeated real eigenvalues and possibly a 2x2 Jordan block."""
    distinct = int(rng.integers(1, n))
    values = rng.uniform(0.5, 6.0, size=distinct)
    extra = rng.choice(values, size=n - distinct, replace=True)
    eig = [complex(x) for x in sorted(np.concatenate([values, extra]))]
    jordan = [i for i in range(n - 1) if eig[i] == eig[i + 1]][:1] if rng.random() < 0.5 else []
    v = random_basis(rng, n)
    return v @ block_diagonal(eig, jordan) @ np.linalg.inv(v), eig
