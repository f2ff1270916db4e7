"""Dense real matrix kernels.

Matrices are plain ``float64`` :class:`numpy.ndarray` objects of shape
``(n, n)``; :func:`as_matrix` is the single entry point that enforces the
square/finite invariants. Products are delegated to BLAS through ``@``; the
linear solver is a hand-written LU with partial pivoting so that singularity
is decided by an explicit, documented pivot tolerance.
"""

import numpy as np

from .errors import DimensionError, SingularMatrixError

#: relative pivot tolerance used by :func:`mat_solve`
PIVOT_RTOL = 1e-13


def as_matrix(a):
    """Return ``a`` as a square, finite ``float64`` array.

    Scalars and 1-element sequences are promoted to ``1 x 1`` matrices.
    """
    m = np.array(a, dtype=float)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _check_same(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def identity(n):
    return np.eye(n)


def mat_add(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a + b


def mat_mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    _check_same(a, b)
    return a @ b


def inf_norm(a):
    """Maximum absolute row sum."""
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        return float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.max(np.sum(np.abs(a), axis=1))) if a.size else 0.0


def mat_poly_eval(coeffs, a):
    """Evaluate the monic polynomial ``x**k + c1 x**(k-1) + ... + ck`` at a matrix.

    Parameters
    ----------
    coeffs : sequence of float
        ``c1, ..., ck`` (the leading 1 is implicit).
    a : array_like, shape (n, n)

    Returns
    -------
    ndarray
        ``p(a)`` computed by Horner's scheme.
    """
    a = as_matrix(a)
    eye = np.eye(a.shape[0])
    result = eye.copy()
    for c in coeffs:
        result = result @ a + float(c) * eye
    return result


def matrix_powers(a, k):
    """Return ``[I, a, a**2, ..., a**(k-1)]``."""
    a = as_matrix(a)
    powers = [np.eye(a.shape[0])]
    for _ in range(k - 1):
        powers.append(powers[-1] @ a)
    return powers


def linear_combination(scalars, powers):
    """Return ``sum(f * P for f, P in zip(scalars, powers))``."""
    scalars = list(scalars)
    powers = list(powers)
    if len(scalars) != len(powers):
        raise DimensionError(
            f"{len(scalars)} scalars but {len(powers)} matrices"
        )
    if not powers:
        raise DimensionError("need at least one matrix")
    shape = np.shape(powers[0])
    out = np.zeros(shape)
    for f, p in zip(scalars, powers):
        p = np.asarray(p, dtype=float)
        if p.shape != shape:
            raise DimensionError(f"dimension mismatch: {p.shape} vs {shape}")
        out += float(f) * p
    return out


def _working_copy(a):
    """Float copy of ``a``, or an object copy when ``a`` holds mpmath numbers."""
    if isinstance(a, np.ndarray) and a.dtype == object:
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
        return a.copy()
    return as_matrix(a).copy()


def lu_factor(a):
    """LU factorisation with partial pivoting, ``P a = L U``.

    Returns the packed ``LU`` array and the row permutation. Raises
    :class:`SingularMatrixError` when a pivot falls below
    ``PIVOT_RTOL * max initial column magnitude``. Object arrays of
    multiprecision numbers are factorised in their own arithmetic.
    """
    lu = _working_copy(a)
    n = lu.shape[0]
    perm = np.arange(n)
    col_scale = np.max(np.abs(lu), axis=0)
    for j in range(n):
        p = j + int(np.argmax(np.abs(lu[j:, j])))
        pivot = lu[p, j]
        if abs(pivot) <= PIVOT_RTOL * col_scale[j] or pivot == 0:
            raise SingularMatrixError(j, abs(pivot))
        if p != j:
            lu[[j, p]] = lu[[p, j]]
            perm[[j, p]] = perm[[p, j]]
        lu[j + 1:, j] /= pivot
        lu[j + 1:, j + 1:] -= np.outer(lu[j + 1:, j], lu[j, j + 1:])
    return lu, perm


def lu_solve(factors, b):
    lu, perm = factors
    b = np.asarray(b, dtype=lu.dtype)
    vector = b.ndim == 1
    x = b[perm].reshape(len(perm), -1).copy()
    n = lu.shape[0]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x[:, 0] if vector else x


def mat_solve(a, b):
    """Solve ``a X = b`` for a vector or matrix right-hand side."""
    a = _working_copy(a)
    b = np.asarray(b, dtype=a.dtype)
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return lu_solve(lu_factor(a), b)
