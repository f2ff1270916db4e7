import mpmath
import numpy as np
import pytest

from fixtures import WORKED_A
from putzerlog.errors import DimensionError, SingularMatrixError
from putzerlog.matrix_core import (
    PIVOT_RTOL,
    as_matrix,
    inf_norm,
    linear_combination,
    lu_factor,
    mat_add,
    mat_mul,
    mat_poly_eval,
    mat_solve,
    matrix_powers,
)
from putzerlog.spectral import AnnihilatingPolynomial, companion_matrix


def test_as_matrix_promotes_scalar():
    assert as_matrix(5).shape == (1, 1)


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.ones(3), np.zeros((0, 0))])
def test_as_matrix_rejects_non_square(bad):
    with pytest.raises(DimensionError):
        as_matrix(bad)


@pytest.mark.parametrize("value", [np.nan, np.inf])
def test_as_matrix_rejects_non_finite(value):
    with pytest.raises(ValueError):
        as_matrix([[1.0, value], [0.0, 1.0]])


def test_mat_add_examples():
    i2 = np.eye(2)
    assert np.array_equal(mat_add(i2, i2), 2 * i2)
    assert np.array_equal(mat_add(WORKED_A, np.zeros((3, 3))), WORKED_A)
    assert np.array_equal(mat_add([[1, 2], [3, 4]], [[4, 3], [2, 1]]), [[5, 5], [5, 5]])


def test_mat_add_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_add(np.eye(2), np.eye(3))


def test_mat_mul_examples():
    assert np.array_equal(mat_mul(np.eye(3), WORKED_A), WORKED_A)
    inv = np.linalg.inv(WORKED_A)
    assert np.allclose(mat_mul(WORKED_A, inv), np.eye(3), atol=1e-14)
    c = companion_matrix(AnnihilatingPolynomial((13.0, 22.0)))
    assert np.array_equal(mat_mul(c, c), -13 * c - 22 * np.eye(2))


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        mat_mul(np.eye(2), np.eye(3))


def test_mat_mul_associative():
    rng = np.random.default_rng(0)
    for _ in range(20):
        a, b, c = (rng.standard_normal((5, 5)) for _ in range(3))
        lhs = mat_mul(mat_mul(a, b), c)
        rhs = mat_mul(a, mat_mul(b, c))
        scale = inf_norm(a) * inf_norm(b) * inf_norm(c)
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


def test_mat_poly_eval_examples():
    b = np.eye(3) - WORKED_A
    assert np.max(np.abs(mat_poly_eval([13.0, 22.0], b))) <= 1e-10
    assert np.array_equal(mat_poly_eval([-1.0], np.eye(4)), np.zeros((4, 4)))
    assert np.array_equal(mat_poly_eval([0.0], WORKED_A), WORKED_A)


def test_mat_poly_eval_empty_is_identity():
    assert np.array_equal(mat_poly_eval([], WORKED_A), np.eye(3))


def test_matrix_powers():
    pw = matrix_powers(WORKED_A, 3)
    assert len(pw) == 3
    assert np.array_equal(pw[0], np.eye(3))
    assert np.array_equal(pw[2], WORKED_A @ WORKED_A)


def test_linear_combination_examples():
    pw = matrix_powers(WORKED_A, 3)
    assert np.array_equal(linear_combination([0, 0, 0], pw), np.zeros((3, 3)))
    assert np.array_equal(linear_combination([1.0], [np.eye(2)]), np.eye(2))
    f1 = np.log(3) + 2 / 9 * np.log(0.25)
    f2 = np.log(0.25) / 9
    b = np.eye(3) - WORKED_A
    log_a = linear_combination([f1, f2], [np.eye(3), b])
    # eigen-decomposition reference for the symmetric-block structure
    w, v = np.linalg.eig(WORKED_A)
    ref = (v @ np.diag(np.log(w)) @ np.linalg.inv(v)).real
    assert np.allclose(log_a, ref, atol=1e-12)


def test_linear_combination_mismatches():
    with pytest.raises(DimensionError):
        linear_combination([1.0, 2.0], [np.eye(2)])
    with pytest.raises(DimensionError):
        linear_combination([1.0, 2.0], [np.eye(2), np.eye(3)])
    with pytest.raises(DimensionError):
        linear_combination([], [])


def test_mat_solve_examples():
    b = np.arange(9.0).reshape(3, 3)
    assert np.array_equal(mat_solve(np.eye(3), b), b)
    assert np.array_equal(mat_solve(2 * np.eye(3), np.eye(3)), 0.5 * np.eye(3))


def test_mat_solve_companion_derivative():
    # (I - C t) x' = -e2 at t = 0.1 reproduces the rational integrands
    c = companion_matrix(AnnihilatingPolynomial((13.0, 22.0)))
    t = 0.1
    x = mat_solve(np.eye(2) - c * t, np.array([0.0, -1.0]))
    q = 1 + 13 * t + 22 * t * t
    assert np.allclose(x, [22 * t / q, -1 / q], rtol=1e-14)


def test_mat_solve_residual_random():
    rng = np.random.default_rng(1)
    for n in (2, 5, 10, 20):
        a = rng.standard_normal((n, n))
        if np.linalg.cond(a) > 1e6:
            continue
        b = rng.standard_normal((n, 3))
        x = mat_solve(a, b)
        assert inf_norm(a @ x - b) <= 1e-10 * inf_norm(b)


def test_mat_solve_vector_rhs_shape():
    x = mat_solve(np.diag([1.0, 2.0]), np.array([1.0, 1.0]))
    assert x.shape == (2,)


def test_mat_solve_singular_reports_pivot():
    a = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]])
    with pytest.raises(SingularMatrixError) as info:
        mat_solve(a, np.ones(3))
    assert info.value.pivot == 1
    assert "pivot 1" in str(info.value)


def test_pivot_tolerance_is_relative():
    with pytest.raises(SingularMatrixError):
        lu_factor(np.array([[1.0, 1.0], [1.0, 1.0 + 0.5 * PIVOT_RTOL]]))
    lu_factor(np.array([[1.0, 1.0], [1.0, 1.0 + 10 * PIVOT_RTOL]]))
    # a uniformly small column is not singular
    lu_factor(np.array([[1.0, 0.0], [0.0, 1e-20]]))


def test_mat_solve_rhs_mismatch():
    with pytest.raises(DimensionError):
        mat_solve(np.eye(2), np.ones(3))


def test_mat_solve_multiprecision():
    mp = mpmath.MPContext()
    mp.dps = 30
    a = np.array([[mp.mpf(1), mp.mpf(2)], [mp.mpf(3), mp.mpf(4)]], dtype=object)
    x = mat_solve(a, np.array([mp.mpf(5), mp.mpf(6)], dtype=object))
    assert abs(x[0] + 4) < 1e-25 and abs(x[1] - 4.5) < 1e-25
