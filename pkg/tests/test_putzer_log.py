import math

import numpy as np
import pytest
import scipy.linalg

from fixtures import WORKED_A, random_basis, random_diagonalizable, random_repeated
from putzerlog.errors import DomainError, PrincipalLogUndefined
from putzerlog.matrix_core import inf_norm, linear_combination
from putzerlog.oracles import solve_putzer_ivp
from putzerlog.putzer_log import (
    eval_log_curve,
    logm,
    negative_axis_eigenvalues,
    plan,
    segment_plan,
    segment_samples,
)
from putzerlog.spectral import domain_interval, eigenvalues

B3 = np.eye(3) - WORKED_A
LOG_A = (math.log(3) + 2 / 9 * math.log(0.25)) * np.eye(3) + math.log(0.25) / 9 * B3


def test_plan_worked_example():
    pl = plan(B3)
    assert pl.k == 2 and len(pl.functions) == 2 and len(pl.powers) == 2
    assert pl.domain == domain_interval(eigenvalues(B3))
    assert pl.polynomial.coeffs == pytest.approx((13.0, 22.0), abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 4])
def test_plan_identity(n):
    pl = plan(np.eye(n))
    assert pl.k == 1 and pl.domain.hi == 1.0 and pl.domain.lo == -math.inf
    assert pl.functions[0](0.5) == pytest.approx(math.log(0.5), abs=1e-15)


def test_plan_zero_matrix():
    pl = plan(np.zeros((3, 3)))
    assert pl.k == 1 and pl.polynomial.coeffs == (0.0,)
    assert pl.functions[0](123.0) == 0.0
    assert np.array_equal(eval_log_curve(pl, 5.0).value, np.zeros((3, 3)))


def test_plan_characteristic_kind():
    pl = plan(B3, "char")
    assert pl.k == 3 and pl.polynomial.kind == "characteristic"


def test_plan_rejects_unknown_kind():
    with pytest.raises(ValueError):
        plan(B3, "jordan")


def test_eval_log_curve_examples():
    pl = plan(B3)
    assert np.array_equal(eval_log_curve(pl, 0.0).value, np.zeros((3, 3)))
    res = eval_log_curve(pl, 1.0)
    assert np.max(np.abs(res.value - LOG_A)) <= 1e-13
    assert res.residual <= 1e-14 and res.t == 1.0
    lam = -2.5
    res = eval_log_curve(plan([[lam]]), 0.3)
    assert res.value[0, 0] == pytest.approx(math.log(1 - lam * 0.3), abs=1e-15)


def test_eval_log_curve_domain_error_names_endpoint():
    pl = plan(WORKED_A)
    with pytest.raises(DomainError) as info:
        eval_log_curve(pl, 0.1)
    assert info.value.side == "upper"
    assert info.value.endpoint == pytest.approx(1 / 12)
    assert "upper endpoint" in str(info.value)


def test_eval_log_curve_skip_residual():
    assert math.isnan(eval_log_curve(plan(B3), 0.5, residual=False).residual)


def test_logm_examples():
    res = logm(WORKED_A)
    assert np.max(np.abs(res.value - LOG_A)) <= 1e-13
    assert res.residual <= 1e-14
    assert np.array_equal(logm(np.eye(3)).value, np.zeros((3, 3)))
    d = logm(np.diag([math.e, math.e**2])).value
    assert np.allclose(d, np.diag([1.0, 2.0]), atol=1e-14)


def test_logm_matches_scipy():
    rng = np.random.default_rng(31)
    for _ in range(20):
        a, _ = random_diagonalizable(rng, int(rng.integers(2, 8)))
        ref = scipy.linalg.logm(a).real
        assert inf_norm(logm(a).value - ref) <= 1e-8 * max(1.0, inf_norm(ref))


@pytest.mark.parametrize(
    "a",
    [
        [[-1.0]],
        [[0.0]],
        np.diag([1.0, -2.0]),
        np.diag([3.0, 1e-12]),
    ],
)
def test_logm_rejects_closed_negative_axis(a):
    with pytest.raises(PrincipalLogUndefined) as info:
        logm(a)
    assert info.value.eigenvalues


def test_logm_error_lists_eigenvalue():
    with pytest.raises(PrincipalLogUndefined) as info:
        logm([[-1.0]])
    assert "-1" in str(info.value)


def test_negative_axis_band():
    assert negative_axis_eigenvalues([[1.0]]) == []
    assert len(negative_axis_eigenvalues(np.diag([1.0, -1e-3]))) == 1
    rot = np.array([[-1.0, 1e-3], [-1e-3, -1.0]])
    assert negative_axis_eigenvalues(rot) == []
    logm(rot)  # complex pair near -1 but off the axis


def test_logm_complex_eigenvalues_near_negative_axis():
    theta = 3.0
    a = 2.0 * np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    x = logm(a).value
    assert np.allclose(x, [[math.log(2.0), -theta], [theta, math.log(2.0)]], atol=1e-12)


def test_segment_samples_examples():
    (r0,) = segment_samples(WORKED_A, [0.0])
    assert np.array_equal(r0.value, np.zeros((3, 3)))
    (r1,) = segment_samples(WORKED_A, [1.0])
    assert np.max(np.abs(r1.value - LOG_A)) <= 1e-13
    (rh,) = segment_samples(WORKED_A, [0.5])
    f1 = 11 / 9 * math.log(2.0) - 2 / 9 * math.log(6.5)
    f2 = math.log(2.0 / 6.5) / 9
    assert np.max(np.abs(rh.value - (f1 * np.eye(3) + f2 * B3))) <= 1e-13


def test_segment_samples_rejects_out_of_range():
    with pytest.raises(ValueError):
        segment_samples(WORKED_A, [1.5])


def test_segment_plan_shares_plan():
    pl = segment_plan(WORKED_A)
    assert np.array_equal(pl.matrix, B3)


def _fixtures(seed, count, kind=random_diagonalizable, nmax=8):
    rng = np.random.default_rng(seed)
    return [kind(rng, int(rng.integers(2, nmax + 1)))[0] for _ in range(count)]


def test_round_trip_small_batch():
    from putzerlog.oracles import expm

    for a in _fixtures(32, 25):
        x = logm(a).value
        assert inf_norm(expm(x) - a) <= 1e-8 * inf_norm(a)


def test_strip_condition():
    for a in _fixtures(33, 25) + _fixtures(34, 10, random_repeated, 6):
        w = np.linalg.eigvals(logm(a).value)
        assert np.all(np.abs(w.imag) < math.pi - 1e-9)


def test_commutation():
    for a in _fixtures(35, 20):
        x = logm(a).value
        assert inf_norm(x @ a - a @ x) <= 1e-8 * inf_norm(a) * inf_norm(x)


def test_polynomial_kind_independence():
    for a in _fixtures(36, 15, random_repeated, 6):
        x_min = logm(a, "min").value
        x_char = logm(a, "char").value
        assert inf_norm(x_min - x_char) <= 1e-7 * inf_norm(x_min)


def test_curve_consistency_with_ode():
    for a in _fixtures(37, 8, nmax=5):
        pl = plan(a)
        t = 0.5 * min(pl.domain.hi, 1.0)
        sol = solve_putzer_ivp(pl.polynomial, t)
        ref = linear_combination(sol.final, pl.powers)
        assert np.max(np.abs(eval_log_curve(pl, t).value - ref)) <= 1e-7 * max(1.0, inf_norm(ref))


def test_symmetric_positive_definite():
    rng = np.random.default_rng(38)
    for n in (2, 3, 5, 8):
        q = np.linalg.qr(rng.standard_normal((n, n)))[0]
        a = q @ np.diag(rng.uniform(0.2, 9.0, n)) @ q.T
        a = (a + a.T) / 2
        x = logm(a).value
        assert np.max(np.abs(x - x.T)) <= 1e-9
        assert np.allclose(x, scipy.linalg.logm(a).real, atol=1e-9)


def test_defective_matrix():
    j = np.array([[2.0, 1.0], [0.0, 2.0]])
    x = logm(j).value
    assert np.allclose(x, [[math.log(2.0), 0.5], [0.0, math.log(2.0)]], atol=1e-14)
    v = random_basis(np.random.default_rng(39), 2)
    a = v @ j @ np.linalg.inv(v)
    assert np.allclose(logm(a).value, v @ x @ np.linalg.inv(v), atol=1e-9)
