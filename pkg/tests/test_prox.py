import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldsplit.errors import DataError, DimensionError, ParameterError
from goldsplit.linops import DenseOperator, estimate_operator_norm
from goldsplit.prox import (
    GroupL21Prox,
    L1Prox,
    LeastSquares,
    Logistic,
    MaskedLeastSquares,
    QuadraticRidge,
    SquaredL2Prox,
    SumSmooth,
    ZeroProx,
    moreau_conjugate_prox,
    prox_group_l21,
    prox_l1,
    prox_sq_l2,
)

from oracles import central_difference_grad, gradient_descent_prox


# ---------------------------------------------------------------------------
# proximal maps


def test_prox_l1_examples():
    assert np.all(prox_l1(np.zeros(4), 1.3, 0.7) == 0.0)
    assert np.allclose(prox_l1(np.array([3.0, -0.5]), 1.0, 1.0), [2.0, 0.0])
    v = np.array([1.0, -2.0, 0.3])
    assert np.array_equal(prox_l1(v, 0.0, 5.0), v)


def test_prox_l1_rejects_negative_parameters():
    with pytest.raises(ParameterError):
        prox_l1(np.zeros(2), -0.1, 1.0)
    with pytest.raises(ParameterError):
        prox_l1(np.zeros(2), 1.0, -1.0)


def test_prox_group_l21_examples():
    # single pixel (3, 4): norm 5
    v = np.array([3.0, 4.0])
    assert np.allclose(prox_group_l21(v, 1.0, 5.0, 1), [0.0, 0.0])
    assert np.allclose(prox_group_l21(v, 1.0, 2.5, 1), [1.5, 2.0])
    assert np.array_equal(prox_group_l21(v, 1.0, 0.0, 1), v)


def test_prox_group_l21_zero_pixel_stays_zero():
    v = np.array([0.0, 1.0, 0.0, 1.0])  # pixel 0 is (0, 0)
    out = prox_group_l21(v, 1.0, 0.5, 2)
    assert out[0] == 0.0 and out[2] == 0.0


def test_prox_group_l21_shape_mismatch():
    with pytest.raises(DimensionError):
        prox_group_l21(np.zeros(5), 1.0, 1.0, 2)


def test_prox_sq_l2_examples(rng):
    b = rng.standard_normal(6)
    assert np.allclose(SquaredL2Prox(1.0, b).prox(b, 3.7), b)
    assert np.allclose(prox_sq_l2(np.array([4.0]), 1.0, 1.0, None), [2.0])


def test_prox_sq_l2_matches_gradient_descent_oracle(rng):
    b = rng.standard_normal(5)
    v = rng.standard_normal(5)
    t, w = 0.8, 1.7
    got = prox_sq_l2(v, t, w, b)
    expect = gradient_descent_prox(
        lambda u: 0.5 * w * np.sum((u - b) ** 2),
        lambda u: w * (u - b),
        v,
        t,
        iters=20000,
    )
    assert np.max(np.abs(got - expect)) < 1e-8


def test_prox_zero_identity(rng):
    v = rng.standard_normal(7)
    assert ZeroProx().prox(v, 1e7) is v
    assert np.array_equal(L1Prox(0.0).prox(v, 2.0), v)


def test_moreau_l1_projection():
    # conjugate of the l1 norm is the indicator of the unit box
    got = moreau_conjugate_prox(L1Prox(1.0), np.array([2.0]), 1.0)
    assert np.allclose(got, [1.0])
    got = moreau_conjugate_prox(L1Prox(1.0), np.array([-0.4, 3.0]), 2.0)
    assert np.allclose(got, [-0.4, 1.0])


def test_moreau_zero_function(rng):
    v = rng.standard_normal(4)
    assert np.allclose(moreau_conjugate_prox(ZeroProx(), v, 2.5), 0.0)


def test_moreau_identity_all_kinds(rng):
    oracles = [
        ZeroProx(),
        L1Prox(0.3),
        SquaredL2Prox(2.0, rng.standard_normal(6)),
        SquaredL2Prox(0.5),
        GroupL21Prox(0.9, 3),
    ]
    for g in oracles:
        for _ in range(30):
            v = rng.standard_normal(6)
            sigma = float(rng.uniform(0.01, 10.0))
            recon = moreau_conjugate_prox(g, v, sigma) + sigma * g.prox(
                v / sigma, 1.0 / sigma
            )
            assert np.max(np.abs(recon - v)) <= 1e-12


def test_moreau_rejects_bad_sigma():
    with pytest.raises(ParameterError):
        moreau_conjugate_prox(L1Prox(1.0), np.zeros(2), 0.0)


@settings(max_examples=60, deadline=None)
@given(
    data=st.lists(st.floats(-50, 50), min_size=4, max_size=4),
    other=st.lists(st.floats(-50, 50), min_size=4, max_size=4),
    t=st.floats(0.0, 10.0),
)
def test_firm_nonexpansiveness(data, other, t):
    u = np.asarray(data)
    v = np.asarray(other)
    for g in (L1Prox(0.8), SquaredL2Prox(1.5, np.ones(4)), GroupL21Prox(0.6, 2), ZeroProx()):
        du = g.prox(u, t) - g.prox(v, t)
        assert np.linalg.norm(du) <= np.linalg.norm(u - v) + 1e-12


def test_prox_optimality_against_perturbations(rng):
    # prox objective at the output beats 100 nearby points
    kinds = [
        (L1Prox(0.7), 6),
        (SquaredL2Prox(1.3, rng.standard_normal(6)), 6),
        (GroupL21Prox(0.5, 3), 6),
        (ZeroProx(), 6),
    ]
    for g, dim in kinds:
        v = rng.standard_normal(dim)
        t = 0.9
        u = g.prox(v, t)
        base = g.value(u) + np.sum((u - v) ** 2) / (2 * t)
        for _ in range(100):
            pert = u + rng.normal(0, 1e-3, dim)
            alt = g.value(pert) + np.sum((pert - v) ** 2) / (2 * t)
            assert base <= alt + 1e-12


# ---------------------------------------------------------------------------
# smooth oracles


def test_least_squares_zero_residual(rng):
    A = rng.standard_normal((5, 3))
    x = rng.standard_normal(3)
    h = LeastSquares(A, A @ x)
    assert np.max(np.abs(h.grad(x))) < 1e-12
    assert h.value(x) < 1e-24


def test_least_squares_gradient_vs_finite_differences(rng):
    A = rng.standard_normal((8, 5))
    b = rng.standard_normal(8)
    h = LeastSquares(A, b, scale=0.3)
    for _ in range(20):
        x = rng.standard_normal(5)
        num = central_difference_grad(h.value, x)
        exact = h.grad(x)
        assert np.linalg.norm(num - exact) <= 1e-5 * (1.0 + np.linalg.norm(exact))


def test_least_squares_lipschitz_vs_eigensolve(rng):
    A = rng.standard_normal((20, 12))
    h = LeastSquares(A, rng.standard_normal(20), scale=0.25)
    exact = 0.25 * np.linalg.eigvalsh(A.T @ A).max()
    assert abs(h.lipschitz() - exact) / exact < 1e-4


def test_masked_least_squares(rng):
    mask = (rng.uniform(size=10) > 0.4).astype(float)
    b = rng.standard_normal(10)
    h = MaskedLeastSquares(mask, b)
    assert np.max(np.abs(h.grad(b))) == 0.0
    zero = MaskedLeastSquares(np.zeros(10), b)
    assert zero.value(rng.standard_normal(10)) == 0.0
    x = rng.standard_normal(10)
    num = central_difference_grad(h.value, x)
    assert np.linalg.norm(num - h.grad(x)) <= 1e-6 * (1 + np.linalg.norm(h.grad(x)))
    assert h.lipschitz() == 1.0


def test_masked_least_squares_rejects_bad_mask():
    with pytest.raises(DataError):
        MaskedLeastSquares(np.array([0.0, 0.5]), np.zeros(2))


def test_logistic_at_origin(rng):
    A = rng.standard_normal((9, 4))
    labels = np.where(rng.uniform(size=9) > 0.5, 1.0, -1.0)
    h = Logistic(A, labels)
    x0 = np.zeros(4)
    assert math.isclose(h.value(x0), 9 * math.log(2.0), rel_tol=1e-14)
    assert np.allclose(h.grad(x0), -0.5 * A.T @ labels)


def test_logistic_large_margin_no_overflow():
    # one feature per sample, margin 50 everywhere
    A = np.eye(3) * 50.0
    labels = np.ones(3)
    h = Logistic(A, labels)
    val = h.value(np.ones(3))
    assert 0.0 < val <= 3 * math.exp(-20.0)
    big = h.value(-np.ones(3) * 20.0)  # margin -1000, still finite
    assert math.isfinite(big)


def test_logistic_gradient_vs_finite_differences(rng):
    A = rng.standard_normal((7, 4))
    labels = np.where(rng.uniform(size=7) > 0.5, 1.0, -1.0)
    h = Logistic(A, labels)
    for _ in range(10):
        x = rng.normal(0, 0.5, 4)
        num = central_difference_grad(h.value, x)
        exact = h.grad(x)
        assert np.linalg.norm(num - exact) <= 1e-5 * (1.0 + np.linalg.norm(exact))


def test_logistic_rejects_bad_labels(rng):
    with pytest.raises(DataError):
        Logistic(rng.standard_normal((3, 2)), np.array([1.0, 0.0, -1.0]))


def test_logistic_smoothness_bound(rng):
    A = rng.standard_normal((10, 6))
    labels = np.where(rng.uniform(size=10) > 0.5, 1.0, -1.0)
    h = Logistic(A, labels)
    exact = 0.25 * np.linalg.eigvalsh(A.T @ A).max()
    assert abs(h.lipschitz() - exact) / exact < 1e-4
    # empirical local Lipschitz sampling stays below the bound
    for _ in range(50):
        x = rng.normal(0, 2, 6)
        y = rng.normal(0, 2, 6)
        if np.linalg.norm(x - y) == 0:
            continue
        ratio = np.linalg.norm(h.grad(x) - h.grad(y)) / np.linalg.norm(x - y)
        assert ratio <= exact + 1e-9


def test_convexity_of_gradients(rng):
    A = rng.standard_normal((8, 5))
    oracles = [
        LeastSquares(A, rng.standard_normal(8)),
        Logistic(A, np.where(rng.uniform(size=8) > 0.5, 1.0, -1.0)),
        QuadraticRidge(A, rng.standard_normal(8), 0.7),
    ]
    for h in oracles:
        for _ in range(30):
            x = rng.standard_normal(5)
            y = rng.standard_normal(5)
            assert (h.grad(x) - h.grad(y)) @ (x - y) >= -1e-10


def test_quadratic_ridge_pure_ridge_strong_convexity(rng):
    # with a zero design the modulus is exactly the ridge weight
    h = QuadraticRidge(np.zeros((3, 3)), np.zeros(3), 1.0)
    for _ in range(10):
        x = rng.standard_normal(3)
        y = rng.standard_normal(3)
        gap = (h.grad(x) - h.grad(y)) @ (x - y)
        assert math.isclose(gap, np.linalg.norm(x - y) ** 2, rel_tol=1e-12)


def test_sum_smooth(rng):
    A = rng.standard_normal((6, 4))
    b = rng.standard_normal(6)
    parts = [LeastSquares(A, b), QuadraticRidge(np.zeros((1, 4)), np.zeros(1), 0.5)]
    h = SumSmooth(parts)
    x = rng.standard_normal(4)
    assert math.isclose(h.value(x), parts[0].value(x) + parts[1].value(x), rel_tol=1e-14)
    assert np.allclose(h.grad(x), parts[0].grad(x) + parts[1].grad(x))
    assert h.lipschitz() == parts[0].lipschitz() + parts[1].lipschitz()


def test_smooth_oracle_accepts_operator(rng):
    A = rng.standard_normal((5, 4))
    h_mat = LeastSquares(A, np.zeros(5))
    h_op = LeastSquares(DenseOperator(A), np.zeros(5))
    x = rng.standard_normal(4)
    assert np.array_equal(h_mat.grad(x), h_op.grad(x))
    est = estimate_operator_norm(DenseOperator(A))
    assert math.isclose(h_op.lipschitz(), est**2, rel_tol=1e-12)
