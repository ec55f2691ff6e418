import math

import numpy as np
import pytest

from goldsplit.errors import DataError, InsufficientDataError, ParameterError
from goldsplit.linops import DenseOperator, FirstDifference, IdentityOperator
from goldsplit.metrics import (
    TRACE_HEADER,
    IterationTrace,
    constraint_violation,
    fit_loglinear,
    lagrangian_gap,
    linear_rate_fit,
    loglog_slope,
    objective,
    psnr,
)
from goldsplit.problems import ProblemInstance, gen_fused_lasso, gen_lasso
from goldsplit.prox import L1Prox, LeastSquares, SquaredL2Prox, ZeroSmooth
from goldsplit.solvers import SolverConfig, run_solver


def test_objective_lasso_at_origin():
    p = gen_lasso(20, 30, 3, scheme="gaussian", seed=1)
    b = p.meta["b"]
    assert math.isclose(objective(p, np.zeros(30)), 0.5 * b @ b, rel_tol=1e-14)


def test_objective_fused_identity_design(rng):
    # with A = I and b = x_true the data term vanishes at the truth
    n = 12
    x_true = rng.standard_normal(n)
    p = ProblemInstance(
        f=L1Prox(0.001),
        g=L1Prox(0.03),
        K=FirstDifference(n),
        h=LeastSquares(np.eye(n), x_true),
        x_true=x_true,
    )
    expect = 0.001 * np.abs(x_true).sum() + 0.03 * np.abs(np.diff(x_true)).sum()
    assert math.isclose(objective(p, x_true), expect, rel_tol=1e-14)


def test_objective_matches_recoded_oracle(rng):
    p = gen_fused_lasso(15, 20, seed=4)
    x = rng.standard_normal(20)
    A, b = p.meta["A"], p.meta["b"]
    oracle = (
        0.001 * np.abs(x).sum()
        + 0.03 * np.abs(x[1:] - x[:-1]).sum()
        + 0.5 * np.sum((A @ x - b) ** 2)
    )
    assert abs(objective(p, x) - oracle) <= 1e-12 * (1 + abs(oracle))


def test_objective_convex_along_segments(rng):
    p = gen_lasso(15, 25, 3, scheme="gaussian", seed=2)
    for _ in range(25):
        a = rng.standard_normal(25)
        b = rng.standard_normal(25)
        mid = 0.5 * (a + b)
        assert objective(p, mid) <= 0.5 * objective(p, a) + 0.5 * objective(p, b) + 1e-10


def test_objective_rejects_nonfinite():
    p = gen_lasso(10, 15, 2, scheme="gaussian", seed=1)
    with pytest.raises(DataError):
        objective(p, np.full(15, np.nan))


def _analytic_saddle():
    lam = 0.1
    b = np.array([1.0, -0.2])
    x_bar = np.sign(b) * np.maximum(np.abs(b) - lam, 0.0)
    y_bar = x_bar - b
    p = ProblemInstance(
        f=L1Prox(lam), g=SquaredL2Prox(1.0, b), K=IdentityOperator(2), h=ZeroSmooth()
    )
    phi_star = p.f.value(x_bar) + p.g.value(x_bar)  # w_bar = K x_bar = x_bar
    return p, x_bar, y_bar, phi_star


def test_lagrangian_gap_zero_at_saddle(rng):
    p, x_bar, y_bar, phi_star = _analytic_saddle()
    for _ in range(10):
        y = rng.standard_normal(2)
        gap = lagrangian_gap(p, x_bar, x_bar, y, phi_star)
        assert abs(gap) <= 1e-14


def test_lagrangian_gap_reduces_to_objective_gap(rng):
    p, x_bar, y_bar, phi_star = _analytic_saddle()
    x = rng.standard_normal(2)
    w = p.K.matvec(x)
    gap = lagrangian_gap(p, x, w, rng.standard_normal(2), phi_star)
    assert math.isclose(gap, objective(p, x) - phi_star, rel_tol=1e-12)


def test_lagrangian_gap_matches_recoded_oracle(rng):
    p, _, _, phi_star = _analytic_saddle()
    x = rng.standard_normal(2)
    w = rng.standard_normal(2)
    y = rng.standard_normal(2)
    oracle = (
        0.1 * np.abs(x).sum()
        + 0.5 * np.sum((w - np.array([1.0, -0.2])) ** 2)
        + y @ (x - w)
        - phi_star
    )
    got = lagrangian_gap(p, x, w, y, phi_star)
    assert abs(got - oracle) <= 1e-12 * (1 + abs(oracle))


def test_lagrangian_gap_nonnegative_at_dual_solution_along_run():
    p, x_bar, y_bar, phi_star = _analytic_saddle()
    cfg = SolverConfig(
        "pgrpda", tau0=1.0, psi=1.5, mu=0.7, mu_prime=0.3, beta=0.5,
        max_iters=300, trace_stride=300,
    )
    gaps = []
    run_solver(
        p, cfg, x0=np.zeros(2), y0=np.zeros(2),
        callback=lambda st: gaps.append(
            lagrangian_gap(p, st.x, st.w, y_bar, phi_star)
        ),
    )
    assert min(gaps) >= -1e-12


def test_lagrangian_gap_requires_reference():
    p, x_bar, _, _ = _analytic_saddle()
    with pytest.raises(ParameterError):
        lagrangian_gap(p, x_bar, x_bar, x_bar, None)


def test_constraint_violation(rng):
    K = DenseOperator(rng.standard_normal((6, 4)))
    x = rng.standard_normal(4)
    assert constraint_violation(K, x, K.matvec(x)) == 0.0
    w = rng.standard_normal(6)
    oracle = math.sqrt(np.sum((K.matrix @ x - w) ** 2))
    assert abs(constraint_violation(K, x, w) - oracle) <= 1e-12 * (1 + oracle)


def test_psnr_values(rng):
    x = rng.uniform(size=64)
    assert psnr(x, x) == math.inf
    assert math.isclose(psnr(np.zeros(100) + 0.1, np.zeros(100)), 20.0, rel_tol=1e-12)


def test_psnr_uniform_offset_is_20db(rng):
    img = rng.uniform(0.2, 0.8, size=256)
    assert math.isclose(psnr(img + 0.1, img), 20.0, rel_tol=1e-12)


def test_psnr_detects_growing_offset(rng):
    img = rng.uniform(0.2, 0.6, size=100)
    vals = [psnr(img + d, img) for d in (0.05, 0.1, 0.2, 0.3)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_psnr_shape_mismatch():
    with pytest.raises(DataError):
        psnr(np.zeros(4), np.zeros(5))


def _trace_from(ns, values):
    trace = IterationTrace()
    for n, v in zip(ns, values):
        trace.append(n=int(n), t=0.0, F=1.0, tau=1.0, sigma=1.0, dx=0.0, xz=0.0,
                     cviol=float(v))
    return trace


def test_loglog_slope_analytic_series():
    ns = np.arange(1, 2001)
    assert abs(loglog_slope(_trace_from(ns, 3.0 / ns), "cviol", (1, 2000)) + 1.0) <= 1e-6
    assert abs(loglog_slope(_trace_from(ns, np.full(2000, 2.0)), "cviol", (1, 2000))) <= 1e-12
    assert abs(loglog_slope(_trace_from(ns, 5.0 / ns**2), "cviol", (1, 2000)) + 2.0) <= 1e-6


def test_loglog_slope_needs_five_points():
    ns = np.arange(1, 5)
    with pytest.raises(InsufficientDataError):
        loglog_slope(_trace_from(ns, 1.0 / ns), "cviol", (1, 4))


def test_log_fits_drop_nonpositive_values():
    ns = np.arange(1, 101)
    vals = 1.0 / ns
    vals[::7] = 0.0
    slope, _, _, dropped = fit_loglinear(ns, np.exp(-0.1 * ns) * (vals > 0))
    assert dropped == len(ns[::7])


def test_linear_rate_fit_geometric_series():
    ns = np.arange(1, 501)
    zeta = 0.97
    trace = _trace_from(ns, 4.0 * zeta**ns)
    rate, r2 = linear_rate_fit(trace, "cviol", burn_in=0)
    assert math.isclose(rate, math.log(zeta), rel_tol=1e-10)
    assert r2 >= 1.0 - 1e-12


def test_linear_rate_fit_white_noise_uncorrelated():
    rng = np.random.default_rng(123)
    ns = np.arange(1, 501)
    for _ in range(5):
        trace = _trace_from(ns, np.abs(rng.standard_normal(500)) + 1e-6)
        _, r2 = linear_rate_fit(trace, "cviol", burn_in=0)
        assert r2 < 0.2


def test_linear_rate_fit_separates_sublinear_from_geometric():
    # a 1/n tail is visibly non-log-linear on long windows, unlike zeta^n
    ns = np.arange(1, 3001)
    burn = 300
    _, _, r2_cn, _ = fit_loglinear(ns[ns >= burn], 3.0 / ns[ns >= burn])
    _, _, r2_geo, _ = fit_loglinear(ns[ns >= burn], 2.0 * 0.99 ** ns[ns >= burn])
    assert r2_geo > 1.0 - 1e-12
    assert r2_cn < 0.93
    assert r2_geo - r2_cn > 0.05


def test_trace_csv_round_trip(tmp_path):
    trace = IterationTrace()
    trace.append(n=1, t=0.5, F=2.25, F_gap=None, tau=0.1, sigma=0.02, theta=None,
                 dx=1.0, xz=0.5, cviol=3.0, rel_err=None, psnr=None)
    trace.append(n=3, t=0.75, F=1.5, F_gap=0.25, tau=0.1, sigma=0.02, theta=1.0,
                 dx=0.5, xz=0.25, cviol=1.5, rel_err=0.9, psnr=17.2)
    path = tmp_path / "trace.csv"
    trace.to_csv(path)
    text = path.read_text().splitlines()
    assert text[0] == TRACE_HEADER
    assert text[1].count(",") == 11
    back = IterationTrace.from_csv(path)
    assert len(back) == 2
    assert np.array_equal(back.column("n"), [1, 3])
    assert math.isnan(back.column("F_gap")[0])
    assert back.column("psnr")[1] == 17.2


def test_trace_rejects_nonincreasing_iterations():
    trace = IterationTrace()
    trace.append(n=5, t=0.0, F=1.0)
    with pytest.raises(DataError):
        trace.append(n=5, t=0.0, F=1.0)
