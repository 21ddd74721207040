import math

import numpy as np
import pytest

import shci


def test_soft_threshold_and_tail():
    assert shci.soft_threshold(5.0, 2.0) == 3.0
    assert shci.soft_threshold(-1.0, 2.0) == 0.0
    assert shci.ordered_tail_sum(np.array([3.0, -1.0, 2.0]), 1) == pytest.approx(5.0)


def test_lasso_orthogonal_closed_form():
    p = 32
    design = shci.Design.random_partial_fourier(p, p, 3)
    rng = np.random.default_rng(0)
    y = 2.0 * rng.standard_normal(p)
    fit = shci.lasso_fit(design, y, kappa=0.8)
    assert fit.converged
    lam = shci.lasso_penalty(0.8, 0.05, p, p)
    z = design.adjoint(y) / p
    closed = np.sign(z) * np.maximum(np.abs(z) - lam / (2 * p), 0.0)
    np.testing.assert_allclose(fit.theta_hat, closed, atol=1e-9)


def test_dense_design_and_l0_oracle():
    x = np.eye(6) * 3.0
    theta = np.zeros(6)
    theta[1] = 5.0
    fit = shci.l0_oracle_fit(shci.Design.dense(x), x @ theta, 1.0, 0.05)
    assert fit.l0_count == 1
    np.testing.assert_allclose(fit.theta_hat, theta, atol=1e-12)


def test_threshold_hand_value():
    delta = math.exp(-1.0)
    tau_sq, tau_prime_sq = shci.thresholds(1.0, 1, 10000, math.exp(3.0), delta, tail_index=1)
    assert tau_sq == pytest.approx(81.3604, rel=1e-12)
    assert tau_prime_sq == pytest.approx(6.6**2, rel=1e-12)
    assert shci.estimate_b_hat(np.zeros(4), delta) == pytest.approx(math.sqrt(3.0))
    assert shci.rho_margin(1.0, 5, 100, 10000, 1000, delta) == pytest.approx(5.4, rel=1e-12)


def test_noiseless_confset_accepts_sparse_truth():
    n, p = 200, 400
    theta = np.zeros(p)
    theta[:3] = [4.0, -3.0, 5.0]
    x1 = shci.Design.gaussian(n, p, 1)
    x2 = shci.Design.gaussian(n, p, 2)
    res = shci.two_index_confset(x1, x1.apply(theta), x2, x2.apply(theta), 0.0, 3, 6, kappa=0.01)
    assert res.report.psi == 0
    assert res.ball.selected_sparsity == 3
    assert res.ball.contains(theta)


def test_config_errors_map_to_value_error():
    with pytest.raises(ValueError):
        shci.Design.gaussian(0, 5, 1)
    with pytest.raises(ValueError):
        shci.simulate("desk", no_such_key=1)


def test_small_simulation_is_deterministic():
    kw = dict(p=128, n=64, S0=2, S1=6, replications=4)
    a = shci.run_replications("desk", **kw)
    b = shci.run_replications("desk", threads=2, **kw)
    assert [r.decision for r in a] == [r.decision for r in b]
    assert [r.risk for r in a] == [r.risk for r in b]
    row = shci.simulate("desk", **kw)
    assert 0.0 <= row.misclassification <= 1.0
