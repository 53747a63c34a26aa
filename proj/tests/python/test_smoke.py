import math

import numpy as np
import pytest

import gsqg


def test_basis_order():
    assert gsqg.modes(4) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert np.allclose(gsqg.eigenvalues(4), [2, 5, 5, 8])
    w = np.zeros(4)
    w[0] = 1.0
    assert gsqg.evaluate(w, math.pi / 2, math.pi / 2) == pytest.approx(2 / math.pi)


def test_fractional_powers():
    w = np.zeros(10)
    w[0] = 1.0
    assert gsqg.lambda_power(w, 1.0)[0] == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert gsqg.heat(w, 1.0)[0] == pytest.approx(math.exp(-2.0), rel=1e-15)
    f = np.random.default_rng(0).normal(size=40)
    exact = gsqg.lambda_power(f, -0.5)
    assert np.linalg.norm(gsqg.lambda_neg_power_heat(f, 0.5) - exact) < 1e-6 * np.linalg.norm(exact)
    exact = gsqg.lambda_power(f, 0.5)
    assert np.linalg.norm(gsqg.lambda_pos_power_heat(f, 0.5) - exact) < 1e-6 * np.linalg.norm(exact)


def test_tensor_structure():
    t = gsqg.tensor(30, 0.5)
    assert len(t["value"]) > 0
    assert t["antisymmetry_defect"] < 1e-12
    assert t["diagonal_defect"] < 1e-12


def test_inviscid_run_conserves_l2():
    c = gsqg.SimConfig()
    c.m = 16
    c.initial = "random"
    c.dt = 1e-3
    c.T = 0.5
    out = gsqg.simulate(c)
    assert out["snapshots"].shape == (c.steps() // c.stride + 1, 16)
    l2 = np.asarray(out["diagnostics"]["l2_theta"])
    assert np.max(np.abs(l2 - l2[0])) < 1e-8 * l2[0]


def test_viscous_balances_and_residual():
    c = gsqg.SimConfig()
    c.m = 16
    c.initial = "random"
    c.epsilon = 0.01
    c.dt = 2e-3
    c.T = 0.5
    c.stride = 5
    out = gsqg.simulate(c)
    assert max(out["diagnostics"]["energy_residual"]) < 1e-6
    r = gsqg.weak_residual(c, "tilted", 16)
    assert r["residual"] < 1e-4
    assert set(gsqg.test_functions()) >= {"tilted"}


def test_invalid_config_names_key():
    c = gsqg.SimConfig()
    c.dt = 0.0
    with pytest.raises(ValueError, match="dt"):
        c.validate()


def test_verify_quick():
    results = gsqg.verify("quick")
    assert len(results) > 10
    failed = [r["check"] for r in results if not r["pass"]]
    assert failed == []
