"""Water-filling: hand-derived solutions, a grid-search oracle, and KKT checks."""

import numpy as np
import pytest

from ris_downlink.waterfilling import sinr, time_averaged_rate, waterfill


def grid_search_oracle(alphas, p_tx, resolution=1e-6):
    """Scan the water level on a uniform grid and return the best-budget powers."""
    alphas = np.asarray(alphas, dtype=float)
    inv = 1.0 / alphas
    levels = np.arange(resolution, alphas.size * p_tx + inv.max() + resolution, resolution)
    budgets = np.maximum(levels[:, None] - inv[None, :], 0.0).mean(axis=1)
    best = int(np.argmin(np.abs(budgets - p_tx)))
    return np.maximum(levels[best] - inv, 0.0)


# -- hand-derived examples --------------------------------------------------------

def test_single_slot_absorbs_budget():
    res = waterfill([2.0], 3.0, tol=1e-12)
    assert res.powers[0] == pytest.approx(3.0, abs=1e-9)
    assert res.threshold == pytest.approx(1.0 / (3.0 + 0.5), rel=1e-9)


def test_equal_gains_equal_powers():
    res = waterfill([0.7, 0.7, 0.7, 0.7], 2.0, tol=1e-12)
    assert np.allclose(res.powers, 2.0, atol=1e-9)


def test_two_slot_interior_solution():
    res = waterfill([1.0, 4.0], 1.0, tol=1e-12)
    assert np.allclose(res.powers, [0.625, 1.375], atol=1e-9)
    assert 1.0 / res.threshold == pytest.approx(1.625, abs=1e-9)
    assert np.allclose(res.powers, grid_search_oracle([1.0, 4.0], 1.0), atol=1e-5)


def test_two_slot_exclusion():
    # trial level with both slots active would be 5.55, driving slot 1 negative
    res = waterfill([0.1, 10.0], 0.5, tol=1e-12)
    assert res.powers[0] == 0.0
    assert res.powers[1] == pytest.approx(1.0, abs=1e-9)
    assert list(res.active_slots) == [False, True]
    assert np.allclose(res.powers, grid_search_oracle([0.1, 10.0], 0.5), atol=1e-5)


# -- errors -----------------------------------------------------------------------

def test_rejects_nonpositive_gain():
    with pytest.raises(ValueError, match="nonpositive gain"):
        waterfill([1.0, 0.0], 1.0)
    with pytest.raises(ValueError, match="nonpositive gain"):
        waterfill([1.0, -0.5], 1.0)


def test_rejects_non_finite():
    with pytest.raises(ValueError, match="non-finite"):
        waterfill([1.0, np.inf], 1.0)
    with pytest.raises(ValueError, match="non-finite"):
        waterfill([1.0, 2.0], np.nan)


# -- KKT / budget / monotonicity properties -----------------------------------------

def test_kkt_budget_and_slackness_on_random_instances():
    rng = np.random.default_rng(0)
    for _ in range(400):
        m = int(rng.integers(1, 17))
        alphas = rng.uniform(0.02, 30.0, size=m)
        p_tx = float(rng.uniform(0.1, 8.0))
        res = waterfill(alphas, p_tx, tol=1e-12)
        level = 1.0 / res.threshold
        assert abs(res.powers.mean() - p_tx) <= 1e-9
        assert np.all(res.powers >= 0.0)
        assert np.array_equal(res.active_slots, res.powers > 0)
        for power, alpha, active in zip(res.powers, alphas, res.active_slots):
            if active:
                assert abs(power + 1.0 / alpha - level) <= 1e-9
            else:
                assert 1.0 / alpha >= level - 1e-9


def test_power_monotone_in_gain():
    rng = np.random.default_rng(1)
    for _ in range(100):
        alphas = rng.uniform(0.05, 10.0, size=6)
        res = waterfill(alphas, 1.5, tol=1e-12)
        order = np.argsort(alphas)
        assert np.all(np.diff(res.powers[order]) >= -1e-12)


def test_objective_beats_random_feasible_vectors():
    rng = np.random.default_rng(2)
    for _ in range(30):
        m = int(rng.integers(1, 5))
        alphas = rng.uniform(0.05, 10.0, size=m)
        p_tx = float(rng.uniform(0.2, 4.0))
        res = waterfill(alphas, p_tx, tol=1e-12)
        best = np.sum(np.log2(1.0 + res.powers * alphas))
        shares = rng.dirichlet(np.ones(m), size=10_000) * (m * p_tx)
        rival = np.log2(1.0 + shares * alphas[None, :]).sum(axis=1)
        assert best >= rival.max() - 1e-9


def test_large_budget_scale():
    # harness scale: budget ~ 1e13, gains ~ 1e-6; residual must track the scale
    alphas = np.array([2e-6, 5e-6, 9e-7])
    p_tx = 10 ** 13.3
    res = waterfill(alphas, p_tx, tol=1e-10 * p_tx)
    assert abs(res.powers.mean() - p_tx) <= 1e-9 * p_tx


# -- SINR and rate ------------------------------------------------------------------

def test_sinr_interference_free_reduction():
    powers = np.array([0.0, 3.0, 0.0])
    assert sinr(powers, 2.0 + 0j, 1) == pytest.approx(3.0 * 4.0)


def test_sinr_zero_power():
    assert sinr(np.array([0.0, 1.0]), 1.0 + 1j, 0) == 0.0


def test_sinr_with_interference():
    # K=2, P=[1,1], |c_1|^2 = 4 -> 4 / (4 + 1)
    assert sinr(np.array([1.0, 1.0]), 2.0 + 0j, 0) == pytest.approx(0.8)


def test_rate_trivial_cases():
    assert time_averaged_rate(np.zeros(5)) == 0.0
    assert time_averaged_rate(np.array([1.0])) == pytest.approx(1.0)
    assert time_averaged_rate(np.array([1.0, 3.0])) == pytest.approx(1.5)
