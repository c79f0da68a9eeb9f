"""Acceptance suite: one test per criterion, one PASS line each (run with -s).

Criteria 1-8 cover the simulation/optimization library; the figure renderer
in frontend/ has its own suite consuming the sweep CSV this module writes to
tests/_output/fig4_sweep.csv.
"""

import time
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from ris_downlink import cli
from ris_downlink.asymptotics import (GumbelConstants, HomogeneousModel,
                                      avg_capacity_exact, avg_snr, gumbel_cdf,
                                      max_exp_cdf)
from ris_downlink.channel import (SpatialSignatureParams, complex_gaussian,
                                  sample_tx_ris_channel, sample_user_channels,
                                  spatial_signature)
from ris_downlink.harness import (SystemConfig, run_monte_carlo, run_seed,
                                  sample_block, write_sweep_csv)
from ris_downlink.phase_opt import (coordinate_update, exhaustive_oracle,
                                    objective, optimize_phases,
                                    quadratic_form_terms)
from ris_downlink.reflection import PhaseAlphabet, overall_gain
from ris_downlink.schedulers import fairness_index, run_stv_opt
from ris_downlink.waterfilling import waterfill

import test_channel

OUTPUT_DIR = Path(__file__).parent / "_output"
FIG4_K_VALUES = (4, 8, 16, 32)


def report(criterion: str, detail: str):
    print(f"PASS {criterion}: {detail}")


# -- criterion 1: water-filling ------------------------------------------------

def test_criterion_1_waterfilling():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    worst_budget = worst_kkt = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        alphas = rng.uniform(0.02, 25.0, size=m)
        p_tx = float(rng.uniform(0.1, 6.0))
        res = waterfill(alphas, p_tx, tol=1e-12)
        level = 1.0 / res.threshold
        worst_budget = max(worst_budget, abs(res.powers.mean() - p_tx))
        active_err = np.abs(res.powers + 1.0 / alphas - level)[res.active_slots]
        if active_err.size:
            worst_kkt = max(worst_kkt, float(active_err.max()))
        slack = (level - 1.0 / alphas)[~res.active_slots]
        if slack.size:
            worst_kkt = max(worst_kkt, float(max(slack.max(), 0.0)))
    assert worst_budget <= 1e-9
    assert worst_kkt <= 1e-9

    res = waterfill([1.0, 4.0], 1.0, tol=1e-12)
    assert np.allclose(res.powers, [0.625, 1.375], atol=1e-9)
    res = waterfill([0.1, 10.0], 0.5, tol=1e-12)
    assert np.allclose(res.powers, [0.0, 1.0], atol=1e-9)

    elapsed = time.monotonic() - start
    assert elapsed < 1.0
    report("criterion 1 (water-filling)",
           f"1000 instances, worst budget {worst_budget:.1e}, worst KKT "
           f"{worst_kkt:.1e}, examples exact, {elapsed:.2f}s")


# -- criterion 2: phase optimizer vs exhaustive oracle ---------------------------

def physical_terms(rng_seed: int, q_atoms: int):
    """One-user instance drawn from the system's own channel model."""
    config = SystemConfig(users=1, qx=q_atoms, qy=1, phase_bits=1, runs=1,
                          base_seed=rng_seed)
    chan, _, _ = sample_block(config, run_seed(config.base_seed, 0))
    return quadratic_form_terms(chan.h[0], chan.g, chan.F[:, 0])


def test_criterion_2_phase_optimizer_optimality():
    start = time.monotonic()
    alphabet = PhaseAlphabet(bits=1)
    rng = np.random.default_rng(202)
    trials, hits = 500, 0
    for i in range(trials):
        q = int(rng.integers(1, 9))
        terms = physical_terms(rng_seed=10_000 + i, q_atoms=q)
        init = objective(terms, np.zeros(q, dtype=int), alphabet)

        # replay the sweeps to assert per-update monotonicity
        theta = np.zeros(q, dtype=int)
        previous = init
        for _sweep in range(20):
            before = previous
            for nu in range(q):
                theta[nu] = coordinate_update(terms, theta, nu, alphabet)
                current = objective(terms, theta, alphabet)
                assert current >= previous - 1e-12 * max(1.0, previous)
                previous = current
            if previous - before <= 1e-9 * max(before, 1e-300):
                break
        iterate = optimize_phases(terms, alphabet)
        assert iterate.objective >= init - 1e-15

        _, best = exhaustive_oracle(terms, alphabet)
        assert iterate.objective <= best * (1 + 1e-9) + 1e-300
        if iterate.objective >= best * (1 - 1e-9):
            hits += 1
    share = hits / trials
    elapsed = time.monotonic() - start
    assert share >= 0.95
    assert elapsed < 30.0
    report("criterion 2 (phase optimizer)",
           f"exhaustive optimum hit in {100 * share:.1f}% of {trials} "
           f"instances, ascent monotone, {elapsed:.1f}s")


# -- criterion 3: constant schedules optimal at micro scale ------------------------

def test_criterion_3_constant_schedule_optimality():
    start = time.monotonic()
    rng = np.random.default_rng(303)
    alphabet = PhaseAlphabet(bits=1)
    vectors = [np.array(v) for v in ((0, 0), (0, 1), (1, 0), (1, 1))]
    p_tx = 3.0
    for draw in range(100):
        k_users = 1 + draw % 2
        h = complex_gaussian(k_users, rng)
        g = complex_gaussian(2, rng)
        F = complex_gaussian((2, k_users), rng)

        def capacity(gamma_a, gamma_b):
            alphas = [max(abs(overall_gain(h[k], g, F[:, k], gamma, alphabet)) ** 2
                          for k in range(k_users))
                      for gamma in (gamma_a, gamma_b)]
            res = waterfill(np.array(alphas), p_tx, tol=1e-12)
            return float(np.mean(np.log2(1.0 + res.powers * np.array(alphas))))

        best_any = max(capacity(a, b) for a in vectors for b in vectors)
        best_constant = max(capacity(a, a) for a in vectors)
        assert best_constant >= best_any - 1e-9
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    report("criterion 3 (constant schedule optimal)",
           f"100 draws, all 16 schedules enumerated, {elapsed:.1f}s")


# -- criterion 4: exponential law of the randomized gain ---------------------------

def test_criterion_4_distributional_law():
    p_values = []
    for q_atoms, k_users, seed in ((16, 8, 404), (64, 16, 415)):
        rng = np.random.default_rng(seed)
        sigma_h_sq, sigma_f_sq, sigma_g_sq = 2.0e-6, 3.0e-6, 1.5e-3
        params = test_channel.make_params(sigma_g_sq=sigma_g_sq,
                                          sigma_h_sq=[sigma_h_sq] * k_users,
                                          sigma_f_sq=[sigma_f_sq] * k_users)
        sig_params = SpatialSignatureParams(
            qx=q_atoms, qy=1, element_spacing=0.1,
            azimuth=float(rng.uniform(0, 2 * np.pi)),
            elevation=float(rng.uniform(-np.pi / 2, np.pi / 2)))
        sig = spatial_signature(sig_params, 0.2)
        g = sample_tx_ris_channel(params, sig, rng, pure_los=True)
        alphabet = PhaseAlphabet(bits=2)
        gamma = alphabet.coefficients[rng.integers(0, 4, q_atoms)]
        weights = np.conj(g) * np.conj(gamma)
        samples = np.empty(10_000)
        for i in range(samples.size):
            h, F = sample_user_channels(params, k_users, q_atoms, rng)
            samples[i] = abs(h[0] + F[:, 0] @ weights) ** 2
        theta = sigma_h_sq + sigma_f_sq * sigma_g_sq * q_atoms
        p_value = stats.kstest(samples, "expon", args=(0.0, theta)).pvalue
        assert p_value > 0.05
        p_values.append(p_value)
    report("criterion 4 (exponential gain law)",
           f"KS p-values {p_values[0]:.3f} (Q=16,K=8) and {p_values[1]:.3f} (Q=64,K=16)")


# -- criterion 5: asymptotic oracles -------------------------------------------------

def test_criterion_5_asymptotic_oracles():
    rng = np.random.default_rng(505)
    worst_rel = 0.0
    for k_users in (4, 16, 64):
        draws = np.empty(1_000_000)
        done = 0
        while done < draws.size:
            size = min(200_000, draws.size - done)
            draws[done:done + size] = rng.exponential(1.0, size=(size, k_users)).max(axis=1)
            done += size
        for p_tx in (1.0, 100.0):
            model = HomogeneousModel(theta_mean=1.0, users=k_users, p_tx=p_tx)
            mc = float(np.mean(np.log2(1.0 + p_tx * draws)))
            exact = avg_capacity_exact(model)
            rel = abs(exact - mc) / mc
            worst_rel = max(worst_rel, rel)
            assert rel < 0.003
    distances = []
    for k_users in (8, 32, 128, 512):
        model = HomogeneousModel(theta_mean=1.0, users=k_users, p_tx=1.0)
        consts = GumbelConstants.from_model(model)
        grid = np.linspace(0.0, consts.location + 20.0, 10_000)
        distances.append(float(np.max(np.abs(max_exp_cdf(grid, model)
                                              - gumbel_cdf(grid, consts)))))
    assert all(a > b for a, b in zip(distances, distances[1:]))

    snr_model = HomogeneousModel(theta_mean=1.0, users=10, p_tx=1.0)
    mc_mean = float(np.mean(rng.exponential(1.0, size=(1_000_000, 10)).max(axis=1)))
    gap = abs(avg_snr(snr_model) - mc_mean)
    assert gap < 0.06
    report("criterion 5 (asymptotic oracles)",
           f"capacity MC gap <= {worst_rel:.2e} rel, sup-norm distances "
           f"{['%.4f' % d for d in distances]}, avg-SNR gap {gap:.3f}")


# -- criterion 6: fairness exactness ---------------------------------------------------

def test_criterion_6_fairness_exactness():
    rng = np.random.default_rng(606)
    for k_users in (2, 3, 5, 16):
        cfg = SystemConfig(users=k_users, qx=3, qy=3, runs=1,
                           slots_per_block=10, symbols_per_slot=100)
        chan, _, _ = sample_block(cfg, run_seed(cfg.base_seed, 0))
        result = run_stv_opt(chan, cfg.scheme_config())
        assert result.fairness == 1.0 / k_users
    assert fairness_index(np.array([1.0, 2.0, 3.0])) == 36.0 / 42.0
    report("criterion 6 (fairness exactness)",
           "stv fairness == 1/K for K in {2,3,5,16}; Jain([1,2,3]) == 36/42")


# -- criterion 7: desk-scale study reproduction -----------------------------------------

@pytest.fixture(scope="module")
def fig4_study():
    start = time.monotonic()
    stats_by_scheme = {}
    sweep_rows = []
    for k_users in FIG4_K_VALUES:
        cfg = SystemConfig(users=k_users)  # Q=100, M=100, runs=200, homogeneous
        records = run_monte_carlo(cfg)
        for scheme in cfg.schemes:
            caps = np.array([r.net_sum_capacity for r in records if r.scheme == scheme])
            fair = np.array([r.fairness for r in records if r.scheme == scheme])
            stats_by_scheme.setdefault(scheme, {})[k_users] = (caps.mean(), fair.mean())
            sweep_rows.append({
                "scheme": scheme, "K": k_users, "Q": cfg.q_atoms,
                "M": cfg.slots_per_block, "runs": cfg.runs,
                "net_sum_capacity_mean_bps_hz": float(caps.mean()),
                "net_sum_capacity_std_bps_hz": float(caps.std(ddof=1)),
                "fairness_mean": float(fair.mean()),
                "fairness_std": float(fair.std(ddof=1)),
            })
    OUTPUT_DIR.mkdir(exist_ok=True)
    write_sweep_csv(sweep_rows, OUTPUT_DIR / "fig4_sweep.csv")
    return stats_by_scheme, time.monotonic() - start


def test_criterion_7_desk_scale_figure_reproduction(fig4_study):
    stats_by_scheme, elapsed = fig4_study
    for k_users in FIG4_K_VALUES:
        stv = stats_by_scheme["stv_opt"][k_users]
        rnd = stats_by_scheme["rtv_rand"][k_users]
        no_ris = stats_by_scheme["no_ris"][k_users]
        assert stv[0] > rnd[0] > no_ris[0]
        assert stv[1] == 1.0 / k_users
        # fairness ladder: PFS schemes > randomized > single-user optimum
        assert stats_by_scheme["pfs_full"][k_users][1] > rnd[1] > stv[1]
        assert stats_by_scheme["pfs_rand"][k_users][1] > rnd[1]
        if k_users <= 16:
            assert stats_by_scheme["pfs_full"][k_users][1] >= 0.9
            assert stats_by_scheme["pfs_rand"][k_users][1] >= 0.9
    caps = [stats_by_scheme["rtv_rand"][k][0] for k in FIG4_K_VALUES]
    increments = np.diff(caps)
    assert np.all(increments > 0)
    assert increments[0] > increments[1] > increments[2]
    assert elapsed < 600.0
    report("criterion 7 (desk-scale study)",
           f"orderings hold at K={FIG4_K_VALUES}, randomized increments "
           f"{[round(float(d), 3) for d in increments]} shrinking, {elapsed:.0f}s")


# -- criterion 8: byte determinism --------------------------------------------------------

def test_criterion_8_simulate_determinism(tmp_path):
    cfg = SystemConfig(users=3, qx=2, qy=2, runs=3, slots_per_block=10,
                       symbols_per_slot=100, base_seed=808)
    config_path = tmp_path / "config.json"
    import json
    config_path.write_text(json.dumps(cfg.to_dict()))
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        assert cli.main(["simulate", "--config", str(config_path), "--out", str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    report("criterion 8 (determinism)",
           f"two simulate runs byte-identical ({len(outputs[0])} bytes)")
