"""Self-contained oracle and property checks behind the `validate` command.

Each check is deterministic (fixed seeds) and fast; together they cover the
water-filling optimality conditions, the discrete phase optimizer against
exhaustive search, and the exponential law of the randomized-surface gain.
"""

import numpy as np
from scipy import stats

from .channel import complex_gaussian
from .phase_opt import exhaustive_oracle, optimize_phases, quadratic_form_terms
from .reflection import PhaseAlphabet
from .waterfilling import waterfill


def check_waterfill_kkt(n_instances: int = 200, seed: int = 7) -> tuple[bool, str]:
    """Budget, complementary slackness, and per-slot KKT residuals <= 1e-9."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        m = int(rng.integers(1, 17))
        alphas = rng.uniform(0.05, 20.0, size=m)
        p_tx = float(rng.uniform(0.2, 5.0))
        res = waterfill(alphas, p_tx, tol=1e-12)
        level = 1.0 / res.threshold
        worst = max(worst, abs(res.powers.mean() - p_tx))
        for power, alpha, active in zip(res.powers, alphas, res.active_slots):
            if active:
                worst = max(worst, abs(power + 1.0 / alpha - level))
            else:
                worst = max(worst, max(0.0, level - 1.0 / alpha))
    return worst <= 1e-9, f"worst KKT residual {worst:.2e}"

def check_waterfill_examples() -> tuple[bool, str]:
    """Two-slot closed forms: both-active split and weak-slot exclusion."""
    res = waterfill(np.array([1.0, 4.0]), 1.0, tol=1e-12)
    ok = np.allclose(res.powers, [0.625, 1.375], atol=1e-9)
    res = waterfill(np.array([0.1, 10.0]), 0.5, tol=1e-12)
    ok = ok and np.allclose(res.powers, [0.0, 1.0], atol=1e-9)
    return ok, "hand-derived two-slot solutions"


def check_phase_optimizer(n_instances: int = 60, seed: int = 11) -> tuple[bool, str]:
    """Coordinate ascent vs exhaustive optimum on system-model instances (Q=6, b=1)."""
    from .harness import SystemConfig, run_seed, sample_block

    alphabet = PhaseAlphabet(bits=1)
    config = SystemConfig(users=1, qx=6, qy=1, phase_bits=1, runs=1, base_seed=seed)
    hits = 0
    for i in range(n_instances):
        chan, _, _ = sample_block(config, run_seed(config.base_seed, i))
        terms = quadratic_form_terms(chan.h[0], chan.g, chan.F[:, 0])
        iterate = optimize_phases(terms, alphabet)
        _, best = exhaustive_oracle(terms, alphabet)
        if iterate.objective > best * (1.0 + 1e-9) + 1e-15:
            return False, "ascent exceeded the exhaustive optimum"
        if iterate.objective >= best * (1.0 - 1e-9) - 1e-15:
            hits += 1
    share = hits / n_instances
    return share >= 0.95, f"global optimum reached in {100 * share:.0f}% of instances"


def check_exponential_law(seed: int = 3) -> tuple[bool, str]:
    """KS test of |c|^2 against Exp(sigma_h^2 + sigma_f^2 sigma_g^2 Q) at 5%."""
    rng = np.random.default_rng(seed)
    q_atoms, n_samples = 16, 4000
    sigma_h_sq, sigma_f_sq, sigma_g_sq = 0.8, 0.5, 1.3
    g = np.sqrt(sigma_g_sq) * np.exp(1j * rng.uniform(0, 2 * np.pi, q_atoms))
    gamma = np.exp(0.5j * np.pi * rng.integers(0, 4, q_atoms))
    h = np.sqrt(sigma_h_sq) * complex_gaussian(n_samples, rng)
    F = np.sqrt(sigma_f_sq) * complex_gaussian((n_samples, q_atoms), rng)
    c = h + F @ (np.conj(g) * np.conj(gamma))
    theta = sigma_h_sq + sigma_f_sq * sigma_g_sq * q_atoms
    p_value = stats.kstest(np.abs(c) ** 2, "expon", args=(0.0, theta)).pvalue
    return p_value > 0.05, f"KS p-value {p_value:.3f}"


ALL_CHECKS = (
    ("waterfill-kkt", check_waterfill_kkt),
    ("waterfill-examples", check_waterfill_examples),
    ("phase-optimizer-vs-exhaustive", check_phase_optimizer),
    ("randomized-gain-exponential-law", check_exponential_law),
)


def run_all(printer=print) -> bool:
    all_ok = True
    for name, check in ALL_CHECKS:
        ok, detail = check()
        printer(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        all_ok = all_ok and ok
    return all_ok
