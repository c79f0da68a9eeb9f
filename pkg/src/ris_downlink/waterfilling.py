"""Multi-slot water-filling under a time-averaged sum-power budget.

Solves (1/M) * sum_m [1/lambda - 1/alpha_m]^+ = P_TX for the threshold
lambda by bisection on 1/lambda (the left side is continuous and
nondecreasing in 1/lambda), then reads off the per-slot powers.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WaterfillResult:
    """Per-slot powers, the water level threshold, and the active-slot mask."""

    powers: np.ndarray
    threshold: float  # lambda; powers[m] = max(1/lambda - 1/alpha_m, 0)
    active_slots: np.ndarray

    @property
    def water_level(self) -> float:
        return 1.0 / self.threshold


def waterfill(alphas: np.ndarray, p_tx: float, tol: float = 1e-10,
              max_iter: int = 200) -> WaterfillResult:
    """Water-fill the average power budget p_tx over slots with gains alphas.

    Parameters
    ----------
    alphas : array_like
        Per-slot channel power gains, all strictly positive.
    p_tx : float
        Time-averaged power budget: mean(powers) == p_tx at the solution.
    tol : float
        Absolute tolerance on the budget residual |mean(powers) - p_tx|.
    max_iter : int
        Bisection iteration cap.

    Returns
    -------
    WaterfillResult
        Powers satisfy powers[m] = max(1/lambda - 1/alpha_m, 0); slots whose
        inverse gain exceeds the water level receive zero power.
    """
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    if alphas.size == 0:
        raise ValueError("need at least one slot")
    if not np.all(np.isfinite(alphas)) or not np.isfinite(p_tx):
        raise ValueError("non-finite input")
    if np.any(alphas <= 0):
        raise ValueError("nonpositive gain")
    if p_tx <= 0:
        raise ValueError("power budget must be positive")

    m_slots = alphas.size
    inv_alpha = 1.0 / alphas

    def budget(level: float) -> float:
        return float(np.mean(np.maximum(level - inv_alpha, 0.0)))

    lo = 0.0
    hi = m_slots * p_tx + float(inv_alpha.max())
    level = hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            # interval exhausted at float resolution
            break
        level = mid
        residual = budget(level) - p_tx
        if abs(residual) <= tol:
            break
        if residual > 0:
            hi = level
        else:
            lo = level

    powers = np.maximum(level - inv_alpha, 0.0)
    return WaterfillResult(powers=powers, threshold=1.0 / level,
                           active_slots=powers > 0.0)


def sinr(powers_per_user: np.ndarray, c_k: complex, k: int) -> float:
    """SINR of user k: P_k*|c_k|^2 / (|c_k|^2 * sum_{u != k} P_u + 1)."""
    powers = np.asarray(powers_per_user, dtype=float)
    gain_sq = abs(c_k) ** 2
    interference = gain_sq * (powers.sum() - powers[k])
    return float(powers[k] * gain_sq / (interference + 1.0))


def time_averaged_rate(per_slot_sinrs: np.ndarray) -> float:
    """Rate (1/M) * sum_m log2(1 + SINR_m) in bits/s/Hz."""
    sinrs = np.asarray(per_slot_sinrs, dtype=float)
    return float(np.mean(np.log2(1.0 + sinrs)))
