"""Extreme-value oracles for the randomized surface, checked by Monte Carlo.

With homogeneous users and a line-of-sight feeder link, the best per-slot
gain is the max of K i.i.d. exponentials; its Gumbel limit gives closed
forms for the average capacity and receive SNR.
"""

import numpy as np

from ris_downlink.asymptotics import (GumbelConstants, HomogeneousModel,
                                      avg_capacity_exact, avg_capacity_gumbel,
                                      avg_snr, gumbel_cdf, max_exp_cdf)


def main():
    rng = np.random.default_rng(11)
    theta, p_tx = 1.0, 100.0

    print(f"{'K':>4s} {'exact':>9s} {'gumbel':>9s} {'monte carlo':>12s} "
          f"{'avg SNR':>9s} {'MC SNR':>9s}")
    for k in (4, 8, 16, 64, 256):
        model = HomogeneousModel(theta_mean=theta, users=k, p_tx=p_tx)
        draws = rng.exponential(theta, size=(200_000, k)).max(axis=1)
        mc_cap = np.mean(np.log2(1 + p_tx * draws))
        print(f"{k:4d} {avg_capacity_exact(model):9.4f} "
              f"{avg_capacity_gumbel(model):9.4f} {mc_cap:12.4f} "
              f"{avg_snr(model):9.2f} {p_tx * draws.mean():9.2f}")

    print("\nmax-of-exponentials cdf vs its Gumbel limit (sup-norm):")
    for k in (8, 32, 128, 512):
        model = HomogeneousModel(theta_mean=theta, users=k, p_tx=p_tx)
        consts = GumbelConstants.from_model(model)
        grid = np.linspace(0, consts.location + 20, 4000)
        dist = np.max(np.abs(max_exp_cdf(grid, model) - gumbel_cdf(grid, consts)))
        print(f"  K={k:4d}: {dist:.5f}")


if __name__ == "__main__":
    main()
