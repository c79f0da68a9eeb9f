"""Water-filling over slots: where the power goes as gains spread out."""

import numpy as np

from ris_downlink.waterfilling import waterfill


def show(alphas, p_tx):
    res = waterfill(np.array(alphas, dtype=float), p_tx, tol=1e-12)
    level = 1.0 / res.threshold
    print(f"gains {alphas}, average budget {p_tx}")
    print(f"  water level 1/lambda = {level:.4f}")
    for m, (alpha, power) in enumerate(zip(alphas, res.powers)):
        bar = "#" * int(30 * power / max(res.powers.max(), 1e-12))
        state = "active" if res.active_slots[m] else "silent"
        print(f"  slot {m}: 1/alpha = {1 / alpha:7.3f}  power = {power:7.3f}  {state:6s} {bar}")
    rate = np.mean(np.log2(1 + res.powers * np.array(alphas)))
    print(f"  time-averaged rate = {rate:.4f} bits/s/Hz\n")


def main():
    show([1.0, 4.0], 1.0)            # both slots active, uneven split
    show([0.1, 10.0], 0.5)           # weak slot shut off entirely
    show([0.5, 0.5, 0.5, 0.5], 2.0)  # symmetry: equal gains, equal powers
    show([0.2, 0.9, 3.0, 12.0], 0.8)


if __name__ == "__main__":
    main()
