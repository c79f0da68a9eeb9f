"""End-to-end: a small user sweep through the Monte Carlo harness.

Writes demo_sweep.csv in the working directory; the same artifact comes out
of `ris-downlink sweep --config cfg.json --axis users --values ... --out ...`
and feeds the figure renderer in frontend/.
"""

from ris_downlink.harness import SystemConfig, sweep, write_sweep_csv


def main():
    cfg = SystemConfig(users=4, runs=40, base_seed=7)
    rows = sweep(cfg, "users", [4, 8, 16])
    write_sweep_csv(rows, "demo_sweep.csv", config=cfg)

    print(f"{'K':>4s} {'scheme':>10s} {'capacity':>10s} {'+/-':>7s} {'fairness':>9s}")
    for row in rows:
        print(f"{row['K']:4d} {row['scheme']:>10s} "
              f"{row['net_sum_capacity_mean_bps_hz']:10.3f} "
              f"{row['net_sum_capacity_std_bps_hz']:7.3f} "
              f"{row['fairness_mean']:9.4f}")
    print("\nwrote demo_sweep.csv (+ .meta.json provenance sidecar)")
    print("render it with: cd frontend && npm run render -- "
          "--csv ../demo_sweep.csv --x K --out demo.svg")


if __name__ == "__main__":
    main()
