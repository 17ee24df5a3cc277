"""
A small benchmark grid written to CSV.

Same machinery as ``fastcur bench``; the full bundled grid is
``bundled_config("standard_grid")`` and takes a minute or two.
"""

import sys

from fastcur.harness import ExperimentConfig, emit_report, run_experiment

cfg = ExperimentConfig(
    k_values=[5, 10],
    alpha_values=[2, 3, 4],
    trials=5,
    seed=7,
    synthetic={"m": 300, "n": 200, "true_rank": 200, "decay": "power", "param": 1.0},
)
rows = run_experiment(cfg)

print(f"{'algorithm':18s}{'k':>4s}{'alpha':>7s}{'c':>7s}{'r':>7s}{'ratio':>9s}")
for row in rows:
    print(f"{row.algorithm:18s}{row.k:4d}{row.alpha:7.1f}{row.realized_c:7.1f}{row.realized_r:7.1f}{row.ratio_mean:9.4f}")

out = sys.argv[1] if len(sys.argv) > 1 else "benchmark.csv"
emit_report(rows, "csv", out)
print("wrote", out)
