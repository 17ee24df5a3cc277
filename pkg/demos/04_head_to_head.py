"""
Fast CUR against leverage-score subspace sampling at equal budgets.

For every seed the baseline is given exactly the number of columns and
rows fast CUR ended up using, so the comparison is paired.
"""

import numpy as np

from fastcur import fast_cur, relative_error_ratio, subspace_sampling_cur, svd_tail_norm
from fastcur.harness import SyntheticSpec, synthesize_matrix

A = synthesize_matrix(SyntheticSpec(300, 200, 200, "power", 1.0), rng=2012)
k = 10
tail = svd_tail_norm(A, k)

fast, base = [], []
for seed in range(20):
    dec = fast_cur(A, k, 1.0, rng=seed)
    fast.append(relative_error_ratio(A, dec, k, tail))
    ref = subspace_sampling_cur(A, k, dec.c, dec.r, rng=seed)
    base.append(relative_error_ratio(A, ref, k, tail))

print(f"{'':18s}{'mean':>8s}{'std':>8s}")
print(f"{'fast_cur':18s}{np.mean(fast):8.4f}{np.std(fast, ddof=1):8.4f}")
print(f"{'subspace_sampling':18s}{np.mean(base):8.4f}{np.std(base, ddof=1):8.4f}")
print(f"fast_cur lower on {sum(f < b for f, b in zip(fast, base))} of 20 seeds")
