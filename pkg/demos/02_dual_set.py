"""
Deterministic dual-set selection.

Given vectors v_i that decompose the identity and arbitrary vectors x_i,
pick at most r weighted indices that keep the smallest eigenvalue of the
weighted sum of v_i v_i^T bounded below while not inflating the weighted
energy of the x_i.  The trace records each greedy step.
"""

import io
import json
import math

import numpy as np

from fastcur.dualset import dual_set_sparsify

rng = np.random.default_rng(1)
n, k, r = 60, 3, 12
Q, _ = np.linalg.qr(rng.standard_normal((n, k)))
V = Q.T                      # columns v_i, sum v_i v_i^T = I_k
X = rng.standard_normal((4, n))

log = io.StringIO()
s = dual_set_sparsify(X, V, r, trace=log)

print("selected:", np.flatnonzero(s).tolist())
lam = np.linalg.eigvalsh((V * s) @ V.T)[0]
print(f"lambda_min = {lam:.4f}   target >= {(1 - math.sqrt(k / r)) ** 2:.4f}")
energy = float(np.sum(s * np.sum(X * X, axis=0)))
print(f"weighted energy = {energy:.2f}   ||X||_F^2 = {np.sum(X * X):.2f}")

print("\nfirst steps:")
for line in log.getvalue().splitlines()[:4]:
    rec = json.loads(line)
    print(f"  tau={rec['tau']:2d}  j={rec['j']:2d}  t={rec['t']:.3f}  lambda_min={rec['lambda_min']:.3f}")
