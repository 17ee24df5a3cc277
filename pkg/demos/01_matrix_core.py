"""
Pseudoinverses, projections and constrained low-rank approximation.

Builds a rank-deficient matrix, checks the Penrose conditions of its
pseudoinverse, then compares three ways of approximating it from a
handful of its own columns.
"""

import numpy as np

from fastcur import linalg as la

rng = np.random.default_rng(0)

# a 12 x 8 matrix of rank 4
A = rng.standard_normal((12, 4)) @ rng.standard_normal((4, 8))
P = la.pseudoinverse(A)
print("numerical rank:", la.numerical_rank(A))
print("max |A P A - A|:", np.max(np.abs(A @ P @ A - A)))
print("max |P A P - P|:", np.max(np.abs(P @ A @ P - P)))

# approximate a noisier matrix using 5 of its columns
B = A + 0.05 * rng.standard_normal(A.shape)
X = B[:, [0, 2, 3, 5, 7]]
print()
print("||B - B_3||               ", la.frobenius_norm(B - la.best_rank_k(B, 3)))
print("||B - X X^+ B||           ", la.frobenius_norm(B - la.project_column_space(B, X)))
print("||B - best rank 3 in X||  ", la.frobenius_norm(B - la.best_rank_k_in_column_space(B, X, 3)))
# projecting onto all of range(X) can only beat its rank-3 restriction
