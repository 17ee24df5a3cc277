"""
Randomized truncated SVD through a Gaussian random projection.

The sketch returns the factorization ``A = B Z^T + E`` with ``Z`` an
n x k matrix of orthonormal columns, ``B = A Z`` and ``E Z = 0``.  The
expected residual satisfies ``E||E||_F^2 <= (1 + eps0) ||A - A_k||_F^2``
when the sketch width is ``k + ceil(k / eps0)``.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import linalg as la
from ._rng import check_random_state
from .errors import InvalidEpsilon, InvalidRank

__all__ = ["ApproxSvd", "sketch_width", "randomized_svd"]


@dataclass(frozen=True)
class ApproxSvd:
    """Result of :func:`randomized_svd`.

    Attributes
    ----------
    B : ndarray, shape (m, k)
        ``A @ Z``.
    Z : ndarray, shape (n, k)
        Orthonormal approximation of the top-k right singular subspace.
    k : int
    """

    B: np.ndarray
    Z: np.ndarray
    k: int

    def residual(self, A):
        """Explicit ``E = A - B Z^T``."""
        return A - self.B @ self.Z.T

    def factors(self):
        """Rotate to SVD form ``(U, sigma, V)`` with ``U diag(sigma) V^T = B Z^T``.

        ``U`` (m x k) and ``V`` (n x k) both have orthonormal columns even
        when ``B`` is rank deficient.
        """
        U, s, Wt = scipy.linalg.svd(self.B, full_matrices=False)
        return U, s, self.Z @ Wt.T


def sketch_width(k, eps0, upper):
    """Number of Gaussian test vectors, ``k + ceil(k / eps0)`` capped at `upper`."""
    return min(k + math.ceil(k / eps0), upper)


def randomized_svd(A, k, eps0, rng=None, n_power_iter=0):
    """
    Approximate rank-`k` truncated SVD via random projection.

    Parameters
    ----------
    A : array_like, shape (m, n)
    k : int
        Target rank, ``1 <= k < min(m, n)``.
    eps0 : float
        Accuracy parameter in (0, 1); sets the sketch width
        ``k + ceil(k / eps0)``.
    rng : None, int or numpy.random.Generator
        Source of the Gaussian test matrix.  A Generator is advanced in place.
    n_power_iter : int
        Optional subspace iterations for slowly decaying spectra.

    Returns
    -------
    ApproxSvd
    """
    A = la.as_matrix(A)
    m, n = A.shape
    if isinstance(k, bool) or int(k) != k or not 1 <= k < min(m, n):
        raise InvalidRank(f"k={k!r} must satisfy 1 <= k < min(m, n) = {min(m, n)}")
    k = int(k)
    if not (0 < eps0 < 1):
        raise InvalidEpsilon(f"eps0 must lie in (0, 1), got {eps0!r}")
    if n_power_iter < 0:
        raise ValueError("n_power_iter must be nonnegative")
    rng = check_random_state(rng)

    width = sketch_width(k, eps0, min(m, n))
    Omega = rng.standard_normal((n, width))
    Q, _ = np.linalg.qr(A @ Omega)
    for _ in range(n_power_iter):
        Q, _ = np.linalg.qr(A.T @ Q)
        Q, _ = np.linalg.qr(A @ Q)

    # top-k right singular vectors of Q^T A
    _, _, Vt = scipy.linalg.svd(Q.T @ A, full_matrices=False)
    Z = np.ascontiguousarray(Vt[:k].T)
    return ApproxSvd(B=A @ Z, Z=Z, k=k)
