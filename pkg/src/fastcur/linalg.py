"""
Dense linear-algebra primitives used by the CUR algorithms.

Matrices are plain two-dimensional float64 ``numpy.ndarray`` objects.
Every public function validates its inputs with :func:`as_matrix`, so
lists, integer arrays and read-only views are all accepted.

All projections go through an orthonormal basis of the relevant range
(left or right singular vectors above the rank cutoff) rather than an
explicit ``X @ pinv(X)`` product.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, DimensionMismatch, InvalidMatrix, InvalidRank

__all__ = [
    "ToleranceConfig",
    "SvdFactors",
    "DEFAULT_TOL",
    "as_matrix",
    "frobenius_norm",
    "exact_svd",
    "numerical_rank",
    "best_rank_k",
    "pseudoinverse",
    "orthonormal_basis",
    "project_column_space",
    "project_row_space",
    "best_rank_k_in_column_space",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Floating-point thresholds.

    Parameters
    ----------
    rank_cutoff : float
        Singular values at or below ``rank_cutoff * sigma_max`` count as zero.
    orthogonality_tol : float
        Max absolute deviation of ``Q.T @ Q`` from the identity.
    reconstruction_tol : float
        Relative Frobenius error allowed when re-assembling an SVD.
    """

    rank_cutoff: float = 1e-12
    orthogonality_tol: float = 1e-10
    reconstruction_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_cutoff", "orthogonality_tol", "reconstruction_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.rank_cutoff >= 1:
            raise ValueError("rank_cutoff must be < 1")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD restricted to the numerically nonzero singular values.

    ``U @ np.diag(sigma) @ V.T`` reconstructs the input.  Note that ``V``
    holds right singular vectors as *columns* (shape n x rank).
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    rank: int

    def reconstruct(self):
        return (self.U * self.sigma) @ self.V.T


def as_matrix(A, name="A"):
    """Return `A` as a finite 2-D float64 array (no copy when possible)."""
    try:
        A = np.asarray(A, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InvalidMatrix(f"{name} is not convertible to a real array: {exc}") from None
    if A.ndim != 2:
        raise InvalidMatrix(f"{name} must be two-dimensional, got ndim={A.ndim}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise InvalidMatrix(f"{name} must have at least one row and column, got {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix(f"{name} contains NaN or Inf entries")
    return A


def frobenius_norm(A):
    """Square root of the sum of squared entries."""
    A = as_matrix(A)
    return float(np.linalg.norm(A, "fro"))


def _raw_svd(A):
    try:
        return scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        pass
    # gesdd occasionally fails where the slower QR-iteration driver succeeds
    try:
        return scipy.linalg.svd(A, full_matrices=False, lapack_driver="gesvd")
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge for a {A.shape} matrix: {exc}") from None


def exact_svd(A, tol=DEFAULT_TOL):
    """
    Thin singular value decomposition with rank truncation.

    Parameters
    ----------
    A : array_like, shape (m, n)
    tol : ToleranceConfig
        Only singular values strictly above ``tol.rank_cutoff * sigma_max``
        are kept.

    Returns
    -------
    SvdFactors
        ``rank`` may be 0 for the zero matrix, in which case ``U`` and ``V``
        have zero columns.

    Raises
    ------
    ConvergenceFailure
        If neither LAPACK driver converges.
    """
    A = as_matrix(A)
    U, s, Vt = _raw_svd(A)
    rank = _rank_from_sigma(s, tol)
    return SvdFactors(U=U[:, :rank], sigma=s[:rank], V=Vt[:rank].T, rank=rank)


def _rank_from_sigma(s, tol):
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_cutoff * s[0]))


def numerical_rank(A, tol=DEFAULT_TOL):
    return exact_svd(A, tol).rank


def best_rank_k(A, k, tol=DEFAULT_TOL):
    """Truncated SVD ``A_k`` (Eckart-Young optimal in Frobenius norm)."""
    A = as_matrix(A)
    k = _check_rank(k, min(A.shape))
    f = exact_svd(A, tol)
    k = min(k, f.rank)
    return (f.U[:, :k] * f.sigma[:k]) @ f.V[:, :k].T


def _check_rank(k, upper):
    if isinstance(k, bool) or int(k) != k:
        raise InvalidRank(f"rank must be an integer, got {k!r}")
    k = int(k)
    if k < 1 or k > upper:
        raise InvalidRank(f"rank k={k} outside [1, {upper}]")
    return k


def pseudoinverse(A, tol=DEFAULT_TOL):
    """
    Moore-Penrose inverse via the truncated SVD.

    The zero matrix maps to the (transposed) zero matrix.
    """
    A = as_matrix(A)
    f = exact_svd(A, tol)
    if f.rank == 0:
        return np.zeros((A.shape[1], A.shape[0]))
    return (f.V / f.sigma) @ f.U.T


def orthonormal_basis(X, tol=DEFAULT_TOL):
    """Orthonormal basis (m x rank) for the column space of `X`."""
    return exact_svd(X, tol).U


def project_column_space(A, X, tol=DEFAULT_TOL):
    """Return ``X X^+ A``, the projection of `A` onto range(X)."""
    A = as_matrix(A)
    X = as_matrix(X, "X")
    if X.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"X has {X.shape[0]} rows but A has {A.shape[0]}")
    Q = orthonormal_basis(X, tol)
    return Q @ (Q.T @ A)


def project_row_space(A, Y, tol=DEFAULT_TOL):
    """Return ``A Y^+ Y``, the projection of `A` onto the row space of `Y`."""
    A = as_matrix(A)
    Y = as_matrix(Y, "Y")
    if Y.shape[1] != A.shape[1]:
        raise DimensionMismatch(f"Y has {Y.shape[1]} columns but A has {A.shape[1]}")
    V = exact_svd(Y, tol).V
    return (A @ V) @ V.T


def best_rank_k_in_column_space(A, X, k, tol=DEFAULT_TOL):
    """
    Best rank-`k` approximation of `A` whose columns lie in range(X).

    Computed in closed form as ``Q (Q^T A)_k`` with ``Q`` an orthonormal
    basis of range(X).  When ``rank(X) <= k`` this is just the projection
    ``X X^+ A``.
    """
    A = as_matrix(A)
    X = as_matrix(X, "X")
    if X.shape[0] != A.shape[0]:
        raise DimensionMismatch(f"X has {X.shape[0]} rows but A has {A.shape[0]}")
    k = _check_rank(k, X.shape[1])
    Q = orthonormal_basis(X, tol)
    if Q.shape[1] == 0:
        return np.zeros_like(A)
    QtA = Q.T @ A
    if k >= min(QtA.shape):
        return Q @ QtA
    return Q @ best_rank_k(QtA, k, tol)
