"""
Sampling distributions over row/column indices and i.i.d. samplers.

Distributions are plain 1-D float arrays that are nonnegative and sum to
one.  Samplers draw with replacement by inverting the cumulative
distribution in ascending index order, so a fixed generator state always
maps to the same index sequence.
"""

import numpy as np

from . import linalg as la
from ._rng import check_random_state
from .errors import DimensionMismatch, NotOrthonormal, ZeroMatrix, ZeroResidual

__all__ = [
    "norm_squared_distribution",
    "residual_distribution",
    "leverage_distribution",
    "sample_iid",
    "adaptive_sample_columns",
    "adaptive_sample_rows",
]

ZERO_RESIDUAL_RTOL = 1e-12
ORTHONORMAL_TOL = 1e-8


def _check_axis(axis):
    if axis not in ("rows", "columns"):
        raise ValueError(f"axis must be 'rows' or 'columns', got {axis!r}")


def norm_squared_distribution(A, axis="columns"):
    """Probabilities proportional to squared row or column norms of `A`."""
    A = la.as_matrix(A)
    _check_axis(axis)
    sq = np.einsum("ij,ij->j", A, A) if axis == "columns" else np.einsum("ij,ij->i", A, A)
    total = sq.sum()
    if total == 0:
        raise ZeroMatrix("cannot build a norm-squared distribution from a zero matrix")
    return sq / total


def residual_distribution(A, S, axis="columns", tol=la.DEFAULT_TOL):
    """
    Norm-squared distribution of the residual left after projecting onto `S`.

    For ``axis="columns"`` the residual is ``A - S S^+ A`` (S is a set of
    columns); for ``axis="rows"`` it is ``A - A S^+ S`` (S is a set of rows).

    Raises
    ------
    ZeroResidual
        If ``||residual||_F <= 1e-12 ||A||_F``, i.e. `S` already spans `A`.
    """
    A = la.as_matrix(A)
    S = la.as_matrix(S, "S")
    _check_axis(axis)
    if axis == "columns":
        if S.shape[0] != A.shape[0]:
            raise DimensionMismatch(f"S has {S.shape[0]} rows but A has {A.shape[0]}")
        B = A - la.project_column_space(A, S, tol)
    else:
        if S.shape[1] != A.shape[1]:
            raise DimensionMismatch(f"S has {S.shape[1]} columns but A has {A.shape[1]}")
        B = A - la.project_row_space(A, S, tol)
    norm_b = np.linalg.norm(B, "fro")
    if norm_b <= ZERO_RESIDUAL_RTOL * np.linalg.norm(A, "fro"):
        raise ZeroResidual(f"residual norm {norm_b:.3g} is negligible; S already spans A")
    return norm_squared_distribution(B, axis)


def leverage_distribution(Q):
    """
    Leverage-score distribution of an orthonormal basis.

    ``probs[i] = ||Q[i, :]||^2 / Q.shape[1]``.

    Raises
    ------
    NotOrthonormal
        If ``Q.T @ Q`` deviates from the identity by more than 1e-8.
    """
    Q = la.as_matrix(Q, "Q")
    k = Q.shape[1]
    dev = np.max(np.abs(Q.T @ Q - np.eye(k)))
    if dev > ORTHONORMAL_TOL:
        raise NotOrthonormal(f"Q^T Q deviates from I by {dev:.3g}")
    return np.einsum("ij,ij->i", Q, Q) / k


def sample_iid(probs, count, rng=None):
    """
    Draw `count` indices i.i.d. (with replacement) from `probs`.

    Each draw takes one uniform variate ``u`` and returns the smallest index
    whose cumulative probability exceeds ``u``; zero-probability indices are
    never returned.
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("probs must be a non-empty 1-D array")
    if np.any(probs < 0) or not np.all(np.isfinite(probs)):
        raise ValueError("probs must be finite and nonnegative")
    if abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError(f"probs sum to {probs.sum()!r}, not 1")
    if count < 0:
        raise ValueError("count must be nonnegative")
    rng = check_random_state(rng)
    if count == 0:
        return np.empty(0, dtype=np.intp)

    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    u = rng.random(count)
    idx = np.searchsorted(cdf, u, side="right")
    # roundoff can push u past the last strictly increasing cdf step
    last = int(np.flatnonzero(probs > 0)[-1])
    return np.minimum(idx, last)


def adaptive_sample_columns(A, C1, c2, rng=None, tol=la.DEFAULT_TOL):
    """
    Sample `c2` further columns of `A` proportionally to the residual norms.

    Returns
    -------
    C2 : ndarray, shape (m, c2)
    indices : ndarray of int, shape (c2,)
    """
    A = la.as_matrix(A)
    probs = residual_distribution(A, C1, "columns", tol)
    indices = sample_iid(probs, c2, rng)
    return A[:, indices], indices


def adaptive_sample_rows(A, R1, r2, rng=None, tol=la.DEFAULT_TOL):
    """Row analogue of :func:`adaptive_sample_columns`.

    Implemented on the transposes, so for a fixed generator state it draws
    exactly the indices ``adaptive_sample_columns(A.T, R1.T, r2)`` would.
    """
    A = la.as_matrix(A)
    R1 = la.as_matrix(R1, "R1")
    C2, indices = adaptive_sample_columns(A.T, R1.T, r2, rng, tol)
    return C2.T, indices
