"""
Deterministic dual-set spectral-Frobenius sparsification.

Given vectors ``x_1..x_n`` (columns of ``X``) and ``v_1..v_n`` (columns of
``V``) with ``sum_i v_i v_i^T = I_k``, a barrier-potential greedy loop picks
at most ``r`` weighted indices such that

* ``lambda_min(sum_i s_i v_i v_i^T) >= (1 - sqrt(k / r))**2`` and
* ``trace(sum_i s_i x_i x_i^T) <= ||X||_F^2``.

Each of the ``r`` iterations eigendecomposes the running k x k matrix once
and reuses it for both resolvent powers, so the total cost is
``O(r n k^2 + n l)``.
"""

import json
import math

import numpy as np
import scipy.linalg

from . import linalg as la
from .errors import DimensionMismatch, InvalidRank, NoFeasibleIndex, SingularShift

__all__ = ["potential_phi", "check_identity_decomposition", "dual_set_sparsify"]

# Relative guard on both sides of the feasibility window.
FEASIBILITY_SLACK = 1e-9
IDENTITY_TOL = 1e-8


def potential_phi(L, eigenvalues):
    """Lower barrier potential ``sum_i 1 / (lambda_i - L)``.

    Raises
    ------
    SingularShift
        If some eigenvalue is not strictly above `L`.
    """
    lam = np.asarray(eigenvalues, dtype=np.float64).ravel()
    gaps = lam - L
    if np.any(gaps <= 0):
        raise SingularShift(f"shift L={L} is not below every eigenvalue (min {lam.min()})")
    return float(np.sum(1.0 / gaps))


def check_identity_decomposition(V, atol=IDENTITY_TOL):
    """Raise unless the columns of `V` satisfy ``V @ V.T == I_k`` to `atol`."""
    k = V.shape[0]
    dev = np.max(np.abs(V @ V.T - np.eye(k)))
    if dev > atol:
        raise ValueError(f"columns of V do not decompose the identity (max deviation {dev:.3g})")


def dual_set_sparsify(X, V, r, trace=None):
    """
    Select at most `r` weighted columns controlling two vector sets at once.

    Parameters
    ----------
    X : array_like, shape (l, n)
        Columns form the set whose weighted trace is bounded above.
    V : array_like, shape (k, n)
        Columns form a decomposition of the identity,
        ``sum_i v_i v_i^T = I_k``.
    r : int
        Number of greedy iterations, ``k < r < n``.
    trace : writable text stream, optional
        Receives one JSON object per iteration with keys ``tau``, ``j``,
        ``t`` and ``lambda_min`` (smallest eigenvalue of the running matrix
        before the update).

    Returns
    -------
    s : ndarray, shape (n,)
        Nonnegative weights, at most `r` of them nonzero.

    Notes
    -----
    The lowest feasible index is chosen at every step and its inverse weight
    is the midpoint of the feasibility window, so the output is a
    deterministic function of the inputs.
    """
    X = la.as_matrix(X, "X")
    V = la.as_matrix(V, "V")
    k, n = V.shape
    if X.shape[1] != n:
        raise DimensionMismatch(f"X has {X.shape[1]} columns but V has {n}")
    if isinstance(r, bool) or int(r) != r or not k < r < n:
        raise InvalidRank(f"r={r!r} must satisfy k < r < n with k={k}, n={n}")
    r = int(r)
    check_identity_decomposition(V)

    sq_norms = np.einsum("ij,ij->j", X, X)
    total = float(sq_norms.sum())
    shrink = 1.0 - math.sqrt(k / r)
    if total > 0:
        lower = sq_norms * (shrink / total)
    else:
        lower = np.zeros(n)

    s = np.zeros(n)
    A = np.zeros((k, k))
    offset = math.sqrt(r * k)
    for tau in range(r):
        L = tau - offset
        lam, W = scipy.linalg.eigh(A)
        gap_next = lam - (L + 1.0)
        if np.any(gap_next <= 0):
            raise SingularShift(f"iteration {tau}: eigenvalue {lam.min()} not above L+1={L + 1}")
        # phi(L+1, A) - phi(L, A), written without cancellation
        phi_diff = float(np.sum(1.0 / (gap_next * (gap_next + 1.0))))

        P2 = (W.T @ V) ** 2
        inv1 = P2.T @ (1.0 / gap_next)
        inv2 = P2.T @ (1.0 / gap_next**2)
        upper = inv2 / phi_diff - inv1

        ok = (upper > 0) & (lower * (1 - FEASIBILITY_SLACK) <= upper * (1 + FEASIBILITY_SLACK))
        hits = np.flatnonzero(ok)
        if hits.size == 0:
            raise NoFeasibleIndex(f"no feasible index at iteration {tau}")
        j = int(hits[0])
        t = 2.0 / (lower[j] + upper[j])

        if trace is not None:
            trace.write(json.dumps({"tau": tau, "j": j, "t": t, "lambda_min": float(lam[0])}) + "\n")

        s[j] += t
        v = V[:, j]
        A += t * np.outer(v, v)
        A = 0.5 * (A + A.T)

    return (shrink / r) * s
