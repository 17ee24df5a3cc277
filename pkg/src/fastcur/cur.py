"""
CUR decompositions.

:func:`fast_cur` runs two mirrored stages.  Columns are chosen by
dual-set sparsification driven by a randomized SVD, followed by adaptive
sampling on the residual ``A - C1 C1^+ A``.  Rows are then chosen the same
way on ``A^T``, reusing the first stage's sketch.  The linking matrix is
``U = C^+ A R^+``.

:func:`subspace_sampling_cur` is the leverage-score baseline it is
compared against.
"""

import json
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from . import linalg as la
from . import _serialize
from ._rng import check_random_state
from .dualset import dual_set_sparsify
from .errors import (
    DegenerateDenominator,
    DimensionMismatch,
    InsufficientSize,
    InvalidEpsilon,
    InvalidRank,
    ZeroResidual,
)
from .randsketch import ApproxSvd, randomized_svd
from .sampling import adaptive_sample_columns, adaptive_sample_rows, leverage_distribution, sample_iid

__all__ = [
    "CurParams",
    "ColumnSelection",
    "RowSelection",
    "CurDecomposition",
    "near_optimal_columns",
    "fast_row_select",
    "fast_cur",
    "subspace_sampling_cur",
    "svd_tail_norm",
    "relative_error_ratio",
]

# eps0 = eps**(2/3) hits 1 at eps = 1, which the sketch does not accept
MAX_EPS0 = 0.99


@dataclass(frozen=True)
class CurParams:
    """
    Column and row budgets for :func:`fast_cur`.

    ``c1``/``r1`` go to dual-set sparsification and ``c2``/``r2`` to
    adaptive sampling.  Use :meth:`default` to fill in the standard choices

    * ``c1 = ceil(4 k eps^(-2/3))``, ``c2 = ceil(2 k / eps)``
    * ``r1 = ceil(4 k eps^(-2/3))``, ``r2 = ceil(2 (c1 + c2) / eps)``
    * ``eps0 = min(eps^(2/3), 0.99)``
    """

    k: int
    eps: float
    c1: int
    c2: int
    r1: int
    r2: int
    eps0: float

    def __post_init__(self):
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 2:
            raise InvalidRank(f"k must be an integer >= 2, got {self.k!r}")
        if not (0 < self.eps <= 1):
            raise InvalidEpsilon(f"eps must lie in (0, 1], got {self.eps!r}")
        if not (0 < self.eps0 < 1):
            raise InvalidEpsilon(f"eps0 must lie in (0, 1), got {self.eps0!r}")
        for name in ("c1", "c2", "r1", "r2"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InvalidRank(f"{name} must be a positive integer, got {value!r}")
        if self.c1 <= self.k:
            raise InvalidRank(f"c1={self.c1} must exceed k={self.k}")
        if self.r1 <= self.k:
            raise InvalidRank(f"r1={self.r1} must exceed k={self.k}")

    @classmethod
    def default(cls, k, eps=1.0, c1=None, c2=None, r1=None, r2=None, eps0=None):
        if not (0 < eps <= 1):
            raise InvalidEpsilon(f"eps must lie in (0, 1], got {eps!r}")
        if c1 is None:
            c1 = math.ceil(4 * k * eps ** (-2 / 3))
        if c2 is None:
            c2 = math.ceil(2 * k / eps)
        if r1 is None:
            r1 = math.ceil(4 * k * eps ** (-2 / 3))
        if r2 is None:
            r2 = math.ceil(2 * (c1 + c2) / eps)
        if eps0 is None:
            eps0 = min(eps ** (2 / 3), MAX_EPS0)
        return cls(k=k, eps=eps, c1=c1, c2=c2, r1=r1, r2=r2, eps0=eps0)

    @classmethod
    def from_counts(cls, k, c, r):
        """Split target totals ``c`` and ``r`` between the two sub-stages.

        Half of each budget (but at least ``k + 1``) goes to dual-set
        sparsification and the rest to adaptive sampling.  ``eps`` is read
        back from ``c2 = 2k / eps`` (capped at 1).  This is how the
        benchmark grid with ``c = alpha k`` and ``r = alpha c`` is realized.
        """
        c1 = max(k + 1, math.ceil(c / 2))
        r1 = max(k + 1, math.ceil(r / 2))
        if c - c1 < 1 or r - r1 < 1:
            raise InsufficientSize(
                f"c={c}, r={r} leave no room for adaptive sampling with k={k}; need c, r >= k + 2",
                required=(k + 2, k + 2),
                available=(c, r),
            )
        eps = min(1.0, 2 * k / (c - c1))
        return cls.default(k, eps, c1=c1, c2=c - c1, r1=r1, r2=r - r1)

    @property
    def c(self):
        return self.c1 + self.c2

    @property
    def r(self):
        return self.r1 + self.r2

    def check_shape(self, m, n):
        """Raise :class:`InsufficientSize` unless ``c <= n`` and ``r <= m``."""
        if self.c > n or self.r > m:
            raise InsufficientSize(
                f"need c={self.c} <= n={n} and r={self.r} <= m={m}",
                required=(self.c, self.r),
                available=(n, m),
            )


@dataclass
class ColumnSelection:
    """Columns picked by :func:`near_optimal_columns`.

    ``C[:, :n_dual]`` came from dual-set sparsification, the rest from
    adaptive sampling.  ``completed`` is set when the dual-set columns
    already spanned ``A`` and adaptive sampling was skipped.
    """

    C: np.ndarray
    indices: np.ndarray
    n_dual: int
    completed: bool = False
    sketch: ApproxSvd = field(default=None, repr=False)

    @property
    def dual_indices(self):
        return self.indices[: self.n_dual]

    @property
    def adaptive_indices(self):
        return self.indices[self.n_dual :]


@dataclass
class RowSelection:
    """Rows picked by :func:`fast_row_select`; mirrors :class:`ColumnSelection`."""

    R: np.ndarray
    indices: np.ndarray
    n_dual: int
    completed: bool = False

    def __iter__(self):
        # allows ``R, idx = fast_row_select(...)``
        return iter((self.R, self.indices))


@dataclass
class CurDecomposition:
    """``A ~ C @ U @ R`` with ``C = A[:, col_indices]`` and ``R = A[row_indices]``."""

    C: np.ndarray
    U: np.ndarray
    R: np.ndarray
    col_indices: np.ndarray
    row_indices: np.ndarray
    params: dict
    algorithm: str = "fast_cur"

    @property
    def shape(self):
        return (self.C.shape[0], self.R.shape[1])

    @property
    def c(self):
        return self.C.shape[1]

    @property
    def r(self):
        return self.R.shape[0]

    def reconstruct(self):
        return self.C @ (self.U @ self.R)

    def to_dict(self, include_factors=False):
        d = {
            "format": "fastcur.cur/1",
            "algorithm": self.algorithm,
            "shape": list(self.shape),
            "c": self.c,
            "r": self.r,
            "col_indices": [int(i) for i in self.col_indices],
            "row_indices": [int(i) for i in self.row_indices],
            "params": dict(self.params),
        }
        if include_factors:
            d["factors"] = {"C": self.C, "U": self.U, "R": self.R}
        return d

    def to_json(self, include_factors=False, indent=2):
        """Serialize; factor entries use 17 significant digits (exact round trip)."""
        return _serialize.dumps(self.to_dict(include_factors), indent=indent)

    @classmethod
    def from_json(cls, text, A=None):
        """Rebuild from :meth:`to_json` output.

        Without stored factors, `A` is required to re-slice ``C`` and ``R``
        and recompute ``U = C^+ A R^+``.
        """
        d = json.loads(text)
        cols = np.asarray(d["col_indices"], dtype=np.intp)
        rows = np.asarray(d["row_indices"], dtype=np.intp)
        if "factors" in d:
            f = d["factors"]
            C = np.array(f["C"], dtype=np.float64).reshape(d["shape"][0], d["c"])
            U = np.array(f["U"], dtype=np.float64).reshape(d["c"], d["r"])
            R = np.array(f["R"], dtype=np.float64).reshape(d["r"], d["shape"][1])
        elif A is not None:
            A = la.as_matrix(A)
            C, R = A[:, cols], A[rows]
            U = la.pseudoinverse(C) @ A @ la.pseudoinverse(R)
        else:
            raise ValueError("serialized decomposition has no factors; pass the source matrix A")
        return cls(C=C, U=U, R=R, col_indices=cols, row_indices=rows,
                   params=d["params"], algorithm=d["algorithm"])


def _sketch_factors(sketch):
    U, s, V = sketch.factors()
    return U, s, V


def near_optimal_columns(A, params, rng=None, sketch=None, tol=la.DEFAULT_TOL):
    """
    Near-optimal column selection.

    1. Approximate the top-k SVD ``U~ S~ V~^T`` by random projection.
    2. Dual-set sparsification on the columns of ``A - U~ S~ V~^T`` and of
       ``V~^T`` keeps the (at most ``c1``) columns with nonzero weight.
    3. Adaptive sampling adds ``c2`` columns drawn proportionally to the
       squared column norms of the residual ``A - C1 C1^+ A``.

    Parameters
    ----------
    A : array_like, shape (m, n)
    params : CurParams
    rng : None, int or numpy.random.Generator
    sketch : ApproxSvd, optional
        Reuse a precomputed randomized SVD of `A` instead of drawing one.

    Returns
    -------
    ColumnSelection
        Columns appear verbatim (unscaled); dual-set columns come first in
        ascending index order.
    """
    A = la.as_matrix(A)
    m, n = A.shape
    if not params.c1 < n:
        raise InsufficientSize(f"c1={params.c1} must be below n={n}", required=params.c1 + 1, available=n)
    rng = check_random_state(rng)
    if sketch is None:
        sketch = randomized_svd(A, params.k, params.eps0, rng)
    _, _, Vt_k = _sketch_factors(sketch)

    weights = dual_set_sparsify(sketch.residual(A), Vt_k.T, params.c1)
    dual_idx = np.flatnonzero(weights > 0)
    C1 = A[:, dual_idx]
    try:
        _, ada_idx = adaptive_sample_columns(A, C1, params.c2, rng, tol)
        completed = False
    except ZeroResidual:
        ada_idx = np.empty(0, dtype=np.intp)
        completed = True
    indices = np.concatenate([dual_idx, ada_idx]).astype(np.intp)
    return ColumnSelection(C=A[:, indices], indices=indices, n_dual=dual_idx.size,
                           completed=completed, sketch=sketch)


def fast_row_select(A, C, params, rng=None, sketch=None, tol=la.DEFAULT_TOL):
    """
    Fast row selection given already chosen columns `C`.

    Mirrors :func:`near_optimal_columns` on the rows: dual-set
    sparsification on the rows of ``A - U~ S~ V~^T`` and of ``U~``
    (at most ``r1`` rows), then ``r2`` rows sampled adaptively from the
    residual ``A - A R1^+ R1``.

    The selected rows satisfy, in expectation,
    ``||A - C C^+ A R^+ R||_F^2 <= ||A - C C^+ A||_F^2 + eps ||A - A_k||_F^2``
    for the default budgets.  That analysis needs
    ``rank(C) == rank(C C^+ A)``; a warning is issued when this fails
    numerically, which cannot happen when `C` holds columns of `A`.

    Returns
    -------
    RowSelection
        Unpacks as ``R, indices``.
    """
    A = la.as_matrix(A)
    C = la.as_matrix(C, "C")
    m, n = A.shape
    if C.shape[0] != m:
        raise DimensionMismatch(f"C has {C.shape[0]} rows but A has {m}")
    if not params.r1 < m:
        raise InsufficientSize(f"r1={params.r1} must be below m={m}", required=params.r1 + 1, available=m)
    Qc = la.orthonormal_basis(C, tol)
    rank_cca = la.numerical_rank(Qc.T @ A, tol) if Qc.shape[1] else 0
    if rank_cca != Qc.shape[1]:
        warnings.warn(
            f"rank(C)={Qc.shape[1]} differs from rank(C C^+ A)={rank_cca}; the row bound may not apply",
            RuntimeWarning,
            stacklevel=2,
        )

    rng = check_random_state(rng)
    if sketch is None:
        sketch = randomized_svd(A, params.k, params.eps0, rng)
    U_k, _, _ = _sketch_factors(sketch)

    weights = dual_set_sparsify(sketch.residual(A).T, U_k.T, params.r1)
    dual_idx = np.flatnonzero(weights > 0)
    R1 = A[dual_idx]
    try:
        _, ada_idx = adaptive_sample_rows(A, R1, params.r2, rng, tol)
        completed = False
    except ZeroResidual:
        ada_idx = np.empty(0, dtype=np.intp)
        completed = True
    indices = np.concatenate([dual_idx, ada_idx]).astype(np.intp)
    return RowSelection(R=A[indices], indices=indices, n_dual=dual_idx.size, completed=completed)


def fast_cur(A, k, eps=1.0, rng=None, *, c1=None, c2=None, r1=None, r2=None, eps0=None,
             params=None, tol=la.DEFAULT_TOL):
    """
    Fast randomized CUR decomposition.

    Parameters
    ----------
    A : array_like, shape (m, n)
    k : int
        Target rank, ``k >= 2``.
    eps : float
        Accuracy in (0, 1]; the expected Frobenius error is at most
        ``(1 + eps) ||A - A_k||_F``.
    rng : None, int or numpy.random.Generator
    c1, c2, r1, r2, eps0 : optional
        Override individual budgets (see :class:`CurParams`).
    params : CurParams, optional
        Fully specified budgets; takes precedence over the keyword overrides.

    Returns
    -------
    CurDecomposition

    Raises
    ------
    InsufficientSize
        If ``c1 + c2 > n`` or ``r1 + r2 > m``.

    Notes
    -----
    Realized counts can be below ``c1 + c2`` and ``r1 + r2`` because
    zero-weight dual-set picks are dropped.  Adaptive draws are with
    replacement, so repeated indices are possible and kept.  The full SVD
    of `A` is never formed.
    """
    A = la.as_matrix(A)
    m, n = A.shape
    if params is None:
        params = CurParams.default(k, eps, c1=c1, c2=c2, r1=r1, r2=r2, eps0=eps0)
    params.check_shape(m, n)
    if params.k >= min(m, n):
        raise InvalidRank(f"k={params.k} must be below min(m, n)={min(m, n)}")
    rng = check_random_state(rng)

    sketch = randomized_svd(A, params.k, params.eps0, rng)
    cols = near_optimal_columns(A, params, rng, sketch=sketch, tol=tol)
    rows = fast_row_select(A, cols.C, params, rng, sketch=sketch, tol=tol)

    C, R = cols.C, rows.R
    U = la.pseudoinverse(C, tol) @ A @ la.pseudoinverse(R, tol)
    meta = asdict(params)
    meta.update(c_dual=cols.n_dual, r_dual=rows.n_dual,
                columns_completed=cols.completed, rows_completed=rows.completed)
    return CurDecomposition(C=C, U=U, R=R, col_indices=cols.indices, row_indices=rows.indices,
                            params=meta, algorithm="fast_cur")


def subspace_sampling_cur(A, k, c, r, rng=None, tol=la.DEFAULT_TOL):
    """
    Subspace-sampling CUR baseline (exactly-c / exactly-r variant).

    Columns are drawn i.i.d. from the leverage scores of the top-k right
    singular vectors of `A`; rows from the leverage scores of an orthonormal
    basis of range(C).  With ``W = A[rows][:, cols]`` and
    ``D = diag(1 / sqrt(r q_rows))``, the linking matrix is ``U = (D W)^+ D``.
    `C` and `R` hold unscaled slices of `A`.

    This computes an exact SVD of `A`, which dominates its cost.
    """
    A = la.as_matrix(A)
    m, n = A.shape
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= min(m, n):
        raise InvalidRank(f"k={k!r} must lie in [1, {min(m, n)}]")
    if c < 1 or r < 1 or c > n or r > m:
        raise InsufficientSize(f"need 1 <= c={c} <= n={n} and 1 <= r={r} <= m={m}",
                               required=(c, r), available=(n, m))
    rng = check_random_state(rng)

    f = la.exact_svd(A, tol)
    Vk = f.V[:, : min(k, f.rank)]
    cols = sample_iid(leverage_distribution(Vk), c, rng)
    C = A[:, cols]

    q = leverage_distribution(la.orthonormal_basis(C, tol))
    rows = sample_iid(q, r, rng)
    R = A[rows]

    d = 1.0 / np.sqrt(r * q[rows])
    W = A[np.ix_(rows, cols)]
    U = la.pseudoinverse(d[:, None] * W, tol) * d[None, :]
    return CurDecomposition(C=C, U=U, R=R, col_indices=cols, row_indices=rows,
                            params={"k": int(k), "c": int(c), "r": int(r)},
                            algorithm="subspace_sampling")


def svd_tail_norm(A, k, sigma=None):
    """``||A - A_k||_F`` from the trailing singular values.

    Pass precomputed singular values as `sigma` to avoid repeating the SVD.
    """
    if sigma is None:
        sigma = la.exact_svd(A).sigma
    sigma = np.asarray(sigma, dtype=np.float64)
    return float(np.sqrt(np.sum(sigma[k:] ** 2)))


def relative_error_ratio(A, dec, k, tail=None):
    """
    ``||A - C U R||_F / ||A - A_k||_F``.

    Raises
    ------
    DegenerateDenominator
        If ``||A - A_k||_F <= 1e-12 ||A||_F`` (A numerically has rank <= k).
    """
    A = la.as_matrix(A)
    if tail is None:
        tail = svd_tail_norm(A, k)
    if tail <= 1e-12 * np.linalg.norm(A, "fro"):
        raise DegenerateDenominator(f"||A - A_k||_F = {tail:.3g} is numerically zero for k={k}")
    return float(np.linalg.norm(A - dec.reconstruct(), "fro") / tail)
