"""
fastcur
=======

Randomized CUR matrix decomposition.

``A ~ C U R`` where ``C`` holds actual columns of ``A``, ``R`` actual rows
and ``U`` links them.  :func:`fast_cur` selects columns and rows with a
randomized SVD, deterministic dual-set sparsification and adaptive
residual sampling; :func:`subspace_sampling_cur` is the leverage-score
baseline.
"""

from .cur import (
    ColumnSelection,
    CurDecomposition,
    CurParams,
    RowSelection,
    fast_cur,
    fast_row_select,
    near_optimal_columns,
    relative_error_ratio,
    subspace_sampling_cur,
    svd_tail_norm,
)
from .dualset import dual_set_sparsify, potential_phi
from .errors import *  # noqa: F401,F403
from .linalg import (
    SvdFactors,
    ToleranceConfig,
    best_rank_k,
    best_rank_k_in_column_space,
    exact_svd,
    frobenius_norm,
    project_column_space,
    project_row_space,
    pseudoinverse,
)
from .randsketch import ApproxSvd, randomized_svd
from .sampling import (
    adaptive_sample_columns,
    adaptive_sample_rows,
    leverage_distribution,
    norm_squared_distribution,
    residual_distribution,
    sample_iid,
)

__version__ = "0.1.0"
