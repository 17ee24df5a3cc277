import json
import math
import warnings

import numpy as np
import pytest

from fastcur import linalg as la
from fastcur.cur import (
    CurDecomposition,
    CurParams,
    fast_cur,
    fast_row_select,
    near_optimal_columns,
    relative_error_ratio,
    subspace_sampling_cur,
    svd_tail_norm,
)
from fastcur.errors import DegenerateDenominator, DimensionMismatch, InsufficientSize, InvalidEpsilon, InvalidRank

from conftest import low_rank, spectral_matrix


def power_matrix(m=300, n=200, seed=0):
    return spectral_matrix(m, n, 1.0 / np.arange(1, min(m, n) + 1), seed)


# -- CurParams ------------------------------------------------------------------

def test_default_counts_k5_eps1():
    p = CurParams.default(5, 1.0)
    assert (p.c1, p.c2) == (20, 10)
    assert p.c <= 30
    assert p.r1 == 20 and p.r2 == 60


def test_default_counts_eps_half():
    p = CurParams.default(5, 0.5)
    assert p.c1 == math.ceil(20 * 0.5 ** (-2 / 3)) == 32
    assert p.c2 == 20
    assert p.eps0 == pytest.approx(0.5 ** (2 / 3))


def test_eps0_capped_below_one():
    assert CurParams.default(3, 1.0).eps0 == 0.99


@pytest.mark.parametrize("kwargs,exc", [
    (dict(k=1), InvalidRank),
    (dict(k=3, eps=0.0), InvalidEpsilon),
    (dict(k=3, eps=1.5), InvalidEpsilon),
    (dict(k=3, c1=3), InvalidRank),
    (dict(k=3, r1=2), InvalidRank),
    (dict(k=3, c2=0), InvalidRank),
])
def test_param_validation(kwargs, exc):
    with pytest.raises(exc):
        CurParams.default(**kwargs)


def test_from_counts_split():
    p = CurParams.from_counts(10, 40, 160)
    assert (p.c1, p.c2, p.r1, p.r2) == (20, 20, 80, 80)
    assert p.eps == 1.0
    p = CurParams.from_counts(10, 100, 1000)
    assert p.eps == pytest.approx(0.4)
    p = CurParams.from_counts(10, 20, 40)
    assert p.c1 == 11 and p.c2 == 9
    with pytest.raises(InsufficientSize):
        CurParams.from_counts(10, 11, 40)


# -- near_optimal_columns -------------------------------------------------------

def test_columns_exact_rank():
    A = low_rank(40, 30, 3, seed=1)
    sel = near_optimal_columns(A, CurParams.default(3, 0.5), rng=1)
    assert np.linalg.norm(A - la.project_column_space(A, sel.C)) <= 1e-7 * np.linalg.norm(A)


def test_columns_structure():
    A = np.random.default_rng(2).standard_normal((40, 35))
    params = CurParams.default(3, 1.0)
    sel = near_optimal_columns(A, params, rng=2)
    assert sel.n_dual <= params.c1
    assert sel.C.shape[1] == sel.n_dual + params.c2
    assert np.array_equal(sel.C, A[:, sel.indices])
    assert np.all(np.diff(sel.dual_indices) > 0)
    assert sel.adaptive_indices.size == params.c2


def test_columns_completed_flag_on_exact_rank():
    A = low_rank(30, 25, 2, seed=3)
    sel = near_optimal_columns(A, CurParams.default(2, 1.0), rng=3)
    assert sel.completed
    assert sel.C.shape[1] == sel.n_dual


def test_columns_reject_oversized_c1():
    with pytest.raises(InsufficientSize):
        near_optimal_columns(np.ones((30, 10)), CurParams.default(3, 1.0), rng=0)


@pytest.mark.slow
def test_column_stage_expected_error():
    A = spectral_matrix(80, 60, 0.5 ** np.arange(1, 61), seed=4)
    params = CurParams.default(5, 0.5)
    tail2 = svd_tail_norm(A, 5) ** 2
    errs = []
    for seed in range(200):
        C = near_optimal_columns(A, params, rng=seed).C
        errs.append(np.linalg.norm(A - la.project_column_space(A, C)) ** 2)
    assert np.mean(errs) <= 1.1 * 1.5 * tail2


# -- fast_row_select --------------------------------------------------------------

def test_rows_spanning_case():
    A = low_rank(40, 30, 3, seed=5)
    R, idx = fast_row_select(A, A, CurParams.default(3, 1.0, r2=20), rng=5)
    assert np.linalg.norm(A - la.project_row_space(la.project_column_space(A, A), R)) <= 1e-7 * np.linalg.norm(A)
    np.testing.assert_array_equal(R, A[idx])


def test_rows_structure():
    A = np.random.default_rng(6).standard_normal((60, 40))
    params = CurParams.default(3, 1.0)
    C = A[:, :10]
    sel = fast_row_select(A, C, params, rng=6)
    assert sel.n_dual <= params.r1
    assert sel.R.shape[0] == sel.n_dual + params.r2


def test_rows_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fast_row_select(np.ones((20, 10)), np.ones((19, 3)), CurParams.default(2, 1.0), rng=0)


def test_rows_warn_when_rank_condition_fails():
    rng = np.random.default_rng(7)
    A = low_rank(30, 20, 2, seed=7)
    C = rng.standard_normal((30, 5))  # rank 5, but C C^+ A has rank 2
    with pytest.warns(RuntimeWarning):
        fast_row_select(A, C, CurParams.default(2, 1.0, r2=5), rng=7)


def test_rows_no_warning_for_columns_of_a():
    A = np.random.default_rng(8).standard_normal((30, 20))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        fast_row_select(A, A[:, :6], CurParams.default(2, 1.0, r2=10), rng=8)


@pytest.mark.slow
def test_row_stage_expected_error():
    # 60 rows cannot hold r1 + r2 distinct rows for these budgets; adaptive
    # draws are with replacement so fast_row_select itself does not need that
    A = np.random.default_rng(9).standard_normal((60, 50))
    params = CurParams.default(4, 0.5)
    tail2 = svd_tail_norm(A, 4) ** 2
    lhs, rhs = [], []
    for seed in range(200):
        g = np.random.default_rng(seed)
        C = near_optimal_columns(A, params, rng=g).C
        R, _ = fast_row_select(A, C, params, rng=g)
        CCA = la.project_column_space(A, C)
        lhs.append(np.linalg.norm(A - la.project_row_space(CCA, R)) ** 2)
        rhs.append(np.linalg.norm(A - CCA) ** 2 + 0.5 * tail2)
    assert np.mean(lhs) <= 1.1 * np.mean(rhs)


@pytest.mark.slow
def test_row_stage_intermediate_bound_small_budget():
    # with a small adaptive budget the row stage obeys the adaptive-sampling
    # bound ||A - CC^+A||^2 + (rank C / r2) ||A - A R1^+ R1||^2 on average
    A = spectral_matrix(60, 50, 1.0 / np.arange(1, 51), seed=10)
    params = CurParams.default(3, 1.0, r1=8, r2=10)
    C = A[:, np.random.default_rng(10).choice(50, 6, replace=False)]
    CCA = la.project_column_space(A, C)
    lhs, rhs = [], []
    for seed in range(200):
        sel = fast_row_select(A, C, params, rng=seed)
        R1 = A[sel.indices[: sel.n_dual]]
        lhs.append(np.linalg.norm(A - la.project_row_space(CCA, sel.R)) ** 2)
        rhs.append(np.linalg.norm(A - CCA) ** 2 + (6 / 10) * np.linalg.norm(A - la.project_row_space(A, R1)) ** 2)
    assert np.mean(lhs) <= 1.05 * np.mean(rhs)


# -- fast_cur ----------------------------------------------------------------------

def test_fast_cur_exact_rank_recovery():
    A = low_rank(40, 30, 3, seed=11)
    dec = fast_cur(A, 3, 1.0, rng=11, r2=20)
    assert np.linalg.norm(A - dec.reconstruct()) <= 1e-6 * np.linalg.norm(A)


def test_fast_cur_slices_are_verbatim():
    A = power_matrix(seed=12)
    dec = fast_cur(A, 10, 1.0, rng=12)
    assert np.array_equal(dec.C, A[:, dec.col_indices])
    assert np.array_equal(dec.R, A[dec.row_indices])
    assert dec.U.shape == (dec.c, dec.r)


def test_fast_cur_reproducible():
    A = power_matrix(120, 80, seed=13)
    a = fast_cur(A, 4, 1.0, rng=5)
    b = fast_cur(A, 4, 1.0, rng=5)
    assert np.array_equal(a.col_indices, b.col_indices)
    assert np.array_equal(a.row_indices, b.row_indices)
    assert np.array_equal(a.U, b.U)


def test_stage_composition_identity():
    A = power_matrix(120, 80, seed=14)
    dec = fast_cur(A, 4, 1.0, rng=14)
    two_proj = la.project_row_space(la.project_column_space(A, dec.C), dec.R)
    lhs = np.linalg.norm(A - two_proj)
    rhs = np.linalg.norm(A - dec.C @ (la.pseudoinverse(dec.C) @ A @ la.pseudoinverse(dec.R)) @ dec.R)
    assert abs(lhs - rhs) <= 1e-10
    assert abs(np.linalg.norm(A - dec.reconstruct()) - lhs) <= 1e-10


def test_rank_of_cur_can_exceed_k():
    A = np.random.default_rng(15).standard_normal((30, 20))
    ranks = [la.numerical_rank(fast_cur(A, 2, 1.0, rng=s, r2=20).reconstruct()) for s in range(20)]
    assert max(ranks) > 2


def test_fast_cur_size_errors():
    A = np.random.default_rng(16).standard_normal((30, 20))
    with pytest.raises(InsufficientSize) as info:
        fast_cur(A, 2, 1.0, rng=0)
    assert info.value.required == (12, 32)
    with pytest.raises(InvalidEpsilon):
        fast_cur(A, 2, 0.0, rng=0)
    with pytest.raises(InvalidRank):
        fast_cur(A, 1, 1.0, rng=0)


def test_fast_cur_does_not_call_full_svd(monkeypatch):
    A = power_matrix(150, 100, seed=17)
    shapes = []
    real = la.exact_svd

    def spy(M, tol=la.DEFAULT_TOL):
        shapes.append(np.shape(M))
        return real(M, tol)

    monkeypatch.setattr(la, "exact_svd", spy)
    fast_cur(A, 3, 1.0, rng=17)
    assert shapes, "spy not reached"
    assert A.shape not in shapes


@pytest.mark.slow
def test_fast_cur_bound_power_spectrum():
    A = power_matrix(seed=18)
    tail = svd_tail_norm(A, 10)
    ratios = [relative_error_ratio(A, fast_cur(A, 10, 1.0, rng=s), 10, tail) for s in range(20)]
    assert np.mean(ratios) <= 2.0


@pytest.mark.slow
def test_doubling_adaptive_budgets_does_not_hurt():
    A = power_matrix(200, 150, seed=19)
    tail = svd_tail_norm(A, 5)
    base = CurParams.default(5, 1.0)
    doubled = CurParams.default(5, 1.0, c2=2 * base.c2, r2=2 * base.r2)
    r_base = np.mean([relative_error_ratio(A, fast_cur(A, 5, params=base, rng=s), 5, tail) for s in range(50)])
    r_dbl = np.mean([relative_error_ratio(A, fast_cur(A, 5, params=doubled, rng=s), 5, tail) for s in range(50)])
    assert r_dbl <= 1.02 * r_base


# -- subspace_sampling_cur -----------------------------------------------------------

def test_subspace_shapes():
    A = power_matrix(60, 40, seed=20)
    dec = subspace_sampling_cur(A, 5, 12, 30, rng=20)
    assert dec.C.shape == (60, 12) and dec.U.shape == (12, 30) and dec.R.shape == (30, 40)
    assert np.array_equal(dec.C, A[:, dec.col_indices])
    assert np.array_equal(dec.R, A[dec.row_indices])


def test_subspace_identity_degenerate():
    n = 6
    dec = subspace_sampling_cur(np.eye(n), n, n, n, rng=21)
    assert set(dec.col_indices) <= set(range(n)) and set(dec.row_indices) <= set(range(n))
    assert len(dec.col_indices) == len(dec.row_indices) == n


def test_subspace_linking_matrix_formula():
    A = power_matrix(50, 30, seed=22)
    dec = subspace_sampling_cur(A, 4, 10, 20, rng=22)
    # recompute U from the drawn indices with an independent rescaling path
    C = A[:, dec.col_indices]
    q = np.sum(np.linalg.svd(C, full_matrices=False)[0] ** 2, axis=1) / 10
    D = np.diag(1 / np.sqrt(20 * q[dec.row_indices]))
    W = A[np.ix_(dec.row_indices, dec.col_indices)]
    np.testing.assert_allclose(dec.U, np.linalg.pinv(D @ W, rcond=1e-12) @ D, atol=1e-8)


def test_subspace_exact_rank_recovery():
    A = low_rank(40, 30, 3, seed=23)
    dec = subspace_sampling_cur(A, 3, 10, 20, rng=23)
    assert np.linalg.norm(A - dec.reconstruct()) <= 1e-8 * np.linalg.norm(A)


def test_subspace_errors():
    with pytest.raises(InsufficientSize):
        subspace_sampling_cur(np.eye(5), 2, 6, 3, rng=0)
    with pytest.raises(InvalidRank):
        subspace_sampling_cur(np.eye(5), 6, 3, 3, rng=0)


# -- relative_error_ratio -------------------------------------------------------------

def _dec(C, U, R):
    return CurDecomposition(C=C, U=U, R=R, col_indices=np.arange(C.shape[1]),
                            row_indices=np.arange(R.shape[0]), params={})


def test_ratio_zero_numerator():
    A = np.random.default_rng(24).standard_normal((5, 4))
    assert relative_error_ratio(A, _dec(A, la.pseudoinverse(A), A), 2) == pytest.approx(0.0, abs=1e-13)


def test_ratio_unit_for_best_rank_k():
    A = np.random.default_rng(25).standard_normal((6, 5))
    Ak = la.best_rank_k(A, 2)
    assert relative_error_ratio(A, _dec(Ak, np.eye(5), np.eye(5)), 2) == pytest.approx(1.0, abs=1e-12)


def test_ratio_recomputation():
    A = power_matrix(80, 60, seed=26)
    dec = fast_cur(A, 3, 1.0, rng=26)
    s = np.linalg.svd(A, compute_uv=False)
    expected = np.linalg.norm(A - dec.C @ dec.U @ dec.R) / math.sqrt(np.sum(s[3:] ** 2))
    assert relative_error_ratio(A, dec, 3) == pytest.approx(expected, abs=1e-10)


def test_ratio_degenerate_denominator():
    A = low_rank(10, 8, 2, seed=27)
    with pytest.raises(DegenerateDenominator):
        relative_error_ratio(A, _dec(A, la.pseudoinverse(A), A), 2)


# -- serialization ---------------------------------------------------------------------

def test_json_round_trip_with_factors():
    A = power_matrix(60, 40, seed=28)
    dec = fast_cur(A, 3, 1.0, rng=28, r2=30)
    text = dec.to_json(include_factors=True)
    back = CurDecomposition.from_json(text)
    assert np.array_equal(back.C, dec.C) and np.array_equal(back.U, dec.U) and np.array_equal(back.R, dec.R)
    assert np.array_equal(back.col_indices, dec.col_indices)
    assert back.params == json.loads(text)["params"]


def test_json_without_factors_needs_matrix():
    A = power_matrix(60, 40, seed=29)
    dec = fast_cur(A, 3, 1.0, rng=29, r2=30)
    d = json.loads(dec.to_json())
    assert "factors" not in d and d["shape"] == [60, 40] and d["c"] == dec.c
    with pytest.raises(ValueError):
        CurDecomposition.from_json(dec.to_json())
    back = CurDecomposition.from_json(dec.to_json(), A=A)
    np.testing.assert_allclose(back.reconstruct(), dec.reconstruct(), atol=1e-10)


def test_json_uses_17_significant_digits():
    dec = _dec(np.array([[0.1]]), np.array([[1 / 3]]), np.array([[2.0]]))
    text = dec.to_json(include_factors=True)
    assert "0.33333333333333331" in text and "0.10000000000000001" in text
