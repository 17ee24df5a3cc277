import numpy as np
import pytest

from fastcur import linalg as la
from fastcur.errors import InvalidEpsilon, InvalidRank
from fastcur.randsketch import randomized_svd, sketch_width

from conftest import low_rank, spectral_matrix


def test_exact_rank_input_has_zero_residual():
    A = low_rank(30, 20, 4, seed=0)
    sk = randomized_svd(A, 4, 0.5, rng=1)
    assert np.linalg.norm(sk.residual(A)) <= 1e-8 * np.linalg.norm(A)


@pytest.mark.parametrize("seed", range(5))
def test_factorization_invariants(seed):
    A = np.random.default_rng(seed).standard_normal((25, 18))
    sk = randomized_svd(A, 3, 0.3, rng=seed)
    assert sk.Z.shape == (18, 3) and sk.B.shape == (25, 3)
    assert np.max(np.abs(sk.Z.T @ sk.Z - np.eye(3))) <= 1e-10
    assert np.max(np.abs(sk.residual(A) @ sk.Z)) <= 1e-8
    np.testing.assert_array_equal(sk.B, A @ sk.Z)


def test_factors_are_an_svd_of_the_sketch():
    A = np.random.default_rng(3).standard_normal((15, 12))
    sk = randomized_svd(A, 4, 0.5, rng=3)
    U, s, V = sk.factors()
    np.testing.assert_allclose((U * s) @ V.T, sk.B @ sk.Z.T, atol=1e-12)
    np.testing.assert_allclose(U.T @ U, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(V.T @ V, np.eye(4), atol=1e-12)


def test_seed_determinism_is_bitwise():
    A = np.random.default_rng(4).standard_normal((20, 15))
    a = randomized_svd(A, 3, 0.5, rng=99)
    b = randomized_svd(A, 3, 0.5, rng=np.random.default_rng(99))
    assert np.array_equal(a.Z, b.Z) and np.array_equal(a.B, b.B)


def test_generator_is_advanced():
    A = np.random.default_rng(5).standard_normal((20, 15))
    g = np.random.default_rng(0)
    a = randomized_svd(A, 3, 0.5, rng=g)
    b = randomized_svd(A, 3, 0.5, rng=g)
    assert not np.array_equal(a.Z, b.Z)


def test_sketch_width():
    assert sketch_width(5, 0.5, 100) == 15
    assert sketch_width(5, 0.3, 100) == 5 + 17
    assert sketch_width(5, 0.1, 20) == 20


@pytest.mark.parametrize("k", [0, 10, 12, 2.5])
def test_invalid_rank(k):
    with pytest.raises(InvalidRank):
        randomized_svd(np.ones((10, 12)), k, 0.5, rng=0)


@pytest.mark.parametrize("eps0", [0.0, 1.0, -0.1, 2.0])
def test_invalid_epsilon(eps0):
    with pytest.raises(InvalidEpsilon):
        randomized_svd(np.eye(5), 2, eps0, rng=0)


def test_power_iterations_do_not_hurt():
    A = spectral_matrix(60, 50, 1.0 / np.arange(1, 51) ** 0.3, seed=6)
    tail2 = np.sum(la.exact_svd(A).sigma[5:] ** 2)
    plain = np.mean([np.linalg.norm(randomized_svd(A, 5, 0.5, s).residual(A)) ** 2 for s in range(40)])
    power = np.mean([np.linalg.norm(randomized_svd(A, 5, 0.5, s, n_power_iter=2).residual(A)) ** 2 for s in range(40)])
    assert power <= plain
    assert power >= tail2 * (1 - 1e-12)


def test_mean_error_decreases_with_sketch_width():
    # smaller eps0 means a wider sketch
    A = spectral_matrix(50, 40, 0.8 ** np.arange(40), seed=7)
    narrow = np.mean([np.linalg.norm(randomized_svd(A, 5, 0.9, s).residual(A)) ** 2 for s in range(100)])
    wide = np.mean([np.linalg.norm(randomized_svd(A, 5, 0.2, s).residual(A)) ** 2 for s in range(100)])
    assert wide <= narrow
