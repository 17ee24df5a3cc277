import numpy as np
import pytest


def spectral_matrix(m, n, sigma, seed):
    """m x n matrix with prescribed singular values (random singular vectors)."""
    rng = np.random.default_rng(seed)
    sigma = np.asarray(sigma, dtype=float)
    r = sigma.size
    U, _ = np.linalg.qr(rng.standard_normal((m, r)))
    V, _ = np.linalg.qr(rng.standard_normal((n, r)))
    return (U * sigma) @ V.T


def low_rank(m, n, k, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((m, k)) @ rng.standard_normal((k, n))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
