"""Seeded synthetic test matrices with a prescribed singular spectrum."""

from dataclasses import dataclass

import numpy as np

from .._rng import check_random_state
from ..errors import InvalidSpec

__all__ = ["SyntheticSpec", "spectrum", "synthesize_matrix"]

DECAYS = ("power", "exponential")


@dataclass(frozen=True)
class SyntheticSpec:
    """
    Low-rank-plus-noise matrix recipe.

    ``decay="power"`` gives singular values ``i**(-param)``,
    ``decay="exponential"`` gives ``param**i`` (``i = 1..true_rank``).
    ``noise_sigma`` is the Frobenius norm of the additive Gaussian noise
    relative to that of the low-rank signal.
    """

    m: int
    n: int
    true_rank: int
    decay: str = "power"
    param: float = 1.0
    noise_sigma: float = 0.0

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidSpec(f"dimensions must be positive, got {self.m}x{self.n}")
        if not 1 <= self.true_rank <= min(self.m, self.n):
            raise InvalidSpec(f"true_rank={self.true_rank} outside [1, {min(self.m, self.n)}]")
        if self.decay not in DECAYS:
            raise InvalidSpec(f"decay must be one of {DECAYS}, got {self.decay!r}")
        if self.decay == "power" and not self.param >= 0:
            raise InvalidSpec("power decay needs param >= 0")
        if self.decay == "exponential" and not 0 < self.param <= 1:
            raise InvalidSpec("exponential decay needs 0 < param <= 1")
        if not self.noise_sigma >= 0:
            raise InvalidSpec("noise_sigma must be nonnegative")

    @classmethod
    def parse(cls, text):
        """Parse ``"m,n,rank,decay,param,noise"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise InvalidSpec(f"expected 'm,n,rank,decay,param,noise', got {text!r}")
        try:
            return cls(int(parts[0]), int(parts[1]), int(parts[2]), parts[3],
                       float(parts[4]), float(parts[5]))
        except ValueError as exc:
            raise InvalidSpec(f"bad synthetic spec {text!r}: {exc}") from None

    def to_dict(self):
        return {"m": self.m, "n": self.n, "true_rank": self.true_rank, "decay": self.decay,
                "param": self.param, "noise_sigma": self.noise_sigma}


def spectrum(spec):
    i = np.arange(1, spec.true_rank + 1, dtype=np.float64)
    if spec.decay == "power":
        return i ** (-spec.param)
    return spec.param ** i


def synthesize_matrix(spec, rng=None):
    """``A = L R^T + noise`` where ``L R^T`` has exactly the spectrum of `spec`."""
    rng = check_random_state(rng)
    r = spec.true_rank
    L, _ = np.linalg.qr(rng.standard_normal((spec.m, r)))
    R, _ = np.linalg.qr(rng.standard_normal((spec.n, r)))
    A = (L * spectrum(spec)) @ R.T
    if spec.noise_sigma > 0:
        G = rng.standard_normal((spec.m, spec.n))
        A += G * (spec.noise_sigma * np.linalg.norm(A, "fro") / np.linalg.norm(G, "fro"))
    return A
