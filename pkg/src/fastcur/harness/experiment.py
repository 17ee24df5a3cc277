"""
Repeated-trial benchmark grid over target rank ``k`` and multiplier ``alpha``.

Each cell uses ``c = alpha k`` columns and ``r = alpha c`` rows and runs
``trials`` independent decompositions.  Trial seeds come from
``SeedSequence([base_seed, algorithm_id, k, round(1000 alpha), trial])``,
so a cell's numbers depend only on its own identity and never on the order
or parallelism with which the grid is executed.
"""

import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .. import linalg as la
from ..cur import CurParams, fast_cur, relative_error_ratio, subspace_sampling_cur, svd_tail_norm
from ..errors import ConfigError, FastCurError
from .io import load_matrix, normalize_format
from .report import ReportRow
from .synth import SyntheticSpec, synthesize_matrix

__all__ = [
    "ALGORITHMS",
    "DEFAULT_ALPHAS",
    "ExperimentConfig",
    "trial_seed",
    "load_source",
    "run_experiment",
    "bundled_config",
]

log = logging.getLogger(__name__)

ALGORITHMS = {"fast_cur": 1, "subspace_sampling": 2}
DEFAULT_ALPHAS = (2, 3, 4, 5, 6, 8, 10)


@dataclass
class ExperimentConfig:
    """Benchmark grid definition.

    Exactly one of ``path`` (with ``format``) or ``synthetic`` names the
    matrix.  ``synthetic_seed`` seeds the generated matrix independently of
    the trial seeds.
    """

    k_values: list
    alpha_values: list = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    trials: int = 20
    seed: int = 0
    algorithms: list = field(default_factory=lambda: list(ALGORITHMS))
    path: str = None
    format: str = None
    synthetic: SyntheticSpec = None
    synthetic_seed: int = 0
    output: str = None
    out_format: str = "csv"
    jobs: int = 1

    def __post_init__(self):
        if isinstance(self.synthetic, dict):
            self.synthetic = SyntheticSpec(**self.synthetic)
        if (self.path is None) == (self.synthetic is None):
            raise ConfigError("specify exactly one of a matrix file path or a synthetic spec")
        if self.path is not None:
            if self.format is None:
                raise ConfigError("a matrix file needs a format (mm, csv or bin)")
            try:
                self.format = normalize_format(self.format)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if not self.k_values or any(int(k) != k or k < 2 for k in self.k_values):
            raise ConfigError(f"k values must be integers >= 2, got {self.k_values}")
        if not self.alpha_values or any(not a >= 1 for a in self.alpha_values):
            raise ConfigError(f"alpha values must be >= 1, got {self.alpha_values}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigError(f"trials must be a positive integer, got {self.trials}")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ConfigError(f"unknown algorithms {sorted(unknown)}; choose from {sorted(ALGORITHMS)}")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"out_format must be csv or json, got {self.out_format!r}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        self.k_values = [int(k) for k in self.k_values]
        self.trials = int(self.trials)

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys {sorted(extra)}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def from_file(cls, path):
        try:
            d = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_dict(d)


def bundled_config(name="standard_grid"):
    """Load a configuration shipped with the package (``standard_grid``)."""
    text = resources.files("fastcur.harness").joinpath("configs").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return ExperimentConfig.from_dict(json.loads(text))


def trial_seed(base_seed, algorithm, k, alpha, trial):
    return np.random.SeedSequence([int(base_seed), ALGORITHMS[algorithm], int(k), int(round(1000 * alpha)), int(trial)])


def load_source(config):
    if config.synthetic is not None:
        return synthesize_matrix(config.synthetic, config.synthetic_seed)
    return load_matrix(config.path, config.format)


def _counts(k, alpha):
    c = int(round(alpha * k))
    return c, int(round(alpha * c))


def _run_once(A, algorithm, k, c, r, rng):
    if algorithm == "fast_cur":
        return fast_cur(A, k, params=CurParams.from_counts(k, c, r), rng=rng)
    return subspace_sampling_cur(A, k, c, r, rng=rng)


def _run_cell(A, tail, algorithm, k, alpha, trials, base_seed):
    c, r = _counts(k, alpha)
    ratios, times, cs, rs = [], [], [], []
    errors = 0
    for trial in range(trials):
        rng = np.random.default_rng(trial_seed(base_seed, algorithm, k, alpha, trial))
        try:
            t0 = time.perf_counter()
            dec = _run_once(A, algorithm, k, c, r, rng)
            elapsed = time.perf_counter() - t0
            ratio = relative_error_ratio(A, dec, k, tail)
        except (FastCurError, np.linalg.LinAlgError) as exc:
            errors += 1
            log.warning("%s k=%d alpha=%g trial %d failed: %s", algorithm, k, alpha, trial, exc)
            continue
        ratios.append(ratio)
        times.append(elapsed)
        cs.append(dec.c)
        rs.append(dec.r)

    def stats(xs):
        if not xs:
            return math.nan, math.nan
        return float(np.mean(xs)), float(np.std(xs, ddof=1)) if len(xs) > 1 else 0.0

    ratio_mean, ratio_std = stats(ratios)
    time_mean, time_std = stats(times)
    return ReportRow(
        algorithm=algorithm, k=k, alpha=float(alpha),
        realized_c=float(np.mean(cs)) if cs else math.nan,
        realized_r=float(np.mean(rs)) if rs else math.nan,
        ratio_mean=ratio_mean, ratio_std=ratio_std,
        time_mean_seconds=time_mean, time_std_seconds=time_std,
        trials=trials, errors=errors, status="ok" if ratios else "failed",
    )


def _skipped(algorithm, k, alpha, trials):
    nan = math.nan
    return ReportRow(algorithm=algorithm, k=k, alpha=float(alpha), realized_c=nan, realized_r=nan,
                     ratio_mean=nan, ratio_std=nan, time_mean_seconds=nan, time_std_seconds=nan,
                     trials=trials, errors=0, status="skipped")


def run_experiment(config, A=None):
    """
    Run the full grid and return one :class:`ReportRow` per cell.

    Rows are ordered by algorithm, then k, then alpha, following the
    config.  Cells with ``alpha k > n`` or ``alpha^2 k > m`` are reported
    with ``status="skipped"`` and logged.  Failing trials are counted in
    ``errors`` instead of aborting the grid.  Wall time covers the
    decomposition call only.

    Parameters
    ----------
    config : ExperimentConfig
    A : ndarray, optional
        Use this matrix instead of loading ``config``'s source.
    """
    if A is None:
        A = load_source(config)
    A = la.as_matrix(A)
    m, n = A.shape
    sigma = la.exact_svd(A).sigma

    cells = [(alg, k, a) for alg in config.algorithms for k in config.k_values for a in config.alpha_values]
    rows = [None] * len(cells)
    todo = []
    for i, (alg, k, alpha) in enumerate(cells):
        c, r = _counts(k, alpha)
        if c > n or r > m:
            log.warning("skipping %s k=%d alpha=%g: c=%d, r=%d exceed %dx%d", alg, k, alpha, c, r, m, n)
            rows[i] = _skipped(alg, k, alpha, config.trials)
        else:
            todo.append(i)

    tails = {k: svd_tail_norm(A, k, sigma) for k in config.k_values}
    args = [(A, tails[cells[i][1]], *cells[i], config.trials, config.seed) for i in todo]
    if config.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_cell, *zip(*args)))
    else:
        results = [_run_cell(*a) for a in args]
    for i, row in zip(todo, results):
        rows[i] = row
    return rows
