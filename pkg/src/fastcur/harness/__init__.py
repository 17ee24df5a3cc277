"""Matrix ingestion, synthetic data and the repeated-trial benchmark grid."""

from .experiment import ALGORITHMS, DEFAULT_ALPHAS, ExperimentConfig, bundled_config, run_experiment, trial_seed
from .io import load_matrix, save_matrix
from .report import REPORT_HEADER, ReportRow, emit_report, read_report
from .synth import SyntheticSpec, synthesize_matrix

__all__ = [
    "ALGORITHMS",
    "DEFAULT_ALPHAS",
    "ExperimentConfig",
    "bundled_config",
    "run_experiment",
    "trial_seed",
    "load_matrix",
    "save_matrix",
    "REPORT_HEADER",
    "ReportRow",
    "emit_report",
    "read_report",
    "SyntheticSpec",
    "synthesize_matrix",
]
