"""
Command-line front end.

    fastcur decompose --input A.mtx --format mm --k 10 --eps 0.5 --out dec.json
    fastcur bench --synth 1000,400,400,power,1,0 --k 10,20,50 --trials 20 --out report.csv
    fastcur bench --config standard_grid --out report.csv
    fastcur synth --synth 300,200,200,power,1,0 --seed 7 --out A.bin --format bin

Exit codes: 0 success, 2 configuration error, 3 data error,
4 numerical failure.
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import _serialize
from .cur import fast_cur, relative_error_ratio, subspace_sampling_cur
from .errors import (
    ConfigError,
    FastCurError,
    InsufficientSize,
    InvalidEpsilon,
    InvalidMatrix,
    InvalidRank,
    InvalidSpec,
    ParseError,
)
from .harness.experiment import ALGORITHMS, DEFAULT_ALPHAS, ExperimentConfig, bundled_config, run_experiment
from .harness.io import load_matrix, save_matrix
from .harness.report import emit_report
from .harness.synth import SyntheticSpec, synthesize_matrix

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
FORMAT_CHOICES = ("mm", "csv", "bin")


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _str_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_source(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--input", metavar="PATH", help="matrix file")
    g.add_argument("--synth", metavar="m,n,rank,decay,param,noise", help="synthetic matrix spec")
    p.add_argument("--format", choices=FORMAT_CHOICES, help="format of --input")
    p.add_argument("--synth-seed", type=int, default=0, help="seed for --synth (default 0)")


def _load(args):
    if args.input is not None:
        if args.format is None:
            raise ConfigError("--input requires --format")
        return load_matrix(args.input, args.format)
    return synthesize_matrix(SyntheticSpec.parse(args.synth), args.synth_seed)


def build_parser():
    parser = argparse.ArgumentParser(prog="fastcur", description="Randomized CUR decomposition tools.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="run one decomposition and write it as JSON")
    _add_source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="fast_cur")
    p.add_argument("--c", type=int, help="column count (subspace_sampling only)")
    p.add_argument("--r", type=int, help="row count (subspace_sampling only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--factors", action="store_true", help="include C, U, R in the output")
    p.add_argument("--ratio", action="store_true", help="also report the relative-error ratio (needs an exact SVD)")
    p.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    p = sub.add_parser("bench", help="run the k/alpha benchmark grid")
    _add_source(p, required=False)
    p.add_argument("--config", metavar="FILE|NAME", help="JSON config file or bundled config name")
    p.add_argument("--k", type=_int_list)
    p.add_argument("--alpha", type=_float_list)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--algos", type=_str_list)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--out-format", choices=("csv", "json"))
    p.add_argument("--jobs", type=int)

    p = sub.add_parser("synth", help="write a synthetic matrix to a file")
    p.add_argument("--synth", required=True, metavar="m,n,rank,decay,param,noise")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--format", choices=FORMAT_CHOICES, default="bin")
    return parser


def _cmd_decompose(args):
    A = _load(args)
    if args.algo == "fast_cur":
        dec = fast_cur(A, args.k, args.eps, rng=args.seed)
    else:
        if args.c is None or args.r is None:
            raise ConfigError("subspace_sampling needs --c and --r")
        dec = subspace_sampling_cur(A, args.k, args.c, args.r, rng=args.seed)
    payload = dec.to_dict(include_factors=args.factors)
    if args.ratio:
        payload["relative_error_ratio"] = relative_error_ratio(A, dec, args.k)
    text = _serialize.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _bench_config(args):
    if args.config:
        path = Path(args.config)
        cfg = ExperimentConfig.from_file(path) if path.exists() else bundled_config(args.config)
        d = {name: getattr(cfg, name) for name in cfg.__dataclass_fields__}
    else:
        d = {"k_values": None}
    overrides = {
        "k_values": args.k, "alpha_values": args.alpha, "trials": args.trials, "seed": args.seed,
        "algorithms": args.algos, "output": args.out, "out_format": args.out_format, "jobs": args.jobs,
    }
    d.update({key: v for key, v in overrides.items() if v is not None})
    if args.input is not None or args.synth is not None:
        d.update(path=None, format=None, synthetic=None)
        if args.input is not None:
            d.update(path=args.input, format=args.format)
        else:
            d.update(synthetic=SyntheticSpec.parse(args.synth), synthetic_seed=args.synth_seed)
    if d.get("k_values") is None:
        raise ConfigError("bench needs --k or --config")
    d.setdefault("alpha_values", list(DEFAULT_ALPHAS))
    return ExperimentConfig.from_dict(d)


def _cmd_bench(args):
    try:
        cfg = _bench_config(args)
    except FileNotFoundError as exc:
        raise ConfigError(f"unknown config {args.config!r}: {exc}") from None
    if not cfg.output:
        raise ConfigError("bench needs --out (or 'output' in the config)")
    rows = run_experiment(cfg)
    emit_report(rows, cfg.out_format, cfg.output)


def _cmd_synth(args):
    A = synthesize_matrix(SyntheticSpec.parse(args.synth), args.seed)
    save_matrix(A, args.out, args.format)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"decompose": _cmd_decompose, "bench": _cmd_bench, "synth": _cmd_synth}[args.command]
    try:
        handler(args)
    except (ConfigError, InvalidSpec, InvalidRank, InvalidEpsilon, InsufficientSize) as exc:
        print(f"fastcur: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, InvalidMatrix, OSError) as exc:
        print(f"fastcur: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (FastCurError, np.linalg.LinAlgError) as exc:
        print(f"fastcur: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
