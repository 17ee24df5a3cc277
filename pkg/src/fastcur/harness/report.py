"""Benchmark report rows and their CSV/JSON serializations."""

import csv
import json
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .. import _serialize

__all__ = ["ReportRow", "REPORT_HEADER", "emit_report", "read_report"]


@dataclass(frozen=True)
class ReportRow:
    """Aggregate of one (algorithm, k, alpha) cell over all trials.

    Statistics are over successful trials; ``*_std`` are sample standard
    deviations (ddof=1, zero for a single trial).  ``status`` is ``ok``,
    ``skipped`` (cell does not fit the matrix) or ``failed`` (every trial
    raised); skipped and failed rows carry NaN statistics.
    """

    algorithm: str
    k: int
    alpha: float
    realized_c: float
    realized_r: float
    ratio_mean: float
    ratio_std: float
    time_mean_seconds: float
    time_std_seconds: float
    trials: int
    errors: int = 0
    status: str = "ok"


REPORT_HEADER = tuple(f.name for f in fields(ReportRow))
_INT_FIELDS = {"k", "trials", "errors"}
_STR_FIELDS = {"algorithm", "status"}


def _cell(name, value):
    if name in _STR_FIELDS:
        return str(value)
    if name in _INT_FIELDS:
        return str(int(value))
    value = float(value)
    return format(value, ".17g") if math.isfinite(value) else "nan"


def emit_report(rows, fmt, path):
    """
    Write `rows` to `path` as ``csv`` (header + one line per row) or
    ``json`` (array of objects).  Floats carry 17 significant digits.

    Raises
    ------
    ValueError
        If `rows` is empty.
    OSError
        If the file cannot be written.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("refusing to write an empty report")
    path = Path(path)
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(REPORT_HEADER)
            for row in rows:
                writer.writerow([_cell(name, v) for name, v in zip(REPORT_HEADER, astuple(row))])
    elif fmt == "json":
        payload = [dict(zip(REPORT_HEADER, astuple(row))) for row in rows]
        path.write_text(_serialize.dumps(payload, indent=2) + "\n", encoding="utf-8")
    else:
        raise ValueError(f"unknown report format {fmt!r}; expected 'csv' or 'json'")


def _coerce(name, value):
    if name in _STR_FIELDS:
        return str(value)
    if name in _INT_FIELDS:
        return int(value)
    return math.nan if value is None or value == "nan" else float(value)


def read_report(path, fmt):
    path = Path(path)
    if fmt == "csv":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if tuple(reader.fieldnames or ()) != REPORT_HEADER:
                raise ValueError(f"unexpected header {reader.fieldnames}")
            records = list(reader)
    elif fmt == "json":
        records = json.loads(path.read_text(encoding="utf-8"))
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return [ReportRow(**{name: _coerce(name, rec[name]) for name in REPORT_HEADER}) for rec in records]
