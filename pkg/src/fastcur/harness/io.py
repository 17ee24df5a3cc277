"""
Dense matrix file formats.

``mm``
    Matrix Market, ``array`` or ``coordinate`` layout, ``real``/``integer``/
    ``pattern`` field, ``general``/``symmetric``/``skew-symmetric``
    symmetry.  Coordinate entries are densified (absent entries are zero,
    repeated entries are summed).
``csv``
    One matrix row per line, comma-separated decimals.
``bin``
    16-byte header holding ``m`` and ``n`` as little-endian uint64, then
    ``m * n`` little-endian float64 values in row-major order.
"""

import csv
import struct
from pathlib import Path

import numpy as np

from ..errors import DimensionError, ParseError
from ..linalg import as_matrix

__all__ = ["FORMATS", "normalize_format", "load_matrix", "save_matrix"]

FORMATS = ("mm", "csv", "bin")
_ALIASES = {
    "mm": "mm", "mtx": "mm", "matrix-market": "mm", "matrixmarket": "mm",
    "csv": "csv",
    "bin": "bin", "raw": "bin", "raw-binary": "bin",
}
_BIN_HEADER = struct.Struct("<QQ")


def normalize_format(fmt):
    try:
        return _ALIASES[fmt.lower()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown matrix format {fmt!r}; expected one of {FORMATS}") from None


def load_matrix(path, fmt):
    """Read a dense float64 matrix from `path` in format `fmt`.

    Raises
    ------
    ParseError
        Malformed content, with the offending line (text) or byte offset.
    DimensionError
        Ragged CSV rows or a payload that disagrees with the declared size.
    """
    fmt = normalize_format(fmt)
    path = Path(path)
    if fmt == "bin":
        return _load_bin(path.read_bytes())
    with open(path, newline="", encoding="utf-8") as fh:
        if fmt == "csv":
            return _load_csv(fh)
        return _load_mm(fh)


def save_matrix(A, path, fmt):
    A = as_matrix(A)
    fmt = normalize_format(fmt)
    path = Path(path)
    m, n = A.shape
    if fmt == "bin":
        with open(path, "wb") as fh:
            fh.write(_BIN_HEADER.pack(m, n))
            fh.write(np.ascontiguousarray(A, dtype="<f8").tobytes())
    elif fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            for row in A:
                fh.write(",".join(format(v, ".17g") for v in row) + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("%%MatrixMarket matrix array real general\n")
            fh.write(f"{m} {n}\n")
            # array layout is column-major
            for v in A.T.ravel():
                fh.write(format(v, ".17g") + "\n")


def _parse_float(token, line):
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"not a number: {token!r}", line=line) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value {token!r}", line=line)
    return value


def _load_csv(fh):
    rows = []
    width = None
    for lineno, fields in enumerate(csv.reader(fh), start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DimensionError(f"expected {width} fields, found {len(fields)}", line=lineno)
        rows.append([_parse_float(f.strip(), lineno) for f in fields])
    if not rows:
        raise ParseError("empty CSV file", line=1)
    return np.array(rows, dtype=np.float64)


def _load_bin(data):
    if len(data) < _BIN_HEADER.size:
        raise DimensionError(f"file is {len(data)} bytes, shorter than the header", offset=0)
    m, n = _BIN_HEADER.unpack_from(data, 0)
    if m < 1 or n < 1:
        raise ParseError(f"invalid dimensions {m}x{n}", offset=0)
    expected = _BIN_HEADER.size + 8 * m * n
    if len(data) != expected:
        raise DimensionError(f"{m}x{n} payload needs {expected} bytes, file has {len(data)}",
                             offset=min(len(data), expected))
    A = np.frombuffer(data, dtype="<f8", offset=_BIN_HEADER.size).reshape(m, n).astype(np.float64)
    bad = np.flatnonzero(~np.isfinite(A.ravel()))
    if bad.size:
        raise ParseError("non-finite value", offset=_BIN_HEADER.size + 8 * int(bad[0]))
    return A


def _data_lines(fh, start):
    for lineno, line in enumerate(fh, start=start):
        stripped = line.strip()
        if stripped and not stripped.startswith("%"):
            yield lineno, stripped.split()


def _load_mm(fh):
    header = fh.readline()
    tokens = header.strip().lower().split()
    if len(tokens) != 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise ParseError("missing '%%MatrixMarket matrix' banner", line=1)
    layout, field, symmetry = tokens[2:]
    if layout not in ("array", "coordinate"):
        raise ParseError(f"unsupported layout {layout!r}", line=1)
    if field not in ("real", "integer", "double", "pattern"):
        raise ParseError(f"unsupported field {field!r}", line=1)
    if symmetry not in ("general", "symmetric", "skew-symmetric"):
        raise ParseError(f"unsupported symmetry {symmetry!r}", line=1)
    if layout == "array" and field == "pattern":
        raise ParseError("pattern field requires coordinate layout", line=1)

    lines = _data_lines(fh, start=2)
    try:
        lineno, size = next(lines)
    except StopIteration:
        raise ParseError("missing size line", line=2) from None
    want = 3 if layout == "coordinate" else 2
    if len(size) != want:
        raise ParseError(f"size line needs {want} integers", line=lineno)
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError("size line must hold integers", line=lineno) from None
    m, n = dims[0], dims[1]
    if m < 1 or n < 1:
        raise ParseError(f"invalid dimensions {m}x{n}", line=lineno)
    if symmetry != "general" and m != n:
        raise ParseError(f"{symmetry} matrix must be square", line=lineno)
    sign = -1.0 if symmetry == "skew-symmetric" else 1.0

    A = np.zeros((m, n))
    if layout == "coordinate":
        nnz = dims[2]
        ncols = 2 if field == "pattern" else 3
        count = 0
        for lineno, parts in lines:
            if len(parts) != ncols:
                raise ParseError(f"expected {ncols} fields, found {len(parts)}", line=lineno)
            try:
                i, j = int(parts[0]) - 1, int(parts[1]) - 1
            except ValueError:
                raise ParseError("entry indices must be integers", line=lineno) from None
            if not (0 <= i < m and 0 <= j < n):
                raise ParseError(f"index ({i + 1}, {j + 1}) outside {m}x{n}", line=lineno)
            v = 1.0 if field == "pattern" else _parse_float(parts[2], lineno)
            A[i, j] += v
            if symmetry != "general" and i != j:
                A[j, i] += sign * v
            count += 1
        if count != nnz:
            raise DimensionError(f"header declares {nnz} entries, found {count}", line=lineno)
        return A

    # array layout: column-major; symmetric variants store the lower triangle only
    if symmetry == "general":
        positions = [(i, j) for j in range(n) for i in range(m)]
    elif symmetry == "symmetric":
        positions = [(i, j) for j in range(n) for i in range(j, m)]
    else:
        positions = [(i, j) for j in range(n) for i in range(j + 1, m)]
    count = 0
    for lineno, parts in lines:
        if len(parts) != 1:
            raise ParseError(f"expected 1 value, found {len(parts)}", line=lineno)
        if count >= len(positions):
            raise DimensionError(f"more than {len(positions)} values", line=lineno)
        i, j = positions[count]
        v = _parse_float(parts[0], lineno)
        A[i, j] = v
        if symmetry != "general" and i != j:
            A[j, i] = sign * v
        count += 1
    if count != len(positions):
        raise DimensionError(f"expected {len(positions)} values, found {count}", line=lineno)
    return A
