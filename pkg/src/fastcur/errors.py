"""Exception hierarchy shared by every fastcur module."""

import numpy as np


class FastCurError(Exception):
    """Base class for all errors raised by fastcur."""


class InvalidMatrix(FastCurError, ValueError):
    """Input is not a finite, non-empty, two-dimensional real array."""


class DimensionMismatch(FastCurError, ValueError):
    pass


class InvalidRank(FastCurError, ValueError):
    pass


class InvalidEpsilon(FastCurError, ValueError):
    pass


class ConvergenceFailure(FastCurError, np.linalg.LinAlgError):
    """The LAPACK SVD driver did not converge."""


class SingularShift(FastCurError, ArithmeticError):
    """A barrier shift reached or passed one of the eigenvalues."""


class NoFeasibleIndex(FastCurError, RuntimeError):
    """No index satisfies the dual-set feasibility window.

    Existence is guaranteed whenever the inputs satisfy the stated
    preconditions, so this almost always signals a broken precondition
    (for example, vectors that do not decompose the identity).
    """


class ZeroMatrix(FastCurError, ValueError):
    pass


class ZeroResidual(FastCurError, ValueError):
    """The residual vanished, so there is nothing left to sample from."""


class NotOrthonormal(FastCurError, ValueError):
    pass


class InsufficientSize(FastCurError, ValueError):
    """The requested column/row counts do not fit in the matrix."""

    def __init__(self, message, required=None, available=None):
        super().__init__(message)
        self.required = required
        self.available = available


class DegenerateDenominator(FastCurError, ZeroDivisionError):
    pass


class ParseError(FastCurError, ValueError):
    """Malformed matrix file. Carries the 1-based line (text) or byte offset."""

    def __init__(self, message, line=None, offset=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class DimensionError(ParseError):
    """Ragged rows or a payload whose size disagrees with the header."""


class InvalidSpec(FastCurError, ValueError):
    pass


class ConfigError(FastCurError, ValueError):
    pass
