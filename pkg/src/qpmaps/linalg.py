"""Exact linear algebra over the rationals.

Vectors and matrices are immutable tuples of ``fractions.Fraction``. All
operations here are exact: no pivot tolerance, no float intermediates.
Floats enter only through the explicit ``to_float_*`` converters used by
the dynamic (trajectory) side of the package.
"""

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

Rational = Fraction
RVector = tuple[Fraction, ...]
RMatrix = tuple[RVector, ...]


def rational(value) -> Fraction:
    """Coerce an int, string or Fraction to an exact rational.

    Floats are rejected on purpose: silently converting a binary float to
    a fraction would contaminate the exact layer.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError("zero denominator") from None
        except ValueError:
            raise ValueError(f"not a rational literal: {value!r}") from None
    raise TypeError(f"expected int, str or Fraction, got {type(value).__name__}")


def rvector(entries) -> RVector:
    return tuple(rational(e) for e in entries)


def rmatrix(rows) -> RMatrix:
    """Canonicalize nested entries to a rectangular, nonempty rational matrix."""
    out = tuple(rvector(row) for row in rows)
    if not out or not out[0]:
        raise DimensionMismatch("matrix must have at least one row and one column")
    width = len(out[0])
    for i, row in enumerate(out):
        if len(row) != width:
            raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {width}")
    return out


def identity(n: int) -> RMatrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def diagonal(entries) -> RMatrix:
    d = rvector(entries)
    zero = Fraction(0)
    return tuple(tuple(d[i] if i == j else zero for j in range(len(d))) for i in range(len(d)))


def mat_mul(x: RMatrix, y: RMatrix) -> RMatrix:
    if len(x[0]) != len(y):
        raise DimensionMismatch(f"cannot multiply {len(x)}x{len(x[0])} by {len(y)}x{len(y[0])}")
    cols = range(len(y[0]))
    return tuple(
        tuple(sum(row[k] * y[k][j] for k in range(len(y))) for j in cols) for row in x
    )


def mat_vec(m: RMatrix, v) -> RVector:
    v = rvector(v)
    if len(m[0]) != len(v):
        raise DimensionMismatch(f"cannot apply {len(m)}x{len(m[0])} to vector of length {len(v)}")
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


def augment_column(col, m: RMatrix) -> RMatrix:
    """Prepend a column: rows become (col_i, m_i1, ..., m_ik)."""
    col = rvector(col)
    if len(col) != len(m):
        raise DimensionMismatch("column length does not match row count")
    return tuple((col[i],) + m[i] for i in range(len(m)))


def is_zero(m: RMatrix) -> bool:
    return all(e == 0 for row in m for e in row)


def zero_row_indices(m: RMatrix) -> tuple[int, ...]:
    return tuple(i for i, row in enumerate(m) if all(e == 0 for e in row))


def zero_column_indices(m: RMatrix) -> tuple[int, ...]:
    return tuple(j for j in range(len(m[0])) if all(row[j] == 0 for row in m))


def rank(m: RMatrix) -> int:
    """Exact rank by Gaussian elimination over the rationals."""
    rows = [list(r) for r in m]
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(r + 1, n_rows):
            f = rows[i][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == n_rows:
            break
    return r


def inverse(m: RMatrix) -> RMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises SingularMatrix."""
    n = len(m)
    if len(m[0]) != n:
        raise DimensionMismatch(f"inverse requires a square matrix, got {n}x{len(m[0])}")
    work = [list(row) for row in m]
    out = [list(row) for row in identity(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        out[c], out[pivot] = out[pivot], out[c]
        inv = 1 / work[c][c]
        work[c] = [e * inv for e in work[c]]
        out[c] = [e * inv for e in out[c]]
        for i in range(n):
            if i == c:
                continue
            f = work[i][c]
            if f:
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
                out[i] = [a - f * b for a, b in zip(out[i], out[c])]
    return tuple(tuple(row) for row in out)


def to_float_vector(v) -> np.ndarray:
    return np.array([float(e) for e in v], dtype=float)


def to_float_matrix(m: RMatrix) -> np.ndarray:
    return np.array([[float(e) for e in row] for row in m], dtype=float)
