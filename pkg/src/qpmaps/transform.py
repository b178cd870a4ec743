"""Quasimonomial transformations (QMTs) and the QP equivalence-class tools.

A QMT with invertible matrix C changes variables by x_i = prod_j y_j**C[i][j].
It maps QP maps to QP maps with A' = C^-1 A, B' = B C, lam' = C^-1 lam and is
a topological conjugacy, so transformed maps are dynamically equivalent.
The product B.M with M = (lam | A) is identical for all members of a class
and is the M matrix of the class's canonical Lotka-Volterra representative.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import QPMap, as_state, relaxed_qp_map
from .errors import DegenerateResult, DimensionMismatch
from .linalg import (
    RMatrix,
    augment_column,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    rmatrix,
    to_float_matrix,
    zero_column_indices,
    zero_row_indices,
)


@dataclass(frozen=True)
class QMT:
    """An invertible rational change of variables x_i = prod_j y_j**C[i][j]."""

    C: RMatrix
    C_inv: RMatrix

    def __post_init__(self):
        c = rmatrix(self.C)
        c_inv = rmatrix(self.C_inv)
        n = len(c)
        if len(c[0]) != n or len(c_inv) != n or len(c_inv[0]) != n:
            raise DimensionMismatch("QMT matrices must be square and of equal size")
        if mat_mul(c, c_inv) != identity(n):
            raise ValueError("C_inv is not the exact inverse of C")
        object.__setattr__(self, "C", c)
        object.__setattr__(self, "C_inv", c_inv)

    @property
    def n(self) -> int:
        return len(self.C)

    @cached_property
    def C_f(self) -> np.ndarray:
        return to_float_matrix(self.C)

    @cached_property
    def C_inv_f(self) -> np.ndarray:
        return to_float_matrix(self.C_inv)


def new_qmt(C) -> QMT:
    """Build a QMT from its matrix, computing the exact inverse.

    Raises SingularMatrix when det(C) = 0.
    """
    c = rmatrix(C)
    if len(c) != len(c[0]):
        raise DimensionMismatch(f"QMT matrix must be square, got {len(c)}x{len(c[0])}")
    return QMT(c, inverse(c))


def solver_qmt(s: int) -> QMT:
    """The fixed self-inverse block transformation [[I, I], [0, -I]] of size 2s.

    Applied to a symplectic map it decouples the dynamics: the first s new
    variables are the conserved pair products and stay constant, the last s
    evolve geometrically. This is the change of variables behind the
    closed-form solver.
    """
    if s < 1:
        raise ValueError("s must be a positive integer")
    one, zero = 1, 0
    c = [
        [one if (j == i or j == i + s) else zero for j in range(2 * s)]
        for i in range(s)
    ] + [
        [-one if j == i + s else zero for j in range(2 * s)]
        for i in range(s)
    ]
    m = rmatrix(c)
    return QMT(m, m)


def apply_qmt(qp: QPMap, t: QMT, strict: bool = True) -> QPMap:
    """Transform a map: A' = C^-1 A, B' = B C, lam' = C^-1 lam (all exact).

    A QMT can push a map out of the strict QP form by creating a zero row
    in B' or a zero column in A'. With strict=True this raises
    DegenerateResult carrying the relaxed result; with strict=False the
    relaxed map is returned silently.
    """
    if t.n != qp.n:
        raise DimensionMismatch(f"QMT is {t.n}x{t.n} but map has n={qp.n}")
    lam2 = mat_vec(t.C_inv, qp.lam)
    a2 = mat_mul(t.C_inv, qp.A)
    b2 = mat_mul(qp.B, t.C)
    result = relaxed_qp_map(lam2, a2, b2)
    if strict:
        zero_cols = zero_column_indices(a2)
        zero_rows = zero_row_indices(b2)
        if zero_cols or zero_rows:
            parts = []
            if zero_cols:
                parts.append(f"zero columns of A': {list(zero_cols)}")
            if zero_rows:
                parts.append(f"zero rows of B': {list(zero_rows)}")
            raise DegenerateResult(
                "transformed map left the strict QP form (" + "; ".join(parts) + ")",
                result=result,
                zero_a_columns=zero_cols,
                zero_b_rows=zero_rows,
            )
    return result


def push_state(t: QMT, y) -> np.ndarray:
    """Map transformed coordinates to original ones: x_i = prod_j y_j**C[i][j]."""
    y = as_state(y, t.n)
    return np.exp(t.C_f @ np.log(y))


def pull_state(t: QMT, x) -> np.ndarray:
    """Map original coordinates to transformed ones: y_j = prod_i x_i**C_inv[j][i]."""
    x = as_state(x, t.n)
    return np.exp(t.C_inv_f @ np.log(x))


def class_invariant(qp: QPMap) -> RMatrix:
    """The exact m x (m+1) product B.M with M = (lam | A).

    Identical for every map reachable from qp by QMTs; it is the null matrix
    for every symplectic map (the converse does not hold).
    """
    return mat_mul(qp.B, augment_column(qp.lam, qp.A))


def lv_canonical(qp: QPMap) -> QPMap:
    """The canonical Lotka-Volterra representative of qp's equivalence class.

    Returns the m-variable map with M_c = B.M and B_c = I. When B.A has a
    zero column the representative leaves the strict QP form (for symplectic
    maps it is always the trivial identity map); DegenerateResult is raised
    carrying both the relaxed map and the raw canonical matrix.
    """
    mc = class_invariant(qp)
    lam_c = tuple(row[0] for row in mc)
    a_c = tuple(row[1:] for row in mc)
    b_c = identity(qp.m)
    result = relaxed_qp_map(lam_c, a_c, b_c)
    zero_cols = zero_column_indices(a_c)
    if zero_cols:
        raise DegenerateResult(
            f"canonical Lotka-Volterra form is degenerate: columns {list(zero_cols)}"
            " of B.A are zero",
            result=result,
            zero_a_columns=zero_cols,
            canonical_matrix=mc,
        )
    return result
