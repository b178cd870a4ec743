"""Fixture maps and brute-force oracles shared across the test suite."""

from fractions import Fraction

import numpy as np

from qpmaps import QPMap, new_qp_map, relaxed_qp_map, step


def dim2_map() -> QPMap:
    """The two-variable symplectic fixture: lam=(1,-1), A=[[2],[-2]], B=[[1,1]]."""
    return new_qp_map((1, -1), ((2,), (-2,)), ((1, 1),))


def dim2_variant() -> QPMap:
    """Non-symplectic twin of dim2_map (unequal exponent pair B=[[1,2]])."""
    return new_qp_map((1, -1), ((2,), (-2,)), ((1, 2),))


def dim4_map(lam1=1, lam2=2) -> QPMap:
    """The four-variable, five-quasimonomial patterned fixture.

    Rows 1-3 of B couple the pair (2, 4), rows 4-5 the pair (1, 3); all
    named entries are 1. lam = (lam1, lam2, -lam1, -lam2).
    """
    l1, l2 = Fraction(lam1), Fraction(lam2)
    lam = (l1, l2, -l1, -l2)
    a = (
        (0, 0, 0, 1, 1),
        (1, 1, 1, 0, 0),
        (0, 0, 0, -1, -1),
        (-1, -1, -1, 0, 0),
    )
    b = (
        (0, 1, 0, 1),
        (0, 1, 0, 1),
        (0, 1, 0, 1),
        (1, 0, 1, 0),
        (1, 0, 1, 0),
    )
    return new_qp_map(lam, a, b)


def trivial_lv_map(n: int) -> QPMap:
    """The identity map in Lotka-Volterra form (lam=0, A=0, B=I).

    A zero A is outside the strict form, so this is a relaxed map.
    """
    zero = Fraction(0)
    lam = (zero,) * n
    a = ((zero,) * n,) * n
    b = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    return relaxed_qp_map(lam, a, b)


def quasimonomial_oracle(b_rows, x) -> np.ndarray:
    """Direct product prod_k x_k**B[j][k] (no exp/log path)."""
    x = np.asarray(x, dtype=float)
    out = []
    for row in b_rows:
        value = 1.0
        for xk, e in zip(x, row):
            value *= xk ** float(e)
        out.append(value)
    return np.array(out)


def fd_jacobian(qp: QPMap, x, rel_step: float = 1e-6) -> np.ndarray:
    """Central finite differences of step() with per-component relative step."""
    x = np.asarray(x, dtype=float)
    n = len(x)
    out = np.empty((n, n))
    for j in range(n):
        h = rel_step * x[j]
        xp, xm = x.copy(), x.copy()
        xp[j] += h
        xm[j] -= h
        out[:, j] = (step(qp, xp) - step(qp, xm)) / (2 * h)
    return out


def rank_by_minors(m) -> int:
    """Exact rank via determinants of all square submatrices (small inputs)."""
    from itertools import combinations

    rows = [list(r) for r in m]
    n_rows, n_cols = len(rows), len(rows[0])

    def det(idx_r, idx_c):
        k = len(idx_r)
        if k == 1:
            return rows[idx_r[0]][idx_c[0]]
        total = Fraction(0)
        for pos, c in enumerate(idx_c):
            minor = det(idx_r[1:], idx_c[:pos] + idx_c[pos + 1:])
            term = rows[idx_r[0]][c] * minor
            total += term if pos % 2 == 0 else -term
        return total

    for k in range(min(n_rows, n_cols), 0, -1):
        for idx_r in combinations(range(n_rows), k):
            for idx_c in combinations(range(n_cols), k):
                if det(idx_r, idx_c) != 0:
                    return k
    return 0


def relative_gap(a, b, floor: float = 1.0) -> float:
    """Componentwise |a-b| / max(|a|, |b|, floor), reduced with max()."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)
    return float(np.max(np.abs(a - b) / scale))
