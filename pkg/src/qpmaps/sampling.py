"""Random maps, transformations and states for tests and experiments.

The symplectic generator fills the exact zero pattern (one variable pair
per quasimonomial row) with nonzero rationals and then halves A and lam
until two float-safety bounds hold, so that residual and trajectory checks
run far from double-precision cliffs. Entries always stay within [-3, 3].
"""

from fractions import Fraction

import numpy as np

from .core import QPMap, new_qp_map
from .errors import SingularMatrix, ZeroColumnOfA, ZeroRowOfB
from .transform import QMT, new_qmt

_NUMERATORS = (1, 2, 3)
_DENOMINATORS = (1, 2)

#: Bound on max_i |lam_i| + sum_p |A_ip| * qbar_p (qbar_p = largest
#: quasimonomial value over [0.5, 2]^n); keeps exp() arguments small during
#: 30-step trajectory checks.
DEFAULT_PHI_BOUND = 8.0
#: Bound on 4 * max_ij sum_p |A_ip| qbar_p |B_pj|, the worst |x_i dphi_i/dx_j|
#: over [0.5, 2]^n; keeps Jacobian residual cancellation benign.
DEFAULT_DERIVATIVE_BOUND = 100.0


def random_rational(rng, numerators=_NUMERATORS, denominators=_DENOMINATORS,
                    allow_zero=False) -> Fraction:
    if allow_zero and rng.random() < 0.25:
        return Fraction(0)
    sign = -1 if rng.random() < 0.5 else 1
    return Fraction(sign * int(rng.choice(numerators)), int(rng.choice(denominators)))


def random_state(rng, n: int, lo: float = 0.5, hi: float = 2.0) -> np.ndarray:
    """A state sampled log-uniformly in [lo, hi]^n."""
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=n))


def _qbar(b_value: Fraction) -> float:
    # largest value of I**b for I in [1/4, 4]
    return 4.0 ** abs(float(b_value))


def _phi_magnitude_bound(lam, a, b_values) -> float:
    qbar = [_qbar(v) for v in b_values]
    worst = 0.0
    for i, row in enumerate(a):
        total = abs(float(lam[i])) + sum(abs(float(e)) * qb for e, qb in zip(row, qbar))
        worst = max(worst, total)
    return worst


def _derivative_bound(a, b_rows, b_values) -> float:
    qbar = [_qbar(v) for v in b_values]
    worst = 0.0
    n = len(a)
    for i in range(n):
        for j in range(n):
            total = sum(
                abs(float(a[i][p])) * qbar[p] * abs(float(b_rows[p][j]))
                for p in range(len(b_rows))
            )
            worst = max(worst, 4.0 * total)
    return worst


def random_symplectic_map(rng, n: int, m: int | None = None,
                          integer_entries: bool = False,
                          phi_bound: float | None = DEFAULT_PHI_BOUND,
                          derivative_bound: float | None = DEFAULT_DERIVATIVE_BOUND,
                          ) -> QPMap:
    """A random symplectic map of even dimension n.

    With integer_entries=True all entries are drawn from {-2, -1, 1, 2}
    (lam also 0) and the float-safety scaling is skipped, which suits
    classification-only workloads. Otherwise entries are small rationals
    and A, lam are halved until the documented bounds hold.
    """
    if n % 2:
        raise ValueError("n must be even")
    s = n // 2
    if m is None:
        m = int(rng.integers(1, 7))

    if integer_entries:
        draw = lambda: Fraction(int(rng.choice((-2, -1, 1, 2))))
        draw_lam = lambda: Fraction(int(rng.integers(-2, 3)))
    else:
        draw = lambda: random_rational(rng)
        draw_lam = lambda: random_rational(rng, allow_zero=True)

    pair = [int(rng.integers(0, s)) for _ in range(m)]
    b_values = [draw() for _ in range(m)]
    a_values = [draw() for _ in range(m)]
    lam_half = [draw_lam() for _ in range(s)]

    zero = Fraction(0)
    b_rows = [
        tuple(b_values[p] if j in (pair[p], s + pair[p]) else zero for j in range(n))
        for p in range(m)
    ]
    a_rows = [
        tuple(
            a_values[p] if i == pair[p] else (-a_values[p] if i == s + pair[p] else zero)
            for p in range(m)
        )
        for i in range(n)
    ]
    lam = list(lam_half) + [-v for v in lam_half]

    if not integer_entries:
        while ((phi_bound is not None
                and _phi_magnitude_bound(lam, a_rows, b_values) > phi_bound)
               or (derivative_bound is not None
                   and _derivative_bound(a_rows, b_rows, b_values) > derivative_bound)):
            lam = [v / 2 for v in lam]
            a_rows = [tuple(e / 2 for e in row) for row in a_rows]
    return new_qp_map(lam, a_rows, b_rows)


def random_valid_map(rng, n: int, m: int, lo: int = -2, hi: int = 2) -> QPMap:
    """A random strict map with integer entries in [lo, hi]."""
    def nonzero_vector(size):
        while True:
            v = rng.integers(lo, hi + 1, size=size)
            if np.any(v != 0):
                return [Fraction(int(e)) for e in v]

    lam = [Fraction(int(e)) for e in rng.integers(lo, hi + 1, size=n)]
    a_cols = [nonzero_vector(n) for _ in range(m)]
    a_rows = [tuple(a_cols[p][i] for p in range(m)) for i in range(n)]
    b_rows = [tuple(nonzero_vector(n)) for _ in range(m)]
    return new_qp_map(lam, a_rows, b_rows)


def random_classification_map(rng, dims=(2, 4, 6), max_m: int = 6) -> QPMap:
    """A random valid map for classifier cross-checks: a mix of generic maps,
    exactly patterned symplectic maps and minimally perturbed ones, all with
    entries in {-2, ..., 2}."""
    n = int(rng.choice(dims))
    m = int(rng.integers(1, max_m + 1))
    u = rng.random()
    if u < 0.5:
        return random_valid_map(rng, n, m)
    qp = random_symplectic_map(rng, n, m, integer_entries=True)
    if u < 0.8:
        return qp
    # perturb one entry; retry if the result leaves the strict form
    for _ in range(100):
        lam = list(qp.lam)
        a = [list(row) for row in qp.A]
        b = [list(row) for row in qp.B]
        target = int(rng.integers(0, 3))
        value = Fraction(int(rng.integers(-2, 3)))
        if target == 0:
            a[int(rng.integers(0, n))][int(rng.integers(0, m))] = value
        elif target == 1:
            b[int(rng.integers(0, m))][int(rng.integers(0, n))] = value
        else:
            lam[int(rng.integers(0, n))] = value
        try:
            return new_qp_map(lam, a, b)
        except (ZeroColumnOfA, ZeroRowOfB):
            continue
    return qp


def random_qmt(rng, n: int, lo: int = -2, hi: int = 2) -> QMT:
    """A random invertible integer QMT (rejection sampling on singularity)."""
    while True:
        c = rng.integers(lo, hi + 1, size=(n, n))
        try:
            return new_qmt([[int(e) for e in row] for row in c])
        except SingularMatrix:
            continue
