"""Exact symplecticity classification of QP maps, with numeric cross-checks.

A map on R^n, n = 2s, is symplectic when its Jacobian K satisfies
K^T S K = S at every point of the positive orthant, with S the standard
skew block matrix [[0, -I], [I, 0]]. For QP maps this holds exactly when
four algebraic conditions on (lam, A, B) are met; they are evaluated here
over the rationals, so verdicts carry no tolerance. Two independent
implementations are provided (the condition equations, and the equivalent
zero-pattern characterization of A and B) plus float-level residual
oracles based on the Jacobian.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import QPMap, as_state, jacobian
from .errors import NotSymplectic, OddDimension
from .linalg import augment_column, rank

#: Verdicts are exact; this tolerance only applies to the float residual oracles.
RESIDUAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Witness:
    """One concrete violation of a classification condition.

    ``where`` holds 1-based index assignments such as (("i", 1), ("p", 2));
    ``value`` is the exact quantity that should have vanished (or, for
    support-pattern violations, the offending support size); ``detail`` is a
    human-readable rendering used by the CLI.
    """

    where: tuple[tuple[str, int], ...]
    value: Fraction
    detail: str

    def location(self) -> str:
        return ", ".join(f"{name}={index}" for name, index in self.where)


@dataclass(frozen=True)
class ConditionVerdict:
    applicable: bool
    witnesses: tuple[Witness, ...] = ()

    @property
    def holds(self) -> bool:
        return self.applicable and not self.witnesses


_NOT_APPLICABLE = ConditionVerdict(applicable=False)


@dataclass(frozen=True)
class SymplecticReport:
    """Outcome of a symplecticity check.

    ``pairing`` (present when symplectic) assigns each quasimonomial row p
    its 1-based variable-pair index i_p: row p of B and column p of A are
    supported exactly on the pair (i_p, s+i_p).
    """

    is_symplectic: bool
    s: int | None
    cond_a: ConditionVerdict
    cond_b: ConditionVerdict
    cond_c: ConditionVerdict
    cond_d: ConditionVerdict
    pairing: tuple[int | None, ...] | None
    reason: str | None = None

    def conditions(self) -> tuple[tuple[str, ConditionVerdict], ...]:
        return (("a", self.cond_a), ("b", self.cond_b), ("c", self.cond_c), ("d", self.cond_d))


@dataclass(frozen=True)
class RankReport:
    """Exact ranks of B, A and the augmented matrix M = (lam | A).

    ``bound_satisfied`` evaluates rank(B) <= s and rank(M) <= s, a necessary
    condition for symplecticity; it is None when n is odd (no s exists).
    """

    rank_B: int
    rank_A: int
    rank_M: int
    bound_satisfied: bool | None


@dataclass(frozen=True)
class ConservedProduct:
    """The pair product x_i * x_{s+i}, constant along symplectic orbits."""

    i: int  # 1-based pair index
    s: int

    def value_at(self, x) -> float:
        x = as_state(x, 2 * self.s)
        return float(x[self.i - 1] * x[self.s + self.i - 1])


def check_conditions(qp: QPMap) -> SymplecticReport:
    """Exact classification by the four condition equations.

    With s = n/2 the map is symplectic iff
      (a) A[i][j] + A[s+i][j] = 0           for all i <= s and all j,
      (b) lam[i] + lam[s+i] = 0             for all i <= s,
      (c) A[i][p]*B[p][j] = 0 and
          A[i][p]*B[p][s+j] = 0             for all i != j <= s and all p,
      (d) A[i][p]*(B[p][i] - B[p][s+i]) = 0 for all i <= s and all p.
    Odd n is a definite "not symplectic" verdict, not an error.
    """
    n, m = qp.n, qp.m
    if n % 2:
        return SymplecticReport(
            is_symplectic=False,
            s=None,
            cond_a=_NOT_APPLICABLE,
            cond_b=_NOT_APPLICABLE,
            cond_c=_NOT_APPLICABLE,
            cond_d=_NOT_APPLICABLE,
            pairing=None,
            reason=f"odd dimension n={n}: an even number of variables is required",
        )
    s = n // 2
    lam, a, b = qp.lam, qp.A, qp.B

    wit_a = []
    for i in range(s):
        for j in range(m):
            v = a[i][j] + a[s + i][j]
            if v:
                wit_a.append(Witness(
                    (("i", i + 1), ("j", j + 1)), v,
                    f"A[{i + 1},{j + 1}] + A[{s + i + 1},{j + 1}] = {a[i][j]} + {a[s + i][j]} = {v}",
                ))

    wit_b = []
    for i in range(s):
        v = lam[i] + lam[s + i]
        if v:
            wit_b.append(Witness(
                (("i", i + 1),), v,
                f"lambda[{i + 1}] + lambda[{s + i + 1}] = {lam[i]} + {lam[s + i]} = {v}",
            ))

    wit_c = []
    for i in range(s):
        for j in range(s):
            if i == j:
                continue
            for p in range(m):
                if not a[i][p]:
                    continue
                v1 = a[i][p] * b[p][j]
                if v1:
                    wit_c.append(Witness(
                        (("i", i + 1), ("j", j + 1), ("p", p + 1)), v1,
                        f"A[{i + 1},{p + 1}]*B[{p + 1},{j + 1}] = {a[i][p]}*{b[p][j]} = {v1}",
                    ))
                v2 = a[i][p] * b[p][s + j]
                if v2:
                    wit_c.append(Witness(
                        (("i", i + 1), ("j", j + 1), ("p", p + 1)), v2,
                        f"A[{i + 1},{p + 1}]*B[{p + 1},{s + j + 1}] = {a[i][p]}*{b[p][s + j]} = {v2}",
                    ))

    wit_d = []
    for i in range(s):
        for p in range(m):
            v = a[i][p] * (b[p][i] - b[p][s + i])
            if v:
                wit_d.append(Witness(
                    (("i", i + 1), ("p", p + 1)), v,
                    f"A[{i + 1},{p + 1}]*(B[{p + 1},{i + 1}] - B[{p + 1},{s + i + 1}])"
                    f" = {a[i][p]}*({b[p][i]} - {b[p][s + i]}) = {v}",
                ))

    ok = not (wit_a or wit_b or wit_c or wit_d)
    pairing = None
    if ok:
        assignments: list[int | None] = []
        for p in range(m):
            carriers = [i for i in range(s) if a[i][p] or a[s + i][p]]
            # Under the conditions, a strict map concentrates each A column on
            # one pair; relaxed maps may carry inert (all-zero) columns.
            assignments.append(carriers[0] + 1 if len(carriers) == 1 else None)
        pairing = tuple(assignments)
    return SymplecticReport(
        is_symplectic=ok,
        s=s,
        cond_a=ConditionVerdict(True, tuple(wit_a)),
        cond_b=ConditionVerdict(True, tuple(wit_b)),
        cond_c=ConditionVerdict(True, tuple(wit_c)),
        cond_d=ConditionVerdict(True, tuple(wit_d)),
        pairing=pairing,
    )


def check_pattern(qp: QPMap) -> SymplecticReport:
    """Independent classification by the zero-pattern characterization.

    The map is symplectic iff, for every quasimonomial row p, there is a
    pair index i_p such that: row p of B is zero except for two equal
    entries at columns (i_p, s+i_p); column p of A is zero except for two
    entries at rows (i_p, s+i_p) that sum to zero; and every lam pair sums
    to zero. Findings are reported in the same four verdict slots as
    :func:`check_conditions`: A-column pattern under (a), lam sums under
    (b), B-row support under (c), B pair equality under (d).

    Raises OddDimension for odd n, where no pairing construction exists.
    """
    n, m = qp.n, qp.m
    if n % 2:
        raise OddDimension(f"pattern check requires even dimension, got n={n}")
    s = n // 2
    lam, a, b = qp.lam, qp.A, qp.B

    wit_a, wit_c, wit_d = [], [], []
    pairing: list[int | None] = []
    for p in range(m):
        support = [j for j in range(n) if b[p][j]]
        ip = None
        if len(support) == 2 and support[0] < s and support[1] == support[0] + s:
            ip = support[0]
            diff = b[p][ip] - b[p][s + ip]
            if diff:
                wit_d.append(Witness(
                    (("p", p + 1), ("i", ip + 1)), diff,
                    f"B[{p + 1},{ip + 1}] - B[{p + 1},{s + ip + 1}]"
                    f" = {b[p][ip]} - {b[p][s + ip]} = {diff}",
                ))
        else:
            pretty = [j + 1 for j in support]
            wit_c.append(Witness(
                (("p", p + 1),), Fraction(len(support)),
                f"row {p + 1} of B must have exactly two nonzero entries at paired"
                f" columns (i, s+i); nonzero columns are {pretty}",
            ))

        col_support = [i for i in range(n) if a[i][p]]
        pair_shaped = (
            len(col_support) == 2
            and col_support[0] < s
            and col_support[1] == col_support[0] + s
        )
        if not pair_shaped or (ip is not None and col_support[0] != ip):
            pretty = [i + 1 for i in col_support]
            wit_a.append(Witness(
                (("p", p + 1),), Fraction(len(col_support)),
                f"column {p + 1} of A must have exactly two nonzero entries at the"
                f" paired rows of its quasimonomial; nonzero rows are {pretty}",
            ))
        else:
            ia = col_support[0]
            total = a[ia][p] + a[s + ia][p]
            if total:
                wit_a.append(Witness(
                    (("i", ia + 1), ("p", p + 1)), total,
                    f"A[{ia + 1},{p + 1}] + A[{s + ia + 1},{p + 1}]"
                    f" = {a[ia][p]} + {a[s + ia][p]} = {total}",
                ))
        pairing.append(ip + 1 if ip is not None else None)

    wit_b = []
    for i in range(s):
        v = lam[i] + lam[s + i]
        if v:
            wit_b.append(Witness(
                (("i", i + 1),), v,
                f"lambda[{i + 1}] + lambda[{s + i + 1}] = {lam[i]} + {lam[s + i]} = {v}",
            ))

    ok = not (wit_a or wit_b or wit_c or wit_d)
    return SymplecticReport(
        is_symplectic=ok,
        s=s,
        cond_a=ConditionVerdict(True, tuple(wit_a)),
        cond_b=ConditionVerdict(True, tuple(wit_b)),
        cond_c=ConditionVerdict(True, tuple(wit_c)),
        cond_d=ConditionVerdict(True, tuple(wit_d)),
        pairing=tuple(pairing) if ok else None,
    )


def skew_matrix(s: int) -> np.ndarray:
    """The standard skew block matrix [[0, -I], [I, 0]] of size 2s."""
    z = np.zeros((s, s))
    i = np.eye(s)
    return np.block([[z, -i], [i, z]])


def symplectic_residual(qp: QPMap, x) -> float:
    """Max-abs entry of K^T S K - S for the Jacobian K at x (0 iff symplectic at x)."""
    if qp.n % 2:
        raise OddDimension(f"symplectic residual requires even dimension, got n={qp.n}")
    L = jacobian(qp, x)
    S = skew_matrix(qp.n // 2)
    return float(np.max(np.abs(L.T @ S @ L - S)))


def symplectic_product_block(qp: QPMap, x) -> np.ndarray:
    """The s x s block of pairwise Jacobian cross-products that must equal
    the identity for the map to be symplectic at x.

    Entry (i, j) is sum_k (L[s+k][s+i]*L[k][j] - L[k][s+i]*L[s+k][j]); it is
    the lower-left block of K^T S K and serves as an independent oracle for
    the exact classifiers.
    """
    if qp.n % 2:
        raise OddDimension(f"product block requires even dimension, got n={qp.n}")
    s = qp.n // 2
    L = jacobian(qp, x)
    return L[s:, s:].T @ L[:s, :s] - L[:s, s:].T @ L[s:, :s]


def rank_bounds(qp: QPMap) -> RankReport:
    """Exact ranks of B, A, M=(lam|A) and the rank <= s necessary condition."""
    rank_b = rank(qp.B)
    rank_a = rank(qp.A)
    rank_m = rank(augment_column(qp.lam, qp.A))
    if qp.n % 2 == 0:
        s = qp.n // 2
        bound = rank_b <= s and rank_m <= s
    else:
        bound = None
    return RankReport(rank_B=rank_b, rank_A=rank_a, rank_M=rank_m, bound_satisfied=bound)


def conserved_products(qp: QPMap) -> list[ConservedProduct]:
    """The s conserved pair products x_i * x_{s+i} of a symplectic map."""
    report = check_conditions(qp)
    if not report.is_symplectic:
        raise NotSymplectic("conserved pair products exist only for symplectic maps",
                            report=report)
    s = report.s
    return [ConservedProduct(i=i + 1, s=s) for i in range(s)]
