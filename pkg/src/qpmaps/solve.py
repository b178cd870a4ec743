"""Closed-form solutions of symplectic QP maps.

Every symplectic QP map evolves each variable pair geometrically:

    x_i(t) = x_i(0) * k_i**t,      x_{s+i}(t) = x_{s+i}(0) * k_i**(-t)

with positive multipliers k_i determined by the initial state. The
multipliers are computed through the solver change of variables (see
:func:`qpmaps.transform.solver_qmt`), under which the first s coordinates
become the conserved pair products and the rest evolve by the constant
factor k_i per step. All arithmetic is carried in log space: k_i**t
overflows double precision quickly, log_k_i * t does not.
"""

from dataclasses import dataclass

import numpy as np

from .core import QPMap, as_state, iterate
from .errors import NotSymplectic, NumericOverflow
from .linalg import mat_mul, to_float_matrix
from .symplectic import check_conditions
from .transform import pull_state, solver_qmt

#: |log k_i| at or below this is classified as a constant pair.
CONSTANT_TOLERANCE = 1e-12
#: Split pairs with |log k_i| below this get a proximity warning.
NEAR_CONSTANT_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class ClosedFormSolution:
    """A solved initial-value problem: x0 plus per-pair log multipliers."""

    s: int
    x0: np.ndarray
    log_k: np.ndarray
    invariants_I: np.ndarray


@dataclass(frozen=True)
class PairAsymptotics:
    """Long-run behaviour of pair i: 'constant' (k_i = 1) or 'split'
    (one variable tends to zero while its partner diverges)."""

    i: int
    kind: str
    note: str | None = None


def solve_closed_form(qp: QPMap, x0) -> ClosedFormSolution:
    """Construct the closed-form solution of a symplectic map from x0.

    The multipliers come from the transformed system: with C the solver
    transformation and y(0) = pull_state(C, x0),

        log_k_i = lam_i + sum_j A[i][j] * prod_{q<=s} y_q(0)**B'[j][q]

    where B' = B.C. (Equivalently log_k_i = phi_i(x0); the equality of the
    two routes is asserted by the test suite.)

    Raises NotSymplectic (carrying the classification report) or
    NonPositiveState.
    """
    report = check_conditions(qp)
    if not report.is_symplectic:
        raise NotSymplectic("map is not symplectic: no closed form is available",
                            report=report)
    s = report.s
    x = as_state(x0, qp.n)
    t = solver_qmt(s)
    y0 = pull_state(t, x)
    b_prime = to_float_matrix(mat_mul(qp.B, t.C))[:, :s]
    q0 = np.exp(b_prime @ np.log(y0[:s]))
    log_k = qp.lam_f[:s] + qp.A_f[:s, :] @ q0
    return ClosedFormSolution(s=s, x0=x, log_k=log_k, invariants_I=x[:s] * x[s:])


def eval_solution(sol: ClosedFormSolution, t: int) -> np.ndarray:
    """State at any integer time t (negative allowed), in log space.

    Raises NumericOverflow when |t * log_k_i| leaves the double exponent
    range in either direction.
    """
    ln0 = np.log(sol.x0)
    drift = t * sol.log_k
    with np.errstate(over="ignore", under="ignore"):
        out = np.exp(np.concatenate([ln0[: sol.s] + drift, ln0[sol.s:] - drift]))
    if not np.all(np.isfinite(out)) or np.any(out <= 0.0):
        raise NumericOverflow(
            f"closed-form state at t={t} leaves the representable positive range",
            time_index=t,
        )
    return out


def classify_asymptotics(sol: ClosedFormSolution) -> list[PairAsymptotics]:
    """Per-pair behaviour: constant when log_k_i = 0 (within 1e-12), else split."""
    out = []
    for i, lk in enumerate(sol.log_k, start=1):
        if abs(lk) <= CONSTANT_TOLERANCE:
            out.append(PairAsymptotics(i=i, kind="constant"))
        else:
            note = None
            if abs(lk) < NEAR_CONSTANT_THRESHOLD:
                note = (f"|log k_{i}| = {abs(lk):.3e} is close to zero;"
                        " the split verdict is sensitive to roundoff")
            out.append(PairAsymptotics(i=i, kind="split", note=note))
    return out


def verify_solution(qp: QPMap, sol: ClosedFormSolution, steps: int) -> float:
    """Max log-space deviation between iteration and the closed form over
    t = 0..steps. Callers choose steps small enough to avoid overflow;
    NumericOverflow propagates."""
    traj = iterate(qp, sol.x0, steps)
    worst = 0.0
    for k, state in enumerate(traj.states):
        predicted = eval_solution(sol, k)
        worst = max(worst, float(np.max(np.abs(np.log(state) - np.log(predicted)))))
    return worst
