import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qpmaps import (
    DimensionMismatch,
    NonPositiveState,
    NumericOverflow,
    ZeroColumnOfA,
    ZeroRowOfB,
    iterate,
    jacobian,
    new_qp_map,
    phi,
    quasimonomials,
    step,
)
from qpmaps.sampling import random_state, random_valid_map

from helpers import dim2_map, fd_jacobian, quasimonomial_oracle, relative_gap, trivial_lv_map

E3 = math.exp(3.0)


class TestConstruction:
    def test_dim2_fixture_is_valid(self):
        qp = dim2_map()
        assert (qp.n, qp.m) == (2, 1)

    def test_nonzero_column_with_a_zero_entry_is_accepted(self):
        qp = new_qp_map((0, 0), ((0,), (1,)), ((1, 0),))
        assert qp.m == 1

    def test_zero_column_of_a_rejected(self):
        with pytest.raises(ZeroColumnOfA) as exc:
            new_qp_map((0, 0), ((0,), (0,)), ((1, 1),))
        assert exc.value.index == 0

    def test_zero_row_of_b_rejected(self):
        with pytest.raises(ZeroRowOfB) as exc:
            new_qp_map((0, 0), ((1,), (1,)), ((0, 0),))
        assert exc.value.index == 0

    def test_dimension_mismatches(self):
        with pytest.raises(DimensionMismatch):
            new_qp_map((1,), ((2,), (-2,)), ((1, 1),))  # lambda too short
        with pytest.raises(DimensionMismatch):
            new_qp_map((1, -1), ((2,), (-2,)), ((1, 1, 1),))  # B not m x n
        with pytest.raises(DimensionMismatch):
            new_qp_map((1, -1), ((2,), (-2,)), ((1,),))

    def test_floats_rejected_in_structural_data(self):
        with pytest.raises(TypeError):
            new_qp_map((1.0, -1.0), ((2,), (-2,)), ((1, 1),))


class TestQuasimonomials:
    def test_integer_exponents(self):
        qp = new_qp_map((0, 0), ((1,), (1,)), ((1, 1),))
        assert quasimonomials(qp, [2, 3]) == pytest.approx([6.0])

    def test_rational_exponents(self):
        qp = new_qp_map((0, 0), ((1,), (1,)), (("1/2", "1/2"),))
        assert quasimonomials(qp, [4, 9]) == pytest.approx([6.0])

    def test_two_rows_against_direct_product(self):
        b = ((1, 1), (2, 0))
        qp = new_qp_map((0, 0), ((1, 1), (1, 1)), b)
        got = quasimonomials(qp, [2, 0.5])
        assert got == pytest.approx([1.0, 4.0])
        assert got == pytest.approx(quasimonomial_oracle(b, [2, 0.5]))

    def test_nonpositive_state_rejected(self):
        qp = dim2_map()
        with pytest.raises(NonPositiveState):
            quasimonomials(qp, [1, 0])
        with pytest.raises(NonPositiveState):
            quasimonomials(qp, [-1, 1])
        with pytest.raises(NonPositiveState):
            quasimonomials(qp, [1, float("nan")])


class TestPhiAndStep:
    def test_phi_at_unit_state(self):
        assert phi(dim2_map(), [1, 1]) == pytest.approx([3.0, -3.0])

    def test_phi_on_invariant_level_set(self):
        # x1*x2 = 1, so the single quasimonomial equals 1
        assert phi(dim2_map(), [2, 0.5]) == pytest.approx([3.0, -3.0])

    def test_phi_is_lambda_plus_a_q(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            qp = random_valid_map(rng, 3, 2)
            x = random_state(rng, 3)
            expected = qp.lam_f + qp.A_f @ quasimonomials(qp, x)
            assert phi(qp, x) == pytest.approx(expected, rel=1e-12)

    def test_step_values(self):
        qp = dim2_map()
        assert step(qp, [1, 1]) == pytest.approx([E3, 1 / E3])
        assert step(qp, [2, 0.5]) == pytest.approx([2 * E3, 0.5 / E3])

    def test_trivial_map_is_identity(self):
        qp = trivial_lv_map(3)
        x = [0.3, 1.7, 2.2]
        assert step(qp, x) == pytest.approx(x, abs=0.0)

    def test_step_overflow_up_and_down(self):
        blow = new_qp_map((800, -800), ((1,), (-1,)), ((1, 1),))
        with pytest.raises(NumericOverflow):
            step(blow, [1, 1])
        sink = new_qp_map((-800, 800), ((1,), (-1,)), ((1, 1),))
        with pytest.raises(NumericOverflow):
            step(sink, [1, 1])


class TestIterate:
    def test_zero_steps(self):
        traj = iterate(dim2_map(), [1, 1], 0)
        assert len(traj) == 1
        assert list(traj.times) == [0]

    def test_trivial_map_constant_trajectory(self):
        traj = iterate(trivial_lv_map(2), [1.5, 0.25], 5)
        assert len(traj) == 6
        for state in traj:
            assert state == pytest.approx([1.5, 0.25], abs=0.0)

    def test_dim2_geometric_growth(self):
        traj = iterate(dim2_map(), [1, 1], 2)
        expected = [(1, 1), (E3, 1 / E3), (math.exp(6), math.exp(-6))]
        for state, want in zip(traj, expected):
            assert state == pytest.approx(want, rel=1e-12)

    def test_overflow_carries_index_and_partial(self):
        qp = new_qp_map((50, -50), ((2,), (-2,)), ((1, 1),))
        with pytest.raises(NumericOverflow) as exc:
            iterate(qp, [1, 1], 100)
        assert exc.value.time_index is not None
        partial = exc.value.partial
        assert partial is not None
        assert len(partial) == exc.value.time_index
        # the partial prefix must agree with a shorter clean run
        clean = iterate(qp, [1, 1], len(partial) - 1)
        for a, b in zip(partial, clean):
            assert a == pytest.approx(b, abs=0.0)

    def test_negative_steps_rejected(self):
        with pytest.raises(ValueError):
            iterate(dim2_map(), [1, 1], -1)

    def test_start_time_offsets_the_index(self):
        traj = iterate(dim2_map(), [1, 1], 2, t0=-1)
        assert list(traj.times) == [-1, 0, 1]
        assert traj[0] == pytest.approx([1.0, 1.0])


class TestJacobian:
    def test_trivial_map_identity(self):
        got = jacobian(trivial_lv_map(3), [0.7, 1.1, 3.0])
        assert got == pytest.approx(np.eye(3), abs=0.0)

    def test_dim2_hand_value(self):
        got = jacobian(dim2_map(), [1, 1])
        want = np.array([[3 * E3, 2 * E3], [-2 / E3, -1 / E3]])
        assert got == pytest.approx(want, rel=1e-14)

    def test_matches_finite_differences_on_random_maps(self):
        rng = np.random.default_rng(17)
        checked = 0
        while checked < 60:
            n = int(rng.integers(1, 7))
            m = int(rng.integers(1, 7))
            qp = random_valid_map(rng, n, m)
            x = random_state(rng, n)
            if np.max(np.abs(phi(qp, x))) > 3.0:
                continue  # keep the finite-difference noise floor low
            assert relative_gap(jacobian(qp, x), fd_jacobian(qp, x)) <= 1e-5
            checked += 1


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_positivity_preservation(data):
    seed = data.draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 5))
    qp = random_valid_map(rng, n, int(rng.integers(1, 5)))
    x = random_state(rng, n)
    try:
        out = step(qp, x)
    except NumericOverflow:
        return  # overflow is reported loudly, never silently
    assert np.all(out > 0)
    assert np.all(np.isfinite(out))


def test_determinism_bitwise():
    rng = np.random.default_rng(23)
    while True:
        qp = random_valid_map(rng, 4, 3)
        x = random_state(rng, 4)
        try:
            iterate(qp, x, 3)
        except NumericOverflow:
            continue
        break
    assert np.array_equal(step(qp, x), step(qp, x))
    assert np.array_equal(jacobian(qp, x), jacobian(qp, x))
    assert np.array_equal(iterate(qp, x, 3).as_array(), iterate(qp, x, 3).as_array())
