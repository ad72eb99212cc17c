import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsp.cc_sp import CcSpInstance, solve_cc_sp
from ccsp.core import (
    RULES,
    ApprovalProfile,
    Axis,
    MisrepProfile,
    NotSinglePeakedError,
    ProfileError,
    ThieleWeights,
    rule_sequence,
    thiele_utility,
    verify_sp_axis,
)
from ccsp.gen import gen_nearly_sp
from ccsp.nearly_sp import (
    DeletionInstance,
    preelected_subsets,
    reduce_cc_with_preelected,
    shift_weights,
    solve_cc_with_deletion_set,
    solve_thiele_with_deletion_set,
)
from ccsp.oracle import brute_force_cc, brute_force_thiele
from ccsp.thiele_sp import solve_generalized_thiele_sp

from strategies import sp_params


@pytest.fixture
def a3():
    return ApprovalProfile(4, [{1, 4}, {1, 2}, {2, 3}])


def expected_subsets(d, k):
    return sum(math.comb(d, i) for i in range(min(k, d) + 1))


# -- reduction -------------------------------------------------------------

def test_reduce_p3(p1, p3):
    sub, keep = reduce_cc_with_preelected(p3, {4}, {4})
    assert sub.rows() == [[0, 1, 1], [1, 1, 0]] and keep == (1, 2, 3)
    assert reduce_cc_with_preelected(p3, {4}, ())[0] == p1


def test_reduce_zero_preelected_flattens():
    prof = MisrepProfile([[3, 1, 0], [2, 2, 0]])
    sub, _ = reduce_cc_with_preelected(prof, {3}, {3})
    assert sub.rows() == [[0, 0], [0, 0]]


def test_reduce_rejects_outside_deletion_set(p3):
    with pytest.raises(ProfileError):
        reduce_cc_with_preelected(p3, {4}, {1})


@given(sp_params(max_m=10, with_deletion=True))
def test_reduction_stays_single_peaked(params):
    profile, axis, deleted = gen_nearly_sp(params)
    for pre in preelected_subsets(deleted, len(deleted)):
        sub, keep = reduce_cc_with_preelected(profile, deleted, pre)
        assert verify_sp_axis(sub, axis.relabel(keep))


# -- instance validation ---------------------------------------------------

def test_instance_validation(p3):
    with pytest.raises(ProfileError):
        DeletionInstance(p3, (4,), Axis([1, 2]), 1)
    with pytest.raises(ProfileError):
        DeletionInstance(p3, (5,), Axis([1, 2, 3]), 1)
    with pytest.raises(ProfileError):
        DeletionInstance(p3, (4,), Axis([1, 2, 3]), 5)
    with pytest.raises(ProfileError):
        DeletionInstance(p3, (1, 2, 3, 4), Axis([]), 1)
    with pytest.raises(NotSinglePeakedError):
        DeletionInstance(MisrepProfile([[0, 2, 1, 0]]), (4,), Axis([1, 2, 3]), 1)


def test_approval_instance_needs_weights(a3):
    with pytest.raises(ProfileError):
        DeletionInstance(a3, (4,), Axis([1, 2, 3]), 1)


# -- CC --------------------------------------------------------------------

@pytest.mark.parametrize("k,objective", [(1, 2), (2, 0)])
def test_cc_p3(p3, k, objective):
    trace = []
    res = solve_cc_with_deletion_set(DeletionInstance(p3, (4,), Axis([1, 2, 3]), k), trace=trace)
    assert res.objective == objective == brute_force_cc(p3, k).objective
    assert len(trace) == expected_subsets(1, k)
    if k == 2:
        assert res.committee == (1, 3)


def test_cc_empty_deletion_set_is_plain_solver(p1, p1_axis):
    trace = []
    res = solve_cc_with_deletion_set(DeletionInstance(p1, (), p1_axis, 2), trace=trace)
    assert res == solve_cc_sp(CcSpInstance(p1, p1_axis, 2))
    assert [r.preelected for r in trace] == [()]


def test_cc_counts_infeasible_subsets():
    # m - d = 1 kept candidate, k = 3: only |W_D| >= 2 is solvable
    prof = MisrepProfile([[0, 1, 2], [2, 0, 1]])
    trace = []
    res = solve_cc_with_deletion_set(DeletionInstance(prof, (1, 2), Axis([3]), 3), trace=trace)
    assert len(trace) == expected_subsets(2, 3)
    assert [r.committee is None for r in trace] == [True, True, True, False]
    assert res.committee == (1, 2, 3)


@given(sp_params(max_m=10, with_deletion=True), st.data())
def test_cc_matches_brute_force(params, data):
    profile, axis, deleted = gen_nearly_sp(params)
    k = data.draw(st.integers(1, min(4, profile.m)))
    trace = []
    res = solve_cc_with_deletion_set(DeletionInstance(profile, deleted, axis, k), trace=trace)
    assert res.objective == brute_force_cc(profile, k).objective
    assert len(trace) == expected_subsets(len(deleted), k)


# -- Thiele ----------------------------------------------------------------

def test_shift_weights():
    pav = ThieleWeights.uniform("pav", 2, 4)
    shifted = shift_weights(pav, [1, 0])
    assert shifted.sequences[0] == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
    assert shifted.sequences[1] == pav.sequences[1]
    assert shift_weights(ThieleWeights.uniform("cc", 1, 3), [1]).sequences == ((0, 0),)
    with pytest.raises(ProfileError):
        shift_weights(pav, [3, 0], needed=2)


@pytest.mark.parametrize("k,committee,objective", [(2, (1, 2), Fraction(7, 2)), (1, (1,), 2)])
def test_thiele_example(a3, k, committee, objective):
    inst = DeletionInstance(a3, (4,), Axis([1, 2, 3]), k, ThieleWeights.uniform("pav", 3, 4))
    res = solve_thiele_with_deletion_set(inst)
    assert (res.committee, res.objective) == (committee, objective)
    assert res.objective == brute_force_thiele(a3, inst.weights, k).objective


def test_thiele_empty_deletion_set(p2, pav3):
    inst = DeletionInstance(p2, (), Axis([1, 2, 3]), 2, pav3)
    assert solve_thiele_with_deletion_set(inst) == solve_generalized_thiele_sp(p2, pav3, Axis([1, 2, 3]), 2)


@given(sp_params(max_n=6, max_m=9, with_deletion=True), st.data())
def test_thiele_matches_brute_force(params, data):
    approvals, axis, deleted = gen_nearly_sp(params, kind="approval")
    k = data.draw(st.integers(1, min(4, approvals.m)))
    rules = data.draw(st.lists(st.sampled_from(RULES), min_size=approvals.n, max_size=approvals.n))
    weights = ThieleWeights(rule_sequence(r, k) for r in rules)
    trace = []
    res = solve_thiele_with_deletion_set(DeletionInstance(approvals, deleted, axis, k, weights), trace)
    assert res.objective == brute_force_thiele(approvals, weights, k).objective
    assert len(trace) == expected_subsets(len(deleted), k)
    for rec in trace:
        if rec.committee is not None:
            assert rec.base + rec.sub_objective == thiele_utility(approvals, weights, rec.committee)
