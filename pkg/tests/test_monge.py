import math

import numpy as np
import pytest
from hypothesis import given

from ccsp.core import Axis, MisrepProfile, NotSinglePeakedError
from ccsp.gen import GenParams, gen_sp_misrep
from ccsp.linkpath import check_concave_monge
from ccsp.monge import build_edge_weight_oracle, edge_weight
from ccsp.oracle import all_direct_edge_weights, direct_edge_weight

from strategies import sp_params


def qualifying(ext_row, lv, j):
    """The set of sources whose voter prefers c_j, by definition."""
    x = ext_row
    return {i for i in range(j) if x[i] > x[j] or (x[i] == x[j] and i <= lv)}


@pytest.fixture
def oracle(p1, p1_axis):
    return build_edge_weight_oracle(p1, p1_axis)


def test_p1_structure(oracle):
    assert oracle.node_count == 5
    assert oracle.U == 2
    assert oracle.singletons.tolist() == [4, 2, 2, 2, 4]
    assert oracle.ext.tolist() == [[2, 0, 1, 2, 2], [2, 2, 1, 0, 2]]
    assert oracle.lv.tolist() == [1, 3]


def test_p1_thresholds(oracle):
    assert oracle.p[0].tolist() == [-1, 0, 0, 0, 0]
    # v2's set at j=4 is {0, 1}: c_0 and c_1 tie with the sentinel at 2 and
    # both sit left of l_v = 3, so the prefix ends at 1
    assert oracle.p[1].tolist() == [-1, 0, 1, 2, 1]
    assert qualifying(oracle.ext[1], 3, 4) == {0, 1}
    assert oracle.q.tolist() == [[5, 2, 3, 4, 5], [5, 5, 4, 4, 5]]


@pytest.mark.parametrize("i,j,w", [(0, 1, -2), (1, 3, -2), (3, 4, 0)])
def test_p1_edge_weights(oracle, p1, p1_axis, i, j, w):
    assert edge_weight(oracle, i, j) == w
    assert direct_edge_weight(p1, p1_axis, i, j) == w


@pytest.mark.parametrize("i,j", [(1, 1), (2, 1), (-1, 2), (0, 5)])
def test_edge_weight_range(oracle, i, j):
    with pytest.raises(ValueError):
        oracle.edge_weight(i, j)


def test_rejects_non_sp():
    with pytest.raises(NotSinglePeakedError):
        build_edge_weight_oracle(MisrepProfile([[0, 2, 1]]), Axis.identity(3))


def test_p1_concave_monge(oracle):
    assert check_concave_monge(oracle, oracle.node_count)


def test_concave_monge_checker_on_closed_forms():
    assert check_concave_monge(lambda i, j: j - i, 6)
    bad = check_concave_monge(lambda i, j: -((j - i) ** 2), 6)
    assert not bad and bad.witness == (0, 2)
    # (j - i)^2 satisfies the inequality: 1 + 1 <= 4 + 0
    assert check_concave_monge(lambda i, j: (j - i) ** 2, 6)


def test_all_zero_profile():
    o = build_edge_weight_oracle(MisrepProfile([[0, 0, 0]]), Axis.identity(3))
    assert o.U == 0
    assert all(o.edge_weight(i, j) == 0 for i in range(5) for j in range(i + 1, 5))


def test_empty_electorate():
    o = build_edge_weight_oracle(MisrepProfile([], m=3), Axis([2, 3, 1]))
    assert o.edge_weight(0, 4) == 0


def test_float_profile_matches_direct():
    prof = MisrepProfile([[0.5, 0.25, 0.75, 1.5], [3.0, 2.0, 2.0, 0.125]])
    ax = Axis.identity(4)
    o = build_edge_weight_oracle(prof, ax)
    W = all_direct_edge_weights(prof, ax)
    for i in range(6):
        for j in range(i + 1, 6):
            assert math.isclose(o.edge_weight(i, j), W[i, j], abs_tol=1e-12)


@given(sp_params(max_n=10, max_m=14))
def test_oracle_equals_direct_sums(params):
    profile, axis = gen_sp_misrep(params)
    o = build_edge_weight_oracle(profile, axis)
    W = all_direct_edge_weights(profile, axis)
    N = o.node_count
    I, J = np.triu_indices(N, 1)
    assert np.array_equal(o.edge_weights(I, J), W[I, J])


@given(sp_params(max_n=10, max_m=14))
def test_prefix_property(params):
    profile, axis = gen_sp_misrep(params)
    o = build_edge_weight_oracle(profile, axis)
    for v in range(o.n):
        for j in range(o.node_count):
            assert qualifying(o.ext[v], int(o.lv[v]), j) == set(range(int(o.p[v, j]) + 1))


@given(sp_params(max_n=10, max_m=14))
def test_suffix_thresholds(params):
    """q[v, i] is the first target past i whose voter keeps c_i."""
    profile, axis = gen_sp_misrep(params)
    o = build_edge_weight_oracle(profile, axis)
    N = o.node_count
    for v in range(o.n):
        for i in range(N):
            keeps = [j for j in range(i + 1, N) if i not in qualifying(o.ext[v], int(o.lv[v]), j)]
            assert keeps == list(range(int(o.q[v, i]), N))


@given(sp_params(max_n=10, max_m=14))
def test_concave_monge_on_generated(params):
    profile, axis = gen_sp_misrep(params)
    o = build_edge_weight_oracle(profile, axis)
    W = all_direct_edge_weights(profile, axis)
    if o.node_count >= 4:
        assert check_concave_monge(lambda i, j: W[i, j].item(), o.node_count)


def test_query_comparisons_are_logarithmic():
    profile, axis = gen_sp_misrep(GenParams(60, 60, seed=5, tie_probability=0.0, value_cap=10**6))
    o = build_edge_weight_oracle(profile, axis)
    budget = 2 * math.ceil(math.log2(o.node_count)) + 16
    worst = 0
    for i in range(o.node_count):
        for j in range(i + 1, o.node_count):
            w, count = o.edge_weight_counted(i, j)
            assert w == o.edge_weight(i, j)
            worst = max(worst, count)
    assert worst <= budget
    assert o.threshold_count() <= o.n + 1
