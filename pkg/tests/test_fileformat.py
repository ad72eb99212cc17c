from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsp.core import RULES, ApprovalProfile, Axis, MisrepProfile, ThieleWeights
from ccsp.fileformat import (
    ProfileFile,
    ProfileSyntaxError,
    ProfileValidationError,
    parse_profile_file,
    render_profile_file,
)
from ccsp.gen import gen_nearly_sp

from strategies import sp_params

P1_TEXT = """\
ccprofile v1 misrep
# two voters, three candidates
n 2 m 3 k 2
axis 1 2 3
row 0 1 2
row 2 1 0   # v2
"""


def test_parse_p1(p1):
    pf = parse_profile_file(P1_TEXT)
    assert pf.kind == "misrep" and pf.profile == p1 and pf.k == 2
    assert pf.axis == Axis([1, 2, 3]) and pf.deleted == ()


def test_render_p1_roundtrip(p1):
    pf = ProfileFile("misrep", p1, Axis([1, 2, 3]))
    assert parse_profile_file(render_profile_file(pf)) == pf


def test_approval_with_custom_weights():
    text = """ccprofile v1 approval
n 2 m 3 k 2 bound 3/2
approve 1 2
approve
weights custom
wlist 1 1/2 1/3
wlist 1 1 0
"""
    pf = parse_profile_file(text)
    assert pf.profile == ApprovalProfile(3, [{1, 2}, set()])
    assert pf.weights.sequences[0] == (1, Fraction(1, 2), Fraction(1, 3))
    assert pf.bound == Fraction(3, 2)
    assert parse_profile_file(render_profile_file(pf)) == pf


def test_missing_axis_means_identity_over_kept():
    pf = parse_profile_file("ccprofile v1 misrep\nn 1 m 3\ndeleted 2\nrow 0 9 1\n")
    assert pf.axis is None and pf.effective_axis() == Axis([1, 3])


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("ccprofile v2 misrep\nn 1 m 1\nrow 0\n", 1),
        ("ccprofile v1 misrep\nn 2 m 0\n", 2),
        ("ccprofile v1 misrep\nn 1 m 3\nrow 0 1\n", 3),
        ("ccprofile v1 misrep\nn 2 m 2\nrow 0 1\n", 3),
        ("ccprofile v1 misrep\nn 1 m 2\nrow 0 x\n", 3),
        ("ccprofile v1 misrep\nn 1 m 2 z 4\nrow 0 1\n", 2),
        ("ccprofile v1 misrep\nn 1 m 2\nrow 0 1\naxis 1 2\n", 4),
        ("ccprofile v1 approval\nn 1 m 2\napprove 3\n", 3),
        ("ccprofile v1 approval\nn 1 m 2\napprove 1\nweights borda\n", 4),
        ("ccprofile v1 approval\nn 1 m 2\napprove 1\nweights custom\nwlist 0.5\n", 5),
        ("ccprofile v1 approval\nn 1 m 2\nrow 0 1\n", 3),
    ],
    ids=[
        "empty", "version", "m0", "short-row", "too-few-voters", "bad-number", "bad-key",
        "axis-after-voters", "unknown-candidate", "unknown-rule", "float-weight", "row-in-approval",
    ],
)
def test_syntax_errors(text, line):
    with pytest.raises(ProfileSyntaxError) as exc:
        parse_profile_file(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_syntax_error_column():
    with pytest.raises(ProfileSyntaxError) as exc:
        parse_profile_file("ccprofile v1 misrep\nn 1 m 2\nrow 0 abc\n")
    assert exc.value.column == 7


@pytest.mark.parametrize(
    "text",
    [
        "ccprofile v1 misrep\nn 1 m 3\nrow 0 2 1\n",
        "ccprofile v1 misrep\nn 1 m 2\nrow 0 -1\n",
        "ccprofile v1 misrep\nn 1 m 2\nrow 0 1.5\n",
        "ccprofile v1 misrep\nn 1 m 3\naxis 1 2\nrow 0 1 2\n",
        "ccprofile v1 misrep\nn 1 m 2\ndeleted 1 2\nrow 0 1\n",
        "ccprofile v1 misrep\nn 1 m 2 k 3\nrow 0 1\n",
        "ccprofile v1 approval\nn 1 m 3\napprove 1 3\n",
        "ccprofile v1 approval\nn 1 m 2\napprove 1\nweights custom\nwlist 1/2 1\n",
    ],
    ids=["not-sp", "negative", "mixed-modes", "axis-incomplete", "delete-all", "k-too-big", "not-ci", "increasing-weights"],
)
def test_validation_errors(text):
    with pytest.raises(ProfileValidationError):
        parse_profile_file(text)


def test_validation_can_be_deferred():
    pf = parse_profile_file("ccprofile v1 misrep\nn 1 m 3\nrow 0 2 1\n", validate=False)
    assert not pf.check_structure()


def test_float_rows_roundtrip():
    pf = ProfileFile("misrep", MisrepProfile([[0.1, 1e-30, 2.5]]), None, (), None, 0.25)
    assert parse_profile_file(render_profile_file(pf)) == pf


@given(sp_params(max_n=8, max_m=10, with_deletion=True), st.sampled_from(["misrep", "approval"]), st.data())
def test_roundtrip_generated(params, kind, data):
    profile, axis, deleted = gen_nearly_sp(params, kind=kind)
    k = data.draw(st.none() | st.integers(1, profile.m))
    weights = rule = None
    if kind == "approval":
        rule = data.draw(st.sampled_from(RULES + ("custom", None)))
        if rule == "custom":
            weights = ThieleWeights([[Fraction(1, i + v + 1) for i in range(profile.m)] for v in range(profile.n)])
        elif rule is not None:
            weights = ThieleWeights.uniform(rule, profile.n, profile.m)
    pf = ProfileFile(kind, profile, axis, deleted, k, None, weights, rule)
    assert parse_profile_file(render_profile_file(pf)) == pf
