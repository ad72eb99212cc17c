"""Generalized Thiele on candidate-interval approvals through an exact LP.

Variables are ``y_c`` (candidate ``c`` is elected) and ``x_{v,l}`` (voter ``v``
has at least ``l`` approved members), all boxed to ``[0, 1]``:

    max  sum_v sum_l w^v_l x_{v,l}
    s.t. sum_c y_c = k
         sum_l x_{v,l} - sum_{c in A_v} y_c <= 0     for every voter v

With interval ballots the constraint matrix is totally unimodular, so the
simplex vertex is integral.  Non-increasing weights make the ``x`` layers fill
in order, so the LP value is the Thiele utility of ``{c : y_c = 1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ApprovalProfile,
    Axis,
    CommitteeResult,
    InvariantError,
    NotSinglePeakedError,
    ProfileError,
    ThieleWeights,
    thiele_utility,
    verify_candidate_intervals,
)
from .simplex import maximize


class NonIntegralVertexError(InvariantError):
    """The LP vertex has a fractional coordinate; never rounded away."""


@dataclass(frozen=True)
class PavIpInstance:
    n: int
    m: int
    k: int
    objective: tuple[Fraction, ...]
    matrix: tuple[tuple[int, ...], ...]
    senses: tuple[str, ...]
    rhs: tuple[int, ...]

    @property
    def variable_count(self) -> int:
        return len(self.objective)

    @property
    def constraint_count(self) -> int:
        return len(self.matrix)

    def y_index(self, c: int) -> int:
        return c - 1

    def x_index(self, v: int, level: int) -> int:
        """Column of ``x_{v,level}``; ``v`` is 0-based, ``level`` is 1-based."""
        return self.m + v * self.k + level - 1


@dataclass(frozen=True)
class LpResult:
    y: tuple[Fraction, ...]
    x: tuple[tuple[Fraction, ...], ...]
    objective: Fraction
    pivots: int

    def is_integral(self) -> bool:
        return all(val in (0, 1) for val in self.y) and all(
            val in (0, 1) for row in self.x for val in row
        )


def build_pav_ip(approvals: ApprovalProfile, weights: ThieleWeights, k: int) -> PavIpInstance:
    n, m = approvals.n, approvals.m
    if not 1 <= k <= m:
        raise ProfileError(f"committee size k={k} outside 1..{m}")
    if weights.n != n:
        raise ProfileError("one weight sequence per voter is required")
    if weights.min_length() < k:
        raise ProfileError("weight sequences shorter than k")
    width = m + n * k
    objective = [Fraction(0)] * m
    for seq in weights.sequences:
        objective.extend(seq[:k])
    matrix = [tuple([1] * m + [0] * (n * k))]
    for v, ballot in enumerate(approvals.approvals):
        row = [0] * width
        for c in ballot:
            row[c - 1] = -1
        for level in range(k):
            row[m + v * k + level] = 1
        matrix.append(tuple(row))
    return PavIpInstance(
        n, m, k, tuple(objective), tuple(matrix), ("==",) + ("<=",) * n, (k,) + (0,) * n
    )


def solve_lp_exact(lp: PavIpInstance) -> LpResult:
    """Optimal vertex of the relaxation, in exact rationals.

    Coupling rows get slack columns.  The start is ``y_1..y_{k-1}`` at their
    upper bound, ``y_k`` basic in the cardinality row and each slack basic in
    its own row: feasible because every slack equals ``|A_v & {c_1..c_k}|``.
    """
    n, m, k = lp.n, lp.m, lp.k
    width = lp.variable_count
    A = [list(row) + [0] * n for row in lp.matrix]
    for v in range(n):
        A[1 + v][width + v] = 1
    cost = list(lp.objective) + [0] * n
    upper = [1] * width + [None] * n
    basis = [k - 1] + [width + v for v in range(n)]
    sol = maximize(cost, A, lp.rhs, upper, basis, at_upper=range(k - 1))
    values = sol.values
    y = values[:m]
    x = tuple(values[m + v * k : m + (v + 1) * k] for v in range(n))
    return LpResult(y, x, sol.objective, sol.pivots)


def solve_generalized_thiele_sp(
    approvals: ApprovalProfile, weights: ThieleWeights, axis: Axis, k: int
) -> CommitteeResult:
    """Optimal size-``k`` committee for per-voter Thiele weights on interval ballots."""
    res = verify_candidate_intervals(approvals, axis)
    if not res:
        raise NotSinglePeakedError(
            f"ballot of voter {res.witness} is not an interval of the axis", res.witness
        )
    lp = solve_lp_exact(build_pav_ip(approvals, weights, k))
    return committee_from_vertex(approvals, weights, lp, k)


def committee_from_vertex(
    approvals: ApprovalProfile, weights: ThieleWeights, lp: LpResult, k: int
) -> CommitteeResult:
    """Read the committee off an integral vertex and check its value."""
    if not lp.is_integral():
        bad = [c for c, val in enumerate(lp.y, start=1) if val not in (0, 1)]
        raise NonIntegralVertexError(f"fractional LP vertex (y fractional at {bad})")
    committee = [c for c, val in enumerate(lp.y, start=1) if val == 1]
    if len(committee) != k:
        raise InvariantError(f"LP elected {len(committee)} candidates, expected {k}")
    utility = thiele_utility(approvals, weights, committee)
    if utility != lp.objective:
        raise InvariantError(f"LP value {lp.objective} differs from committee utility {utility}")
    return CommitteeResult(committee, utility)
