"""Exhaustive reference solvers; ground truth for every differential test."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import combinations

import numpy as np

from .core import ApprovalProfile, Axis, CommitteeResult, MisrepProfile, ProfileError, ThieleWeights
from .monge import _extended

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


def _budget(budget):
    if budget is not None:
        return budget
    env = os.environ.get("CCSP_BRUTE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_k(m, k, budget):
    if not 1 <= k <= m:
        raise ProfileError(f"committee size k={k} outside 1..{m}")
    count = math.comb(m, k)
    if count > _budget(budget):
        raise BudgetExceeded(f"C({m},{k}) = {count} committees exceeds budget {_budget(budget)}")


def brute_force_cc(profile: MisrepProfile, k: int, budget: int | None = None) -> CommitteeResult:
    """Minimum total misrepresentation over all size-k committees.

    Committees are enumerated in lexicographic order and only a strictly
    better one replaces the incumbent, so ties resolve to the smallest.
    """
    _check_k(profile.m, k, budget)
    vals = profile.values
    best = best_val = None
    for combo in combinations(range(profile.m), k):
        val = vals[:, combo].min(axis=1).sum().item() if profile.n else 0
        if best_val is None or val < best_val:
            best, best_val = combo, val
    return CommitteeResult((c + 1 for c in best), best_val)


def brute_force_thiele(
    approvals: ApprovalProfile, weights: ThieleWeights, k: int, budget: int | None = None
) -> CommitteeResult:
    """Maximum total utility over all size-k committees (exact rationals)."""
    _check_k(approvals.m, k, budget)
    if weights.n != approvals.n:
        raise ProfileError("one weight sequence per voter is required")
    if weights.min_length() < k:
        raise ProfileError("weight sequences shorter than k")
    prefix = []
    for seq in weights.sequences:
        acc, sums = Fraction(0), [Fraction(0)]
        for w in seq[:k]:
            acc += w
            sums.append(acc)
        prefix.append(sums)
    ballots = [a for a in approvals.approvals]
    best = best_val = None
    for combo in combinations(range(1, approvals.m + 1), k):
        members = set(combo)
        val = sum((prefix[v][len(a & members)] for v, a in enumerate(ballots)), Fraction(0))
        if best_val is None or val > best_val:
            best, best_val = combo, val
    return CommitteeResult(best, best_val)


def direct_edge_weight(profile: MisrepProfile, axis: Axis, i: int, j: int):
    """``r({c_i, c_j}) - r({c_i})`` by direct summation over voters, sentinels included."""
    N = profile.m + 2
    if not 0 <= i < j <= N - 1:
        raise ValueError(f"need 0 <= i < j <= {N - 1}, got ({i}, {j})")
    ext, _ = _extended(profile, axis)
    if profile.n == 0:
        return 0 if profile.mode == "int" else 0.0
    return (np.minimum(ext[:, i], ext[:, j]).sum() - ext[:, i].sum()).item()


def all_direct_edge_weights(profile: MisrepProfile, axis: Axis) -> np.ndarray:
    """Dense ``(m+2) x (m+2)`` matrix of direct edge weights (upper triangle valid)."""
    ext, _ = _extended(profile, axis)
    N = profile.m + 2
    single = ext.sum(axis=0)
    W = np.zeros((N, N), dtype=ext.dtype)
    for i in range(N):
        W[i] = np.minimum(ext[:, i : i + 1], ext).sum(axis=0) - single[i]
    return W
