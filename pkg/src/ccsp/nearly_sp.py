"""Exact solvers for profiles that are single-peaked after deleting a known set ``D``.

Both solvers guess the pre-elected part ``W_D`` of the committee inside ``D``
(every subset of size at most ``k``) and solve the rest on the single-peaked
remainder, so the running time carries a ``2^|D|`` factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .cc_sp import CcSpInstance, solve_cc_sp
from .core import (
    FLOAT_TOL,
    ApprovalProfile,
    Axis,
    CommitteeResult,
    InvariantError,
    MisrepProfile,
    NotSinglePeakedError,
    ProfileError,
    ThieleWeights,
    misrep_of_committee,
    restrict_after_deletion,
    thiele_utility,
    verify_candidate_intervals,
    verify_sp_axis,
)
from .thiele_sp import solve_generalized_thiele_sp


@dataclass(frozen=True)
class DeletionInstance:
    """A profile, its deletion set, an axis over the kept candidates (original ids) and ``k``.

    ``profile`` is a :class:`MisrepProfile` for CC or an :class:`ApprovalProfile`
    (with ``weights``) for Thiele.
    """

    profile: MisrepProfile | ApprovalProfile
    deleted: tuple[int, ...]
    axis: Axis
    k: int
    weights: ThieleWeights | None = None

    def __post_init__(self):
        m = self.profile.m
        deleted = tuple(sorted(set(self.deleted)))
        object.__setattr__(self, "deleted", deleted)
        if any(not 1 <= c <= m for c in deleted):
            raise ProfileError(f"deletion set {deleted} has unknown candidates")
        if len(deleted) > m - 1:
            raise ProfileError("deletion set must leave at least one candidate")
        if not 1 <= self.k <= m:
            raise ProfileError(f"committee size k={self.k} outside 1..{m}")
        keep = self.kept
        if sorted(self.axis.order) != list(keep):
            raise ProfileError("axis must list exactly the candidates outside the deletion set")
        local = self.axis.relabel(keep)
        if isinstance(self.profile, ApprovalProfile):
            if self.weights is None:
                raise ProfileError("approval instances need Thiele weights")
            res = verify_candidate_intervals(self.profile.restrict(keep), local)
        else:
            res = verify_sp_axis(restrict_after_deletion(self.profile, deleted)[0], local)
        if not res:
            raise NotSinglePeakedError(
                f"restricted profile is not single-peaked on the axis; witness {res.witness}",
                res.witness,
            )

    @property
    def kept(self) -> tuple[int, ...]:
        gone = set(self.deleted)
        return tuple(c for c in range(1, self.profile.m + 1) if c not in gone)

    @property
    def d(self) -> int:
        return len(self.deleted)


@dataclass(frozen=True)
class SubsetRecord:
    """One guessed ``W_D``; ``committee`` is ``None`` when ``k - |W_D|`` exceeds ``m - d``."""

    preelected: tuple[int, ...]
    k_sub: int
    committee: tuple[int, ...] | None
    objective: object = None
    base: object = None
    sub_objective: object = None


def preelected_subsets(deleted, k):
    """All ``W_D`` with ``|W_D| <= k``, by size then lexicographically."""
    for size in range(min(k, len(deleted)) + 1):
        yield from combinations(deleted, size)


def reduce_cc_with_preelected(profile: MisrepProfile, deleted, preelected):
    """``r'(v, c) = min(r(v, W_D), r(v, c))`` on the kept candidates.

    Returns ``(profile over C minus D, kept ids)``.  An empty ``W_D`` leaves the
    restriction unchanged.
    """
    deleted = set(deleted)
    pre = list(preelected)
    if not set(pre) <= deleted:
        raise ProfileError(f"pre-elected {sorted(pre)} not inside the deletion set {sorted(deleted)}")
    sub, keep = restrict_after_deletion(profile, deleted)
    if not pre or profile.n == 0:
        return sub, keep
    best = profile.values[:, [c - 1 for c in pre]].min(axis=1)
    return MisrepProfile(np.minimum(sub.values, best[:, None]), m=len(keep)), keep


def _better(objective, committee, incumbent, *, maximize: bool) -> bool:
    if incumbent is None:
        return True
    inc_obj, inc_committee = incumbent.objective, incumbent.committee
    if objective != inc_obj:
        return objective > inc_obj if maximize else objective < inc_obj
    return committee < inc_committee


def solve_cc_with_deletion_set(
    instance: DeletionInstance, algorithm: str = "smawk", trace: list | None = None
) -> CommitteeResult:
    """Minimum-misrepresentation size-``k`` committee over the full candidate set.

    ``trace``, when given, receives one :class:`SubsetRecord` per guessed ``W_D``.
    """
    profile = instance.profile
    if not isinstance(profile, MisrepProfile):
        raise ProfileError("CC needs a misrepresentation profile")
    k, keep = instance.k, instance.kept
    local_axis = instance.axis.relabel(keep)
    best = None
    for pre in preelected_subsets(instance.deleted, k):
        k_sub = k - len(pre)
        if k_sub == 0:
            committee = tuple(pre)
            objective = misrep_of_committee(profile, committee)
            record = SubsetRecord(pre, 0, committee, objective)
        elif k_sub > len(keep):
            record = SubsetRecord(pre, k_sub, None)
        else:
            reduced, _ = reduce_cc_with_preelected(profile, instance.deleted, pre)
            sub = solve_cc_sp(CcSpInstance(reduced, local_axis, k_sub), algorithm)
            committee = tuple(sorted(pre + tuple(keep[c - 1] for c in sub.committee)))
            objective = misrep_of_committee(profile, committee)
            if profile.mode == "int":
                agree = objective == sub.objective
            else:
                agree = abs(objective - sub.objective) <= FLOAT_TOL * max(1.0, abs(objective))
            if not agree:
                raise InvariantError(
                    f"reduced objective {sub.objective} differs from committee score {objective}"
                )
            record = SubsetRecord(pre, k_sub, committee, objective, sub_objective=sub.objective)
        if trace is not None:
            trace.append(record)
        if record.committee is not None and _better(
            record.objective, record.committee, best, maximize=False
        ):
            best = CommitteeResult(record.committee, record.objective)
    return best


def shift_weights(weights: ThieleWeights, overlaps, needed: int = 0) -> ThieleWeights:
    """Drop the first ``overlaps[v]`` entries of voter ``v``'s sequence.

    ``needed`` is the minimum length each shifted sequence must keep.
    """
    overlaps = list(overlaps)
    if len(overlaps) != weights.n:
        raise ProfileError("one overlap count per voter is required")
    shifted = []
    for v, (seq, o) in enumerate(zip(weights.sequences, overlaps)):
        if o < 0:
            raise ProfileError("overlaps must be non-negative")
        if len(seq) - o < needed:
            raise ProfileError(
                f"weight sequence of voter {v} too short to shift by {o} and keep {needed} entries"
            )
        shifted.append(seq[o:])
    return ThieleWeights(shifted)


def solve_thiele_with_deletion_set(
    instance: DeletionInstance, trace: list | None = None
) -> CommitteeResult:
    """Maximum-utility size-``k`` committee over the full candidate set.

    A guessed ``W_D`` contributes its own utility (the base) and shifts each
    voter's weights by ``|A_v & W_D|`` for the interval part.
    """
    approvals, weights = instance.profile, instance.weights
    if not isinstance(approvals, ApprovalProfile):
        raise ProfileError("Thiele needs an approval profile")
    if weights.n != approvals.n:
        raise ProfileError("one weight sequence per voter is required")
    k, keep = instance.k, instance.kept
    if weights.min_length() < k:
        raise ProfileError("weight sequences shorter than k")
    local_axis = instance.axis.relabel(keep)
    restricted = approvals.restrict(keep)
    best = None
    for pre in preelected_subsets(instance.deleted, k):
        k_sub = k - len(pre)
        members = set(pre)
        overlaps = [len(a & members) for a in approvals.approvals]
        base = sum(
            (sum(seq[:o], Fraction(0)) for seq, o in zip(weights.sequences, overlaps)), Fraction(0)
        )
        if k_sub == 0:
            record = SubsetRecord(pre, 0, tuple(pre), base, base, Fraction(0))
        elif k_sub > len(keep):
            record = SubsetRecord(pre, k_sub, None, base=base)
        else:
            sub = solve_generalized_thiele_sp(
                restricted, shift_weights(weights, overlaps, k_sub), local_axis, k_sub
            )
            committee = tuple(sorted(pre + tuple(keep[c - 1] for c in sub.committee)))
            record = SubsetRecord(pre, k_sub, committee, base + sub.objective, base, sub.objective)
        if record.committee is not None:
            direct = thiele_utility(approvals, weights, record.committee)
            if direct != record.objective:
                raise InvariantError(
                    f"base {record.base} + sub-objective {record.sub_objective} "
                    f"differs from committee utility {direct}"
                )
        if trace is not None:
            trace.append(record)
        if record.committee is not None and _better(
            record.objective, record.committee, best, maximize=True
        ):
            best = CommitteeResult(record.committee, record.objective)
    return best
