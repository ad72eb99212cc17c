"""Domain types for multiwinner elections and the structural checks on them.

Candidates are dense 1-based integers ``1..m``.  Voters are 0-based row
indices.  A misrepresentation profile stores ``r(v, c)`` in column ``c - 1``
regardless of the single-peaked axis; the axis is a separate object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

FLOAT_TOL = 1e-9


class ProfileError(ValueError):
    """Malformed input: bad shapes, unknown candidates, mixed numeric modes."""


class NotSinglePeakedError(ProfileError):
    """A profile is not single-peaked (or not candidate-interval) on the axis."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantError(RuntimeError):
    """An internal consistency check failed; this is a bug, never user error."""


class Check(NamedTuple):
    """Boolean outcome plus an optional counterexample."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Axis:
    """A linear order of candidates; ``order[0]`` is the leftmost."""

    order: tuple[int, ...]

    def __init__(self, order: Iterable[int]):
        order = tuple(int(c) for c in order)
        if len(set(order)) != len(order):
            raise ProfileError(f"axis repeats a candidate: {order}")
        if any(c < 1 for c in order):
            raise ProfileError("candidate identifiers are 1-based")
        object.__setattr__(self, "order", order)

    @classmethod
    def identity(cls, m: int) -> "Axis":
        return cls(range(1, m + 1))

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def position(self) -> dict[int, int]:
        """Map candidate -> 0-based position on the axis."""
        return {c: p for p, c in enumerate(self.order)}

    def relabel(self, mapping: Sequence[int]) -> "Axis":
        """Translate old candidate ids to new ids.

        ``mapping[new - 1] == old``, as returned by :func:`restrict_after_deletion`.
        """
        back = {old: new for new, old in enumerate(mapping, start=1)}
        try:
            return Axis(back[c] for c in self.order)
        except KeyError as exc:
            raise ProfileError(f"axis candidate {exc.args[0]} not in mapping") from None


def _check_axis_covers(axis: Axis, m: int) -> None:
    if sorted(axis.order) != list(range(1, m + 1)):
        raise ProfileError(
            f"axis {axis.order} does not cover exactly candidates 1..{m}"
        )


class MisrepProfile:
    """Non-negative misrepresentation matrix ``r`` of shape ``(n, m)``.

    Two numeric modes exist: ``"int"`` (exact, stored as int64) and
    ``"float"`` (float64, compared with tolerance ``FLOAT_TOL``).  Python
    input mixing ints and floats is rejected.
    """

    __slots__ = ("values", "mode", "_hash")

    def __init__(self, rows, m: int | None = None):
        if isinstance(rows, np.ndarray):
            arr = rows
            if arr.ndim != 2:
                raise ProfileError("profile matrix must be 2-dimensional")
            if np.issubdtype(arr.dtype, np.integer) or arr.dtype == np.bool_:
                mode = "int"
            elif np.issubdtype(arr.dtype, np.floating):
                mode = "float"
            else:
                raise ProfileError(f"unsupported dtype {arr.dtype}")
            if arr.shape[0] == 0 and m is not None:
                arr = arr.reshape(0, m)
        else:
            rows = [list(r) for r in rows]
            kinds = set()
            for row in rows:
                for x in row:
                    if isinstance(x, bool) or isinstance(x, (int, np.integer)):
                        kinds.add("int")
                    elif isinstance(x, (float, np.floating)):
                        kinds.add("float")
                    else:
                        raise ProfileError(f"unsupported score {x!r}")
            if len(kinds) > 1:
                raise ProfileError("profile mixes integer and float scores")
            mode = kinds.pop() if kinds else "int"
            if not rows:
                if m is None:
                    raise ProfileError("empty profile needs an explicit m")
                arr = np.zeros((0, m), dtype=np.int64)
            else:
                widths = {len(r) for r in rows}
                if len(widths) != 1:
                    raise ProfileError("profile rows have different lengths")
                if mode == "int":
                    if any(abs(int(x)) >= 2**62 for r in rows for x in r):
                        raise ProfileError("integer scores must be below 2**62")
                    arr = np.array(rows, dtype=np.int64)
                else:
                    arr = np.array(rows, dtype=np.float64)
        arr = np.array(arr, dtype=np.int64 if mode == "int" else np.float64)
        if m is not None and arr.shape[1] != m:
            raise ProfileError(f"expected {m} candidates, got {arr.shape[1]}")
        if arr.shape[1] < 1:
            raise ProfileError("a profile needs at least one candidate")
        if mode == "float" and not np.all(np.isfinite(arr)):
            raise ProfileError("scores must be finite")
        if np.any(arr < 0):
            raise ProfileError("scores must be non-negative")
        if mode == "int" and arr.size:
            # sums over n voters and m+2 nodes must stay inside int64
            if int(arr.max()) * max(arr.shape[0], 1) * (arr.shape[1] + 2) >= 2**62:
                raise ProfileError("integer scores too large for exact int64 sums")
        arr.flags.writeable = False
        self.values = arr
        self.mode = mode
        self._hash = None

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def candidates(self) -> range:
        return range(1, self.m + 1)

    def r(self, v: int, c: int):
        return self.values[v, c - 1].item()

    def max_value(self):
        """The largest score ``U`` (0 for an empty profile)."""
        if self.values.size == 0:
            return 0 if self.mode == "int" else 0.0
        return self.values.max().item()

    def rows(self) -> list[list]:
        return self.values.tolist()

    def __eq__(self, other):
        if not isinstance(other, MisrepProfile):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.values.shape == other.values.shape
            and bool(np.array_equal(self.values, other.values))
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.mode, self.values.shape, self.values.tobytes()))
        return self._hash

    def __repr__(self):
        return f"MisrepProfile(n={self.n}, m={self.m}, mode={self.mode!r})"


@dataclass(frozen=True)
class ApprovalProfile:
    """Approval ballots ``A_v`` over candidates ``1..m``."""

    m: int
    approvals: tuple[frozenset[int], ...]

    def __init__(self, m: int, approvals: Iterable[Iterable[int]]):
        if m < 1:
            raise ProfileError("an approval profile needs at least one candidate")
        ballots = tuple(frozenset(int(c) for c in a) for a in approvals)
        for v, a in enumerate(ballots):
            bad = [c for c in a if not 1 <= c <= m]
            if bad:
                raise ProfileError(f"voter {v} approves unknown candidates {sorted(bad)}")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "approvals", ballots)

    @property
    def n(self) -> int:
        return len(self.approvals)

    def misrep(self) -> MisrepProfile:
        """Approval misrepresentation ``r(v, c) = 1 - [c in A_v]``."""
        vals = np.ones((self.n, self.m), dtype=np.int64)
        for v, a in enumerate(self.approvals):
            for c in a:
                vals[v, c - 1] = 0
        return MisrepProfile(vals)

    def restrict(self, keep: Sequence[int]) -> "ApprovalProfile":
        """Keep only candidates ``keep`` (old ids, new id = index + 1)."""
        new_id = {old: new for new, old in enumerate(keep, start=1)}
        return ApprovalProfile(
            len(keep), ({new_id[c] for c in a if c in new_id} for a in self.approvals)
        )


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise ProfileError(f"Thiele weights must be exact rationals, got float {x!r}")
    return Fraction(x)


RULES = ("cc", "pav", "av", "sqpav")


def rule_sequence(rule: str, length: int) -> tuple[Fraction, ...]:
    """Named Thiele sequences: cc=(1,0,..), pav=1/i, av=(1,1,..), sqpav=1/i^2."""
    if rule == "cc":
        return tuple(Fraction(int(i == 1)) for i in range(1, length + 1))
    if rule == "pav":
        return tuple(Fraction(1, i) for i in range(1, length + 1))
    if rule == "av":
        return tuple(Fraction(1) for _ in range(length))
    if rule == "sqpav":
        return tuple(Fraction(1, i * i) for i in range(1, length + 1))
    raise ProfileError(f"unknown Thiele rule {rule!r}; expected one of {RULES}")


@dataclass(frozen=True)
class ThieleWeights:
    """One non-increasing sequence in [0, 1] per voter, exact rationals."""

    sequences: tuple[tuple[Fraction, ...], ...]

    def __init__(self, sequences: Iterable[Iterable]):
        seqs = tuple(tuple(_as_fraction(x) for x in s) for s in sequences)
        for v, s in enumerate(seqs):
            if any(not 0 <= x <= 1 for x in s):
                raise ProfileError(f"weights of voter {v} leave [0, 1]")
            if any(a < b for a, b in zip(s, s[1:])):
                raise ProfileError(f"weights of voter {v} are not non-increasing")
        object.__setattr__(self, "sequences", seqs)

    @classmethod
    def uniform(cls, rule: str, n: int, length: int) -> "ThieleWeights":
        seq = rule_sequence(rule, length)
        return cls([seq] * n)

    @property
    def n(self) -> int:
        return len(self.sequences)

    def min_length(self) -> int:
        return min((len(s) for s in self.sequences), default=math.inf)


@dataclass(frozen=True, order=True)
class CommitteeResult:
    """A winning committee (sorted candidate ids) and its exact score."""

    committee: tuple[int, ...]
    objective: object = field(compare=False)

    def __init__(self, committee: Iterable[int], objective):
        object.__setattr__(self, "committee", tuple(sorted(int(c) for c in committee)))
        object.__setattr__(self, "objective", objective)


def _committee_indices(m: int, committee: Iterable[int]) -> list[int]:
    members = list(committee)
    if not members:
        raise ProfileError("committee is empty")
    if len(set(members)) != len(members):
        raise ProfileError(f"committee repeats a candidate: {members}")
    for c in members:
        if not 1 <= c <= m:
            raise ProfileError(f"unknown candidate {c}")
    return [c - 1 for c in members]


def misrep_of_committee(profile: MisrepProfile, committee: Iterable[int]):
    """Total misrepresentation ``sum_v min_{c in W} r(v, c)``."""
    idx = _committee_indices(profile.m, committee)
    if profile.n == 0:
        return 0 if profile.mode == "int" else 0.0
    return profile.values[:, idx].min(axis=1).sum().item()


def thiele_utility(
    approvals: ApprovalProfile, weights: ThieleWeights, committee: Iterable[int]
) -> Fraction:
    """Total utility ``sum_v sum_{i <= |A_v & W|} w^v_i``."""
    members = set(committee)
    if len(members) and max(members) > approvals.m or any(c < 1 for c in members):
        raise ProfileError(f"committee {sorted(members)} has unknown candidates")
    if weights.n != approvals.n:
        raise ProfileError("one weight sequence per voter is required")
    total = Fraction(0)
    for a, seq in zip(approvals.approvals, weights.sequences):
        if len(seq) < len(members):
            raise ProfileError(
                f"weight sequence of length {len(seq)} shorter than committee size {len(members)}"
            )
        total += sum(seq[: len(a & members)], Fraction(0))
    return total


def verify_sp_axis(profile: MisrepProfile, axis: Axis) -> Check:
    """Check single-peakedness of ``profile`` along ``axis``.

    A voter violates the triple implication exactly when some interior
    position strictly exceeds a value on its left and a value on its right,
    so one prefix-minimum and one suffix-minimum sweep per voter suffice.
    Witness: ``(voter, (c_i, c_j, c_k))`` in axis order.
    """
    _check_axis_covers(axis, profile.m)
    m = profile.m
    if profile.n == 0 or m <= 2:
        return Check(True)
    x = profile.values[:, [c - 1 for c in axis.order]]
    tol = FLOAT_TOL if profile.mode == "float" else 0
    pre = np.minimum.accumulate(x, axis=1)
    suf = np.minimum.accumulate(x[:, ::-1], axis=1)[:, ::-1]
    mid = x[:, 1:-1]
    bad = (mid > pre[:, :-2] + tol) & (mid > suf[:, 2:] + tol)
    if not bad.any():
        return Check(True)
    v, jj = map(int, np.argwhere(bad)[0])
    j = jj + 1
    i = int(np.argmin(x[v, :j]))
    k = j + 1 + int(np.argmin(x[v, j + 1 :]))
    return Check(False, (v, (axis.order[i], axis.order[j], axis.order[k])))


def verify_sp_axis_exhaustive(profile: MisrepProfile, axis: Axis) -> Check:
    """Reference checker: the triple implication over all axis triples."""
    _check_axis_covers(axis, profile.m)
    tol = FLOAT_TOL if profile.mode == "float" else 0
    order = axis.order
    for v in range(profile.n):
        row = [profile.r(v, c) for c in order]
        for i, j, k in combinations(range(len(order)), 3):
            # i < j < k; both orientations of the implication
            if row[i] < row[j] - tol and not row[j] <= row[k] + tol:
                return Check(False, (v, (order[i], order[j], order[k])))
            if row[k] < row[j] - tol and not row[j] <= row[i] + tol:
                return Check(False, (v, (order[i], order[j], order[k])))
    return Check(True)


def verify_candidate_intervals(approvals: ApprovalProfile, axis: Axis) -> Check:
    """Every ballot must be a contiguous run of axis positions; witness is the voter."""
    _check_axis_covers(axis, approvals.m)
    pos = axis.position()
    for v, a in enumerate(approvals.approvals):
        if not a:
            continue
        ps = [pos[c] for c in a]
        if max(ps) - min(ps) + 1 != len(ps):
            return Check(False, v)
    return Check(True)


def restrict_after_deletion(
    profile: MisrepProfile, deleted: Iterable[int]
) -> tuple[MisrepProfile, tuple[int, ...]]:
    """Drop the candidates in ``deleted``.

    Returns the restricted profile (candidates renumbered ``1..m-d``) and the
    mapping ``new id -> old id`` as a tuple indexed by ``new - 1``.
    """
    deleted = set(deleted)
    unknown = [c for c in deleted if not 1 <= c <= profile.m]
    if unknown:
        raise ProfileError(f"unknown candidates in deletion set: {sorted(unknown)}")
    keep = tuple(c for c in profile.candidates if c not in deleted)
    if not keep:
        raise ProfileError("deletion set removes every candidate")
    sub = profile.values[:, [c - 1 for c in keep]]
    return MisrepProfile(sub, m=len(keep)), keep
