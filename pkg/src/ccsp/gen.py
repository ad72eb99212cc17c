"""Seeded instance generators.

All randomness comes from :class:`XorShift64Star`, a small fully specified
generator, so fixtures are reproducible byte for byte in any language:

* seeding: ``state = splitmix64(seed)``; a zero state is replaced by
  ``0x9E3779B97F4A7C15``;
* step: ``x ^= x >> 12; x ^= x << 25; x ^= x >> 27`` (mod 2**64), output
  ``x * 0x2545F4914F6CDD1D mod 2**64``;
* ``below(n)``: rejection sampling on the 64-bit output, then ``% n``;
* ``random()``: ``(output >> 11) / 2**53``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    ApprovalProfile,
    Axis,
    InvariantError,
    MisrepProfile,
    restrict_after_deletion,
    verify_candidate_intervals,
    verify_sp_axis,
)

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        state = splitmix64(int(seed) & MASK64)
        self.state = state or 0x9E3779B97F4A7C15

    def next64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        if n < 1:
            raise ValueError("below() needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def random(self) -> float:
        return (self.next64() >> 11) / float(1 << 53)

    def shuffle(self, items: list) -> list:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, population: list, count: int) -> list:
        """``count`` distinct items by a partial Fisher-Yates pass."""
        pool = list(population)
        for i in range(count):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]


@dataclass(frozen=True)
class GenParams:
    n: int
    m: int
    seed: int = 0
    value_cap: int | None = None  # default: 2 * m
    tie_probability: float = 0.2
    d: int = 0
    empty_probability: float = 0.1
    max_interval: int | None = None  # default: m - d
    shuffle_axis: bool = True

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")
        if not 0 <= self.tie_probability <= 1:
            raise ValueError("tie_probability must lie in [0, 1]")
        if not 0 <= self.empty_probability <= 1:
            raise ValueError("empty_probability must lie in [0, 1]")
        if not 0 <= self.d < self.m:
            raise ValueError("need 0 <= d < m")
        if self.value_cap is not None and self.value_cap < 0:
            raise ValueError("value_cap must be non-negative")
        if self.max_interval is not None and self.max_interval < 1:
            raise ValueError("max_interval must be positive")

    @property
    def cap(self) -> int:
        return 2 * self.m if self.value_cap is None else self.value_cap


def _valley_row(rng: XorShift64Star, m: int, cap: int, tie_p: float) -> list[int]:
    """Scores along the axis: non-increasing to a random bottom, then non-decreasing.

    With ``tie_p == 0`` both flanks are strictly monotone (needs ``cap >= m - 1``).
    """
    peak = rng.below(m)
    span = max(peak, m - 1 - peak)
    if cap >= span:
        v0 = rng.below(cap - span + 1)
    else:
        v0 = rng.below(cap + 1)
    row = [0] * m
    row[peak] = v0
    for positions in (range(peak - 1, -1, -1), range(peak + 1, m)):
        value = v0
        steps = len(positions)
        for s, pos in enumerate(positions):
            if tie_p and rng.random() < tie_p:
                pass
            else:
                room = cap - value - (steps - s - 1)
                value = min(value + 1 + rng.below(max(room, 1)), cap)
            row[pos] = value
    return row


def _axis(rng: XorShift64Star, candidates: list[int], shuffle: bool) -> Axis:
    order = list(candidates)
    if shuffle:
        rng.shuffle(order)
    return Axis(order)


def _sp_columns(rng, params: GenParams, axis: Axis, n: int, m_total: int) -> np.ndarray:
    vals = np.zeros((n, m_total), dtype=np.int64)
    cols = [c - 1 for c in axis.order]
    for v in range(n):
        vals[v, cols] = _valley_row(rng, len(cols), params.cap, params.tie_probability)
    return vals


def _check_params(params: GenParams, m_core: int):
    if params.tie_probability == 0 and params.cap < m_core - 1:
        raise ValueError("strict rows need value_cap >= m - 1 when tie_probability is 0")


def gen_sp_misrep(params: GenParams) -> tuple[MisrepProfile, Axis]:
    """A single-peaked integer profile and its axis."""
    profile, axis, _ = gen_nearly_sp(replace(params, d=0))
    return profile, axis


def _interval(rng, params: GenParams, axis: Axis) -> set[int]:
    if rng.random() < params.empty_probability:
        return set()
    m = len(axis)
    longest = min(m, params.max_interval or m)
    length = 1 + rng.below(longest)
    start = rng.below(m - length + 1)
    return set(axis.order[start : start + length])


def gen_ci_approvals(params: GenParams) -> tuple[ApprovalProfile, Axis]:
    """Approval ballots that are intervals (possibly empty) of a random axis."""
    approvals, axis, _ = gen_nearly_sp(replace(params, d=0), kind="approval")
    return approvals, axis


def gen_nearly_sp(params: GenParams, kind: str = "misrep"):
    """An instance that becomes SP (or CI) after deleting ``d`` random candidates.

    Returns ``(profile, axis over the kept candidates, deleted tuple)``.  The
    deleted candidates get unconstrained random columns; ``d = 0`` gives the
    plain generators' output for the same seed.
    """
    if kind not in ("misrep", "approval"):
        raise ValueError(f"unknown kind {kind!r}")
    rng = XorShift64Star(params.seed)
    m, n, d = params.m, params.n, params.d
    deleted = tuple(sorted(rng.sample(list(range(1, m + 1)), d))) if d else ()
    core = [c for c in range(1, m + 1) if c not in deleted]
    axis = _axis(rng, core, params.shuffle_axis)
    if kind == "misrep":
        _check_params(params, len(core))
        vals = _sp_columns(rng, params, axis, n, m)
        for c in deleted:
            for v in range(n):
                vals[v, c - 1] = rng.below(params.cap + 1)
        profile = MisrepProfile(vals)
        sub, keep = restrict_after_deletion(profile, deleted)
        if not verify_sp_axis(sub, axis.relabel(keep)):
            raise InvariantError("generated profile is not single-peaked")
        return profile, axis, deleted
    ballots = [_interval(rng, params, axis) for _ in range(n)]
    for v in range(n):
        for c in deleted:
            if rng.below(2):
                ballots[v].add(c)
    approvals = ApprovalProfile(m, ballots)
    keep = tuple(core)
    if not verify_candidate_intervals(approvals.restrict(keep), axis.relabel(keep)):
        raise InvariantError("generated ballots are not candidate intervals")
    return approvals, axis, deleted
