"""Chamberlin-Courant on single-peaked profiles via a (k+1)-link path."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FLOAT_TOL,
    Axis,
    CommitteeResult,
    InvariantError,
    MisrepProfile,
    ProfileError,
    misrep_of_committee,
)
from .linkpath import PathResult
from .monge import EdgeWeightOracle, build_edge_weight_oracle


@dataclass(frozen=True)
class CcSpInstance:
    profile: MisrepProfile
    axis: Axis
    k: int
    bound: object = None

    def __post_init__(self):
        if not 1 <= self.k <= self.profile.m:
            raise ProfileError(f"committee size k={self.k} outside 1..{self.profile.m}")
        if self.bound is not None and self.bound < 0:
            raise ProfileError("misrepresentation bound must be non-negative")


def committee_from_path(oracle: EdgeWeightOracle, path: PathResult) -> tuple[int, ...]:
    """Interior path nodes are axis positions; map them back to candidate ids."""
    return tuple(sorted(oracle.axis.order[a - 1] for a in path.nodes[1:-1]))


def solve_cc_sp(
    instance: CcSpInstance,
    algorithm: str = "smawk",
    *,
    oracle: EdgeWeightOracle | None = None,
    return_path: bool = False,
):
    """Optimal CC committee of size ``k`` on a single-peaked profile.

    The minimum-weight path with ``k + 1`` edges from the left sentinel to the
    right one visits the committee; its weight is the committee's total
    misrepresentation minus ``U * n``.  With ``return_path`` the result is
    ``(CommitteeResult, PathResult)``.
    """
    profile = instance.profile
    if oracle is None:
        oracle = build_edge_weight_oracle(profile, instance.axis)
    path = oracle.t_link_path(instance.k + 1, algorithm)
    committee = committee_from_path(oracle, path)
    objective = path.weight + oracle.U * profile.n
    direct = misrep_of_committee(profile, committee)
    if profile.mode == "int":
        consistent = objective == direct
    else:
        consistent = abs(objective - direct) <= FLOAT_TOL * max(1.0, abs(direct))
        objective = direct
    if not consistent:
        raise InvariantError(
            f"path weight {path.weight} + U*n does not match committee score {direct}"
        )
    result = CommitteeResult(committee, objective)
    return (result, path) if return_path else result


def decide_cc_sp(instance: CcSpInstance, algorithm: str = "smawk") -> CommitteeResult | None:
    """An optimal committee if its misrepresentation is at most the bound, else ``None``."""
    if instance.bound is None:
        raise ProfileError("decision version needs a misrepresentation bound")
    result = solve_cc_sp(instance, algorithm)
    tol = FLOAT_TOL if instance.profile.mode == "float" else 0
    return result if result.objective <= instance.bound + tol else None
