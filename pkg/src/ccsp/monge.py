"""Edge-weight oracle for the CC-to-t-link-path reduction.

Nodes ``0..m+1`` are the axis positions with two sentinels whose score is the
profile maximum ``U``.  The edge ``i -> j`` weighs
``w(i, j) = r({c_i, c_j}) - r({c_i})``, split as ``f(i, j) + g(i, j) - r({c_i})``
where ``f`` collects voters that prefer ``c_j`` (ties resolved by each voter's
leftmost best position ``l_v``) and ``g`` the rest.  On a single-peaked axis
each voter's contribution to ``f(., j)`` is a prefix ``0..p[v, j]`` of source
nodes and its contribution to ``g(i, .)`` is a suffix ``q[v, i]..m+1`` of target
nodes, so a query is two binary searches over precomputed sums.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import Axis, MisrepProfile, NotSinglePeakedError, verify_sp_axis
from .linkpath import PathResult


def _py(x):
    return x.item() if hasattr(x, "item") else x


_METHOD_CODES = {"smawk": _kernels.SMAWK, "dc": _kernels.DC, "naive": _kernels.NAIVE}


def _extended(profile: MisrepProfile, axis: Axis) -> tuple[np.ndarray, object]:
    x = profile.values[:, [c - 1 for c in axis.order]]
    U = profile.max_value()
    ext = np.empty((profile.n, profile.m + 2), dtype=x.dtype)
    ext[:, 0] = U
    ext[:, -1] = U
    ext[:, 1:-1] = x
    return ext, U


def _grouped(keys: np.ndarray, weights: np.ndarray, *, prefix: bool, drop):
    """Sort each row of ``keys`` and keep one entry per distinct key.

    With ``prefix=False`` each kept entry carries the sum of weights of all keys
    ``>=`` it (first occurrence kept); with ``prefix=True`` the sum of keys
    ``<=`` it (last occurrence kept).  Entries equal to ``drop`` are discarded.
    Returns CSR arrays ``(ptr, key, sums)``.
    """
    order = np.argsort(keys, axis=1, kind="stable")
    ks = np.take_along_axis(keys, order, axis=1)
    ws = np.take_along_axis(weights, order, axis=1)
    rows, width = ks.shape
    keep = np.ones_like(ks, dtype=bool)
    if prefix:
        sums = np.cumsum(ws, axis=1)
        if width > 1:
            keep[:, :-1] = ks[:, :-1] != ks[:, 1:]
    else:
        sums = np.cumsum(ws[:, ::-1], axis=1)[:, ::-1]
        if width > 1:
            keep[:, 1:] = ks[:, 1:] != ks[:, :-1]
    keep &= ks != drop
    ptr = np.zeros(rows + 1, dtype=np.int64)
    np.cumsum(keep.sum(axis=1), out=ptr[1:])
    return ptr, np.ascontiguousarray(ks[keep]), np.ascontiguousarray(sums[keep])


class EdgeWeightOracle:
    """Preprocessed structure answering ``w(i, j)`` in ``O(log m)``.

    Attributes mirror the construction: ``node_count = m + 2``,
    ``singletons[i] = r({c_i})``, ``U`` the sentinel score, ``lv`` each voter's
    leftmost best node, ``p``/``q`` the per-voter thresholds, and CSR arrays
    ``fwd_*`` (grouped by target ``j``) and ``bwd_*`` (grouped by source ``i``).
    """

    def __init__(self, profile: MisrepProfile, axis: Axis, *, check: bool = True):
        if check:
            res = verify_sp_axis(profile, axis)
            if not res:
                raise NotSinglePeakedError(
                    f"profile is not single-peaked on the axis; witness {res.witness}", res.witness
                )
        self.profile = profile
        self.axis = axis
        self.n = profile.n
        self.m = profile.m
        self.node_count = profile.m + 2
        self.mode = profile.mode
        ext, self.U = _extended(profile, axis)
        self.ext = ext
        self.singletons = np.ascontiguousarray(ext.sum(axis=0))
        self.lv = np.ascontiguousarray(ext.argmin(axis=1).astype(np.int64)) if self.n else np.zeros(0, np.int64)
        if self.n:
            self.p, self.q = _kernels.thresholds(np.ascontiguousarray(ext), self.lv)
        else:
            self.p = np.zeros((0, self.node_count), np.int64)
            self.q = np.zeros((0, self.node_count), np.int64)
        # forward: for target j, voters with p[v, j] >= i add r(v, c_j)
        self.fwd_ptr, self.fwd_key, self.fwd_sum = _grouped(
            np.ascontiguousarray(self.p.T), np.ascontiguousarray(ext.T), prefix=False, drop=-1
        )
        # mirror: for source i, voters with q[v, i] <= j add r(v, c_i)
        self.bwd_ptr, self.bwd_key, self.bwd_sum = _grouped(
            np.ascontiguousarray(self.q.T), np.ascontiguousarray(ext.T), prefix=True, drop=self.node_count
        )
        self._arrays = (
            self.fwd_ptr, self.fwd_key, self.fwd_sum,
            self.bwd_ptr, self.bwd_key, self.bwd_sum,
            self.singletons,
        )

    def _check_pair(self, i: int, j: int) -> None:
        if not 0 <= i < j <= self.node_count - 1:
            raise ValueError(f"need 0 <= i < j <= {self.node_count - 1}, got ({i}, {j})")

    def edge_weight(self, i: int, j: int):
        self._check_pair(i, j)
        return _py(_kernels.edge_weight(i, j, *self._arrays))

    __call__ = edge_weight

    def edge_weight_counted(self, i: int, j: int):
        """``(w(i, j), number of key comparisons)``; instrumentation only."""
        self._check_pair(i, j)
        w, count = _kernels.edge_weight_counted(i, j, *self._arrays)
        return _py(w), int(count)

    def edge_weights(self, I, J) -> np.ndarray:
        I = np.ascontiguousarray(I, dtype=np.int64)
        J = np.ascontiguousarray(J, dtype=np.int64)
        if I.shape != J.shape or np.any(I < 0) or np.any(I >= J) or np.any(J >= self.node_count):
            raise ValueError("invalid node pairs")
        return _kernels.edge_weights(I, J, *self._arrays)

    def t_link_path(self, t: int, method: str = "smawk") -> PathResult:
        """Compiled layered DP over this oracle; see ``linkpath.min_weight_t_link_path``."""
        if not 1 <= t <= self.node_count - 1:
            raise ValueError(f"t={t} outside 1..{self.node_count - 1}")
        try:
            code = _METHOD_CODES[method]
        except KeyError:
            raise ValueError(f"unknown method {method!r}") from None
        weight, nodes = _kernels.t_link_path(code, self.node_count, t, *self._arrays)
        return PathResult(tuple(int(a) for a in nodes), _py(weight))

    def threshold_count(self) -> int:
        """Largest number of distinct thresholds stored for one node."""
        return int(max(np.diff(self.fwd_ptr).max(initial=0), np.diff(self.bwd_ptr).max(initial=0)))


def build_edge_weight_oracle(profile: MisrepProfile, axis: Axis, *, check: bool = True) -> EdgeWeightOracle:
    return EdgeWeightOracle(profile, axis, check=check)


def edge_weight(oracle: EdgeWeightOracle, i: int, j: int):
    return oracle.edge_weight(i, j)
