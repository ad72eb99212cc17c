"""Row minima of totally monotone matrices and minimum-weight t-link paths.

These are the generic, pure-Python solvers: they accept any ``weight_fn(i, j)``
and are what the tests use to cross-check the compiled kernels driven by an
:class:`~ccsp.monge.EdgeWeightOracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Check

METHODS = ("smawk", "dc", "naive")


@dataclass(frozen=True)
class PathResult:
    nodes: tuple[int, ...]
    weight: object

    @property
    def t(self) -> int:
        return len(self.nodes) - 1


def smawk_row_minima(matrix_fn: Callable[[int, int], object], row_count: int, col_count: int) -> list[int]:
    """Leftmost row-minimum column of a totally monotone matrix.

    ``matrix_fn(r, c)`` returns a comparable entry.  Total monotonicity is the
    caller's responsibility; ``O(row_count + col_count)`` evaluations.
    """
    if row_count < 1 or col_count < 1:
        raise ValueError("matrix must be non-empty")
    result = [0] * row_count

    def solve(rows: Sequence[int], cols: Sequence[int]) -> None:
        # reduce: keep at most len(rows) columns that can still hold a leftmost minimum
        stack: list[int] = []
        for c in cols:
            while stack and matrix_fn(rows[len(stack) - 1], c) < matrix_fn(rows[len(stack) - 1], stack[-1]):
                stack.pop()
            if len(stack) < len(rows):
                stack.append(c)
        if len(rows) > 1:
            solve(rows[1::2], stack)
        k = 0
        for idx in range(0, len(rows), 2):
            row = rows[idx]
            end = result[rows[idx + 1]] if idx + 1 < len(rows) else stack[-1]
            best = stack[k]
            best_val = matrix_fn(row, best)
            while stack[k] != end:
                k += 1
                val = matrix_fn(row, stack[k])
                if val < best_val:
                    best, best_val = stack[k], val
            result[row] = best

    solve(list(range(row_count)), list(range(col_count)))
    return result


def dc_row_minima(matrix_fn: Callable[[int, int], object], row_count: int, col_count: int) -> list[int]:
    """Leftmost row minima for a matrix with non-decreasing row argmins.

    Divide and conquer on the middle row; ``O((rows + cols) log rows)`` evaluations.
    """
    if row_count < 1 or col_count < 1:
        raise ValueError("matrix must be non-empty")
    result = [0] * row_count
    stack = [(0, row_count - 1, 0, col_count - 1)]
    while stack:
        rlo, rhi, clo, chi = stack.pop()
        if rlo > rhi:
            continue
        mid = (rlo + rhi) // 2
        best, best_val = clo, matrix_fn(mid, clo)
        for c in range(clo + 1, chi + 1):
            val = matrix_fn(mid, c)
            if val < best_val:
                best, best_val = c, val
        result[mid] = best
        stack.append((rlo, mid - 1, clo, best))
        stack.append((mid + 1, rhi, best, chi))
    return result


def _check_t(node_count: int, t: int) -> None:
    if node_count < 2:
        raise ValueError("need at least a source and a target node")
    if not 1 <= t <= node_count - 1:
        raise ValueError(f"t={t} outside 1..{node_count - 1}")


def _layers(node_count: int, t: int):
    """Yield ``(layer, rows, cols)`` node ranges for the layered DP."""
    last = node_count - 1
    for layer in range(1, t + 1):
        rlo = last if layer == t else layer
        rhi = last - t + layer
        if layer == 1:
            clo = chi = 0
        else:
            clo, chi = layer - 1, last - 1 - t + layer
        yield layer, range(rlo, rhi + 1), range(clo, chi + 1)


def _trace(parent: list[dict[int, int]], dp_last, node_count: int, t: int) -> PathResult:
    nodes = [node_count - 1]
    for layer in range(t, 0, -1):
        nodes.append(parent[layer][nodes[-1]])
    return PathResult(tuple(reversed(nodes)), dp_last)


def min_weight_t_link_path(
    weight_fn: Callable[[int, int], object], node_count: int, t: int, method: str = "smawk"
) -> PathResult:
    """Minimum-weight ``0 -> node_count-1`` path with exactly ``t`` edges.

    ``weight_fn`` must be concave Monge.  Each layer
    ``dp_l(j) = min_{i<j} dp_{l-1}(i) + w(i, j)`` is a row-minima problem;
    cells with ``i >= j`` are padded with keys that sort above every real
    entry and increase with ``i``, so the padded layer stays totally
    monotone.  Ties go to the smaller predecessor.
    """
    _check_t(node_count, t)
    if method == "naive":
        return naive_t_link_path(weight_fn, node_count, t)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    row_minima = smawk_row_minima if method == "smawk" else dc_row_minima
    dp = {0: 0}
    parent: list[dict[int, int]] = [{}]
    for layer, rows, cols in _layers(node_count, t):

        def entry(r, c, rows=rows, cols=cols, dp=dp):
            i, j = cols[c], rows[r]
            if i < j:
                return (0, dp[i] + weight_fn(i, j))
            return (1, i - j)

        arg = row_minima(entry, len(rows), len(cols))
        par = {rows[r]: cols[c] for r, c in enumerate(arg)}
        dp = {j: dp[i] + weight_fn(i, j) for j, i in par.items()}
        parent.append(par)
    return _trace(parent, dp[node_count - 1], node_count, t)


def naive_t_link_path(weight_fn: Callable[[int, int], object], node_count: int, t: int) -> PathResult:
    """Reference layered DP scanning every edge; ``O(node_count^2 * t)``."""
    _check_t(node_count, t)
    dp = {0: 0}
    parent: list[dict[int, int]] = [{}]
    for layer, rows, cols in _layers(node_count, t):
        par, cur = {}, {}
        for j in rows:
            best = None
            for i in cols:
                if i >= j:
                    break
                val = dp[i] + weight_fn(i, j)
                if best is None or val < cur[j]:
                    best, cur[j] = i, val
            par[j] = best
        dp = cur
        parent.append(par)
    return _trace(parent, dp[node_count - 1], node_count, t)


def path_weight(weight_fn: Callable[[int, int], object], nodes: Sequence[int]):
    return sum(weight_fn(a, b) for a, b in zip(nodes, nodes[1:]))


def check_concave_monge(
    weight_fn: Callable[[int, int], object], node_count: int, tol: float = 0
) -> Check:
    """Exhaustively test ``w(i,j) + w(i+1,j+1) <= w(i,j+1) + w(i+1,j)``.

    Covers every ``0 <= i``, ``i + 1 < j``, ``j + 1 <= node_count - 1``; the
    witness is the first violating ``(i, j)``.  ``tol`` is for float weights.
    """
    if node_count < 4:
        raise ValueError("need at least 4 nodes")
    last = node_count - 1
    for i in range(0, last - 2):
        for j in range(i + 2, last):
            if weight_fn(i, j) + weight_fn(i + 1, j + 1) > weight_fn(i, j + 1) + weight_fn(i + 1, j) + tol:
                return Check(False, (i, j))
    return Check(True)
