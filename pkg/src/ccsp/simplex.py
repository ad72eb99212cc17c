"""Exact bounded-variable primal simplex with Bland's rule.

Solves ``max c.x  s.t.  A x = b,  0 <= x <= u`` (``u[j] = None`` means no
upper bound) from a caller-supplied feasible basis.  Arithmetic is exact:
gmpy2's ``mpq`` when available, otherwise :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import InvariantError

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction


class InfeasibleStart(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass(frozen=True)
class LpSolution:
    values: tuple[Fraction, ...]
    objective: Fraction
    basis: tuple[int, ...]
    pivots: int


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def maximize(c, A, b, upper, basis, at_upper=(), max_pivots=100_000) -> LpSolution:
    """Optimise from the basis ``basis`` (one variable per row).

    Nonbasic variables sit at 0 unless listed in ``at_upper``.  Entering
    variable: smallest index with an improving reduced cost; leaving: smallest
    index among ratio-test ties (the entering variable's own bound flip
    included).  Returns an optimal basic solution.
    """
    rows, nvars = len(A), len(c)
    T = [[Q(x) for x in row] for row in A]
    rhs = [Q(x) for x in b]
    cost = [Q(x) for x in c]
    ub = [None if u is None else Q(u) for u in upper]
    basis = list(basis)
    if len(basis) != rows:
        raise ValueError("need one basic variable per row")
    at_up = set(at_upper)

    for r, var in enumerate(basis):
        piv = T[r][var]
        if piv == 0:
            raise InfeasibleStart("starting basis is singular")
        if piv != 1:
            T[r] = [x / piv for x in T[r]]
            rhs[r] /= piv
        for s in range(rows):
            if s != r and T[s][var] != 0:
                f = T[s][var]
                T[s] = [x - f * y for x, y in zip(T[s], T[r])]
                rhs[s] -= f * rhs[r]

    x = [Q(0)] * nvars
    for j in at_up:
        x[j] = ub[j]
    for r, var in enumerate(basis):
        x[var] = rhs[r] - sum((T[r][j] * ub[j] for j in at_up), Q(0))
        if x[var] < 0 or (ub[var] is not None and x[var] > ub[var]):
            raise InfeasibleStart(f"basic variable {var} starts at {x[var]}")
    d = list(cost)
    for r, var in enumerate(basis):
        if cost[var] != 0:
            cv = cost[var]
            d = [dj - cv * t for dj, t in zip(d, T[r])]

    in_basis = set(basis)
    pivots = 0
    while True:
        enter = None
        for j in range(nvars):
            if j in in_basis:
                continue
            if (j in at_up and d[j] < 0) or (j not in at_up and d[j] > 0):
                enter = j
                break
        if enter is None:
            break
        pivots += 1
        if pivots > max_pivots:
            raise InvariantError("simplex exceeded its pivot budget")
        direction = -1 if enter in at_up else 1
        theta = ub[enter]
        leave_row, leave_key, leave_to_upper = None, enter, None
        for r in range(rows):
            a = T[r][enter] * direction
            if a == 0:
                continue
            var = basis[r]
            if a > 0:
                lim, to_upper = x[var] / a, False
            elif ub[var] is None:
                continue
            else:
                lim, to_upper = (ub[var] - x[var]) / (-a), True
            if theta is None or lim < theta or (lim == theta and var < leave_key):
                theta, leave_row, leave_key, leave_to_upper = lim, r, var, to_upper
        if theta is None:
            raise Unbounded(f"variable {enter} can grow without bound")
        step = theta * direction
        if step != 0:
            x[enter] += step
            for r in range(rows):
                if T[r][enter] != 0:
                    x[basis[r]] -= T[r][enter] * step
        if leave_row is None:
            if enter in at_up:
                at_up.discard(enter)
                x[enter] = Q(0)
            else:
                at_up.add(enter)
                x[enter] = ub[enter]
            continue
        out = basis[leave_row]
        x[out] = ub[out] if leave_to_upper else Q(0)
        if leave_to_upper:
            at_up.add(out)
        at_up.discard(enter)
        piv = T[leave_row][enter]
        prow = [v / piv for v in T[leave_row]]
        T[leave_row] = prow
        for s in range(rows):
            if s != leave_row and T[s][enter] != 0:
                f = T[s][enter]
                T[s] = [u - f * v for u, v in zip(T[s], prow)]
        if d[enter] != 0:
            f = d[enter]
            d = [u - f * v for u, v in zip(d, prow)]
        basis[leave_row] = enter
        in_basis.discard(out)
        in_basis.add(enter)

    objective = sum((cj * xj for cj, xj in zip(cost, x) if cj != 0), Q(0))
    return LpSolution(tuple(_frac(v) for v in x), _frac(objective), tuple(basis), pivots)
