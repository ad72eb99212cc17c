"""Compiled inner loops for the edge-weight oracle and the layered t-link DP.

Every kernel is specialised by numba on the score dtype (int64 or float64), so
integer profiles stay exact end to end.
"""

import numpy as np
from numba import njit

SMAWK, DC, NAIVE = 0, 1, 2


@njit(cache=True, inline="always")
def _takes_j(x, i, j, l):
    # voter contributes r(v, c_j) to f(i, j)
    return x[i] > x[j] or (x[i] == x[j] and i <= l)


@njit(cache=True)
def thresholds(ext, lv):
    """Per-voter sweeps for p[v, j] and q[v, i].

    ``p[v, j]`` is the largest ``i < j`` with ``_takes_j`` (-1 if none); the
    qualifying ``i`` form the prefix ``0..p``.  ``q[v, i]`` is the smallest
    ``j > i`` where ``_takes_j`` fails (``N`` if none); for ``j >= q`` the
    voter contributes ``r(v, c_i)`` instead.
    """
    n, N = ext.shape
    P = np.empty((n, N), np.int64)
    Q = np.empty((n, N), np.int64)
    for v in range(n):
        x = ext[v]
        l = lv[v]
        p = -1
        for j in range(N):
            if p >= j:
                p = j - 1
            while p >= 0 and not _takes_j(x, p, j, l):
                p -= 1
            while p + 1 < j and _takes_j(x, p + 1, j, l):
                p += 1
            P[v, j] = p
        q = N
        for i in range(N - 1, -1, -1):
            if q <= i:
                q = i + 1
            while q - 1 > i and not _takes_j(x, i, q - 1, l):
                q -= 1
            while q < N and _takes_j(x, i, q, l):
                q += 1
            Q[v, i] = q
    return P, Q


@njit(cache=True, inline="always")
def _edge(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single):
    lo = fptr[j]
    hi = fptr[j + 1]
    end = hi
    while lo < hi:
        mid = (lo + hi) >> 1
        if fkey[mid] < i:
            lo = mid + 1
        else:
            hi = mid
    f = fsum[lo] if lo < end else fsum.dtype.type(0)
    start = bptr[i]
    lo = start
    hi = bptr[i + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        if bkey[mid] <= j:
            lo = mid + 1
        else:
            hi = mid
    g = bsum[lo - 1] if lo > start else bsum.dtype.type(0)
    return f + g - single[i]


@njit(cache=True)
def edge_weight(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single):
    return _edge(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single)


@njit(cache=True)
def edge_weight_counted(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single):
    """Same as ``edge_weight`` but also returns the number of key comparisons."""
    count = 0
    lo = fptr[j]
    hi = fptr[j + 1]
    end = hi
    while lo < hi:
        mid = (lo + hi) >> 1
        count += 1
        if fkey[mid] < i:
            lo = mid + 1
        else:
            hi = mid
    f = fsum[lo] if lo < end else fsum.dtype.type(0)
    start = bptr[i]
    lo = start
    hi = bptr[i + 1]
    while lo < hi:
        mid = (lo + hi) >> 1
        count += 1
        if bkey[mid] <= j:
            lo = mid + 1
        else:
            hi = mid
    g = bsum[lo - 1] if lo > start else bsum.dtype.type(0)
    return f + g - single[i], count


@njit(cache=True)
def edge_weights(I, J, fptr, fkey, fsum, bptr, bkey, bsum, single):
    out = np.empty(I.shape[0], fsum.dtype)
    for k in range(I.shape[0]):
        out[k] = _edge(I[k], J[k], fptr, fkey, fsum, bptr, bkey, bsum, single)
    return out


@njit(cache=True, inline="always")
def _less(j, a, b, dp, fptr, fkey, fsum, bptr, bkey, bsum, single):
    # entry (j, i) = dp[i] + w(i, j) for i < j; cells with i >= j rank above
    # every real entry and increase with i, which keeps the layer matrix
    # totally monotone
    fa = a < j
    fb = b < j
    if fa and fb:
        va = dp[a] + _edge(a, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
        vb = dp[b] + _edge(b, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
        return va < vb
    if fa:
        return True
    if fb:
        return False
    return a < b


@njit(cache=True)
def _layer_naive(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single):
    for j in range(rlo, rhi + 1):
        best = clo
        bv = dp[clo] + _edge(clo, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
        for i in range(clo + 1, min(chi, j - 1) + 1):
            v = dp[i] + _edge(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
            if v < bv:
                bv = v
                best = i
        arg[j] = best


@njit(cache=True)
def _layer_dc(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single):
    stack = np.empty((256, 4), np.int64)
    sp = 0
    stack[0, 0] = rlo
    stack[0, 1] = rhi
    stack[0, 2] = clo
    stack[0, 3] = chi
    sp = 1
    while sp > 0:
        sp -= 1
        jlo = stack[sp, 0]
        jhi = stack[sp, 1]
        ilo = stack[sp, 2]
        ihi = stack[sp, 3]
        if jlo > jhi:
            continue
        j = (jlo + jhi) >> 1
        best = ilo
        bv = dp[ilo] + _edge(ilo, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
        for i in range(ilo + 1, min(ihi, j - 1) + 1):
            v = dp[i] + _edge(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
            if v < bv:
                bv = v
                best = i
        arg[j] = best
        stack[sp, 0] = jlo
        stack[sp, 1] = j - 1
        stack[sp, 2] = ilo
        stack[sp, 3] = best
        stack[sp + 1, 0] = j + 1
        stack[sp + 1, 1] = jhi
        stack[sp + 1, 2] = best
        stack[sp + 1, 3] = ihi
        sp += 2


@njit(cache=True)
def _layer_smawk(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single):
    nr = rhi - rlo + 1
    nc = chi - clo + 1
    cap = 2 * nr + 70
    rbuf = np.empty(cap, np.int64)
    cbuf = np.empty(cap, np.int64)
    roff = np.zeros(70, np.int64)
    rlen = np.zeros(70, np.int64)
    coff = np.zeros(70, np.int64)
    clen = np.zeros(70, np.int64)
    for k in range(nr):
        rbuf[k] = rlo + k
    rlen[0] = nr
    level = 0
    cpos = 0
    # descend: reduce columns, recurse on odd rows
    while True:
        r0 = roff[level]
        nrows = rlen[level]
        coff[level] = cpos
        top = -1
        if level == 0:
            ncols = nc
        else:
            ncols = clen[level - 1]
        for t in range(ncols):
            if level == 0:
                c = clo + t
            else:
                c = cbuf[coff[level - 1] + t]
            while top >= 0 and _less(
                rbuf[r0 + top], c, cbuf[cpos + top], dp,
                fptr, fkey, fsum, bptr, bkey, bsum, single,
            ):
                top -= 1
            if top + 1 < nrows:
                top += 1
                cbuf[cpos + top] = c
        clen[level] = top + 1
        cpos += top + 1
        nodd = nrows // 2
        if nodd == 0:
            break
        roff[level + 1] = r0 + nrows
        for k in range(nodd):
            rbuf[r0 + nrows + k] = rbuf[r0 + 2 * k + 1]
        rlen[level + 1] = nodd
        level += 1
    # ascend: fill even rows between the answers of their odd neighbours
    for lev in range(level, -1, -1):
        r0 = roff[lev]
        nrows = rlen[lev]
        c0 = coff[lev]
        nred = clen[lev]
        k = 0
        for idx in range(0, nrows, 2):
            row = rbuf[r0 + idx]
            if idx + 1 < nrows:
                end = arg[rbuf[r0 + idx + 1]]
            else:
                end = cbuf[c0 + nred - 1]
            best = cbuf[c0 + k]
            while cbuf[c0 + k] != end:
                k += 1
                c = cbuf[c0 + k]
                if _less(row, c, best, dp, fptr, fkey, fsum, bptr, bkey, bsum, single):
                    best = c
            arg[row] = best


@njit(cache=True)
def t_link_path(method, N, t, fptr, fkey, fsum, bptr, bkey, bsum, single):
    """Minimum-weight path 0 -> N-1 with exactly ``t`` edges.

    Returns ``(weight, nodes)``; argmin ties go to the smaller predecessor.
    """
    parent = np.zeros((t + 1, N), np.int64)
    dp = np.zeros(N, fsum.dtype)
    cur = np.zeros(N, fsum.dtype)
    arg = np.zeros(N, np.int64)
    for l in range(1, t + 1):
        if l == t:
            rlo = N - 1
        else:
            rlo = l
        rhi = N - 1 - t + l
        if l == 1:
            clo = 0
            chi = 0
        else:
            clo = l - 1
            chi = N - 2 - t + l
        if method == SMAWK:
            _layer_smawk(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single)
        elif method == DC:
            _layer_dc(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single)
        else:
            _layer_naive(rlo, rhi, clo, chi, dp, arg, fptr, fkey, fsum, bptr, bkey, bsum, single)
        for j in range(rlo, rhi + 1):
            i = arg[j]
            parent[l, j] = i
            cur[j] = dp[i] + _edge(i, j, fptr, fkey, fsum, bptr, bkey, bsum, single)
        for j in range(rlo, rhi + 1):
            dp[j] = cur[j]
    nodes = np.zeros(t + 1, np.int64)
    node = N - 1
    for l in range(t, 0, -1):
        nodes[l] = node
        node = parent[l, node]
    nodes[0] = node
    return dp[N - 1], nodes
