"""Compiled bitmask kernels: Hamiltonian subset DP and exhaustive cut scans."""

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(x):
    x = np.uint64(x)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _low_index(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def path_endpoints(adj, n):
    """dp[S] = mask of v such that G[S] has a Hamiltonian path low(S) -> v."""
    size = 1 << n
    dp = np.zeros(size, dtype=np.int64)
    for s in range(1, size):
        lo = _low_index(s)
        if s == (1 << lo):
            dp[s] = s
            continue
        rest = s ^ (1 << lo)
        out = 0
        r = rest
        while r:
            v = _low_index(r)
            r &= r - 1
            if dp[s ^ (1 << v)] & adj[v]:
                out |= 1 << v
        dp[s] = out
    return dp


@njit(cache=True)
def hamiltonian_flags(dp, adj, n):
    """ham[S] true iff G[S] carries a cycle in the 0/1/2-vertex convention."""
    size = 1 << n
    ham = np.zeros(size, dtype=np.bool_)
    ham[0] = True
    for s in range(1, size):
        lo = _low_index(s)
        if s == (1 << lo):
            ham[s] = True
        elif dp[s] & adj[lo]:
            ham[s] = True
    return ham


@njit(cache=True)
def first_split(ham_red, ham_blue, n):
    """Least mask S with ham_red[S] and ham_blue[complement]; -1 if none."""
    full = (1 << n) - 1
    for s in range(1 << n):
        if ham_red[s] and ham_blue[full ^ s]:
            return s
    return -1


@njit(cache=True)
def min_ratio_cut(adj, m):
    """Exhaustive minimum of e(X,Y)/(|X||Y|) over cuts with vertex 0 in X.

    Gray-code walk over the membership of vertices 1..m-1. Ties go to the
    numerically smallest X mask. Returns (x_mask, crossing, |X|*|Y|).
    """
    full = (1 << m) - 1
    x = full  # everything starts in X; gray bits mark vertices moved to Y
    cross = 0
    best_c = -1
    best_p = 1
    best_x = -1
    total = np.int64(1) << (m - 1)
    for k in range(1, total):
        bit = _low_index(k) + 1
        vb = np.int64(1) << bit
        if x & vb:
            # move bit from X to Y
            cross += _popcount(adj[bit] & x & ~vb) - _popcount(adj[bit] & (full ^ x))
            x ^= vb
        else:
            cross += _popcount(adj[bit] & (full ^ x) & ~vb) - _popcount(adj[bit] & x)
            x ^= vb
        sx = _popcount(x)
        prod = sx * (m - sx)
        if prod == 0:
            continue
        if best_c < 0:
            better = True
        else:
            lhs = cross * best_p
            rhs = best_c * prod
            better = lhs < rhs or (lhs == rhs and x < best_x)
        if better:
            best_c = cross
            best_p = prod
            best_x = x
    return best_x, best_c, best_p


@njit(cache=True)
def min_max_inside(adj, m):
    """Exhaustive minimum of max(e(S1), e(S2)) with vertex 0 in S1.

    Ties go to the smaller total inside count, then the smallest S1 mask.
    Returns (s1_mask, e1, e2).
    """
    full = (1 << m) - 1
    s1 = full
    e1 = 0
    for v in range(m):
        e1 += _popcount(adj[v] & full)
    e1 //= 2
    e2 = 0
    best = (max(e1, e2), e1 + e2, s1)
    best_e1 = e1
    best_e2 = e2
    total = np.int64(1) << (m - 1)
    for k in range(1, total):
        bit = _low_index(k) + 1
        vb = np.int64(1) << bit
        if s1 & vb:
            e1 -= _popcount(adj[bit] & s1 & ~vb)
            e2 += _popcount(adj[bit] & (full ^ s1))
        else:
            e2 -= _popcount(adj[bit] & (full ^ s1) & ~vb)
            e1 += _popcount(adj[bit] & s1)
        s1 ^= vb
        cand = (max(e1, e2), e1 + e2, s1)
        if cand < best:
            best = cand
            best_e1 = e1
            best_e2 = e2
    return best[2], best_e1, best_e2


@njit(cache=True)
def count_paths(adj, n, x, y, i):
    """Number of x..y paths with exactly i internal vertices (1 <= i <= 4)."""
    avail = ((1 << n) - 1) & ~(1 << x) & ~(1 << y)
    ay = adj[y]
    if i == 1:
        return _popcount(adj[x] & ay & avail)
    total = 0
    m1 = adj[x] & avail
    while m1:
        a = _low_index(m1)
        m1 &= m1 - 1
        rest1 = avail & ~(1 << a)
        if i == 2:
            total += _popcount(adj[a] & ay & rest1)
            continue
        m2 = adj[a] & rest1
        while m2:
            b = _low_index(m2)
            m2 &= m2 - 1
            rest2 = rest1 & ~(1 << b)
            if i == 3:
                total += _popcount(adj[b] & ay & rest2)
                continue
            m3 = adj[b] & rest2
            while m3:
                c = _low_index(m3)
                m3 &= m3 - 1
                total += _popcount(adj[c] & ay & rest2 & ~(1 << c))
    return total


@njit(cache=True)
def count_odd_cycles_through(adj, n, v, length):
    """Cycles of length 3 or 5 through v, each counted once."""
    full = (1 << n) - 1
    avail = full & ~(1 << v)
    total = 0
    m1 = adj[v] & avail
    while m1:
        a = _low_index(m1)
        m1 &= m1 - 1
        rest1 = avail & ~(1 << a)
        if length == 3:
            total += _popcount(adj[a] & adj[v] & rest1)
            continue
        m2 = adj[a] & rest1
        while m2:
            b = _low_index(m2)
            m2 &= m2 - 1
            rest2 = rest1 & ~(1 << b)
            m3 = adj[b] & rest2
            while m3:
                c = _low_index(m3)
                m3 &= m3 - 1
                total += _popcount(adj[c] & adj[v] & rest2 & ~(1 << c))
    return total // 2
