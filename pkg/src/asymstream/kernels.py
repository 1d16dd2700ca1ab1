"""Compiled dynamic-programming inner loops.

Semi-global cells pack (distance, start) into one integer
`key = distance * base + start` with `base = len(y) + 2`, so the minimum key of
a cell is its lexicographically smallest (distance, start) pair. `start` is
the 1-based first position of the substring of y, and a cell in column j
describes y[start:j].
"""

from __future__ import annotations

import numpy as np
from numba import njit

BIG = np.int64(1) << np.int64(60)


@njit(cache=True)
def ed_full_kernel(a, b):
    n, m = len(a), len(b)
    if n < m:
        a, b = b, a
        n, m = m, n
    prev = np.arange(m + 1)
    cur = np.empty(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            v = prev[j - 1] + (0 if ai == b[j - 1] else 1)
            w = prev[j] + 1
            if w < v:
                v = w
            w = cur[j - 1] + 1
            if w < v:
                v = w
            cur[j] = v
        prev, cur = cur, prev
    return prev[m]


@njit(cache=True)
def lcs_kernel(a, b):
    n, m = len(a), len(b)
    prev = np.zeros(m + 1, dtype=np.int64)
    cur = np.zeros(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            elif prev[j] >= cur[j - 1]:
                cur[j] = prev[j]
            else:
                cur[j] = cur[j - 1]
        prev, cur = cur, prev
    return prev[m]


@njit(cache=True)
def _band_row(a, b, k, upto, prev, cur):
    """Fill band rows 0..upto of ED(a[:i], b[:j]); offset o = j - i + k.
    Leaves row upto-1 in prev and row upto in cur (prev untouched if upto == 0)."""
    w = 2 * k + 1
    m = len(b)
    for o in range(w):
        j = o - k
        cur[o] = j if 0 <= j <= m else BIG
    for i in range(1, upto + 1):
        for o in range(w):
            prev[o] = cur[o]
        ai = a[i - 1]
        for o in range(w):
            j = i + o - k
            if j < 0 or j > m:
                cur[o] = BIG
                continue
            if j == 0:
                cur[o] = i
                continue
            v = prev[o] + (0 if ai == b[j - 1] else 1)
            if o + 1 < w and prev[o + 1] + 1 < v:
                v = prev[o + 1] + 1
            if o > 0 and cur[o - 1] + 1 < v:
                v = cur[o - 1] + 1
            cur[o] = v


@njit(cache=True)
def banded_ed_kernel(a, b, k):
    """ED(a, b) if it is at most k, else -1. Band of width 2k+1."""
    n, m = len(a), len(b)
    if abs(n - m) > k:
        return -1
    w = 2 * k + 1
    prev = np.empty(w, dtype=np.int64)
    cur = np.empty(w, dtype=np.int64)
    for o in range(w):
        j = o - k
        cur[o] = j if 0 <= j <= m else BIG
    for i in range(1, n + 1):
        for o in range(w):
            prev[o] = cur[o]
        ai = a[i - 1]
        lo = BIG
        for o in range(w):
            j = i + o - k
            if j < 0 or j > m:
                cur[o] = BIG
                continue
            if j == 0:
                v = i
            else:
                v = prev[o] + (0 if ai == b[j - 1] else 1)
                if o + 1 < w and prev[o + 1] + 1 < v:
                    v = prev[o + 1] + 1
                if o > 0 and cur[o - 1] + 1 < v:
                    v = cur[o - 1] + 1
            cur[o] = v
            if v < lo:
                lo = v
        if lo > k:
            return -1
    v = cur[m - n + k]
    return v if v <= k else -1


@njit(cache=True)
def banded_neighbours(a, b, k, i, j):
    """(A[i-1][j-1], A[i-1][j], A[i][j-1]) for A = ED of prefixes, via one
    banded run up to row i. Cells outside the band read as BIG."""
    w = 2 * k + 1
    prev = np.empty(w, dtype=np.int64)
    cur = np.empty(w, dtype=np.int64)
    _band_row(a, b, k, i, prev, cur)
    o = j - i + k
    diag = prev[o] if 0 <= o < w else BIG
    up = prev[o + 1] if 0 <= o + 1 < w else BIG
    left = cur[o - 1] if 0 <= o - 1 < w else BIG
    return diag, up, left


@njit(cache=True)
def anchored_free_end(a, b, k):
    """min over j of ED(a, b[:j]) if at most k, as (distance, j) with the
    smallest such j; (-1, -1) when every prefix of b is farther than k."""
    n, m = len(a), len(b)
    w = 2 * k + 1
    prev = np.empty(w, dtype=np.int64)
    cur = np.empty(w, dtype=np.int64)
    for o in range(w):
        j = o - k
        cur[o] = j if 0 <= j <= m else BIG
    for i in range(1, n + 1):
        for o in range(w):
            prev[o] = cur[o]
        ai = a[i - 1]
        for o in range(w):
            j = i + o - k
            if j < 0 or j > m:
                cur[o] = BIG
                continue
            if j == 0:
                cur[o] = i
                continue
            v = prev[o] + (0 if ai == b[j - 1] else 1)
            if o + 1 < w and prev[o + 1] + 1 < v:
                v = prev[o + 1] + 1
            if o > 0 and cur[o - 1] + 1 < v:
                v = cur[o - 1] + 1
            cur[o] = v
    best, best_j = BIG, -1
    for o in range(w):
        j = n + o - k
        if 0 <= j <= m and cur[o] < best:
            best, best_j = cur[o], j
    if best > k:
        return -1, -1
    return best, best_j


@njit(cache=True)
def sg_column_scan(xb, y, base, limit):
    """Semi-global DP of every prefix of xb against substrings of y, column by
    column (state: one column of len(xb)+1 keys).

    Returns per-row best key and its smallest end column, plus the cells of the
    last row whose key is below `limit`.
    """
    rows, n = len(xb), len(y)
    col = np.empty(rows + 1, dtype=np.int64)
    best = np.empty(rows + 1, dtype=np.int64)
    best_q = np.zeros(rows + 1, dtype=np.int64)
    for i in range(rows + 1):
        col[i] = i * base + 1
        # the empty substring only wins when nothing else exists (row 0 or empty y)
        best[i] = col[i] if (i == 0 or n == 0) else BIG
    live_c = np.empty(n + 1, dtype=np.int64)
    live_k = np.empty(n + 1, dtype=np.int64)
    cnt = 0
    if col[rows] < limit:
        live_c[0] = 0
        live_k[0] = col[rows]
        cnt = 1
    for j in range(1, n + 1):
        yj = y[j - 1]
        diag = col[0]
        col[0] = j + 1
        for i in range(1, rows + 1):
            v = diag + (0 if xb[i - 1] == yj else base)
            h = col[i] + base
            if h < v:
                v = h
            h = col[i - 1] + base
            if h < v:
                v = h
            diag = col[i]
            col[i] = v
            if v < best[i]:
                best[i] = v
                best_q[i] = j
        if col[rows] < limit:
            live_c[cnt] = j
            live_k[cnt] = col[rows]
            cnt += 1
    return best, best_q, live_c[:cnt].copy(), live_k[:cnt].copy()


@njit(cache=True)
def sg_advance(cols, keys, sym, y, base, limit):
    """Next semi-global row from the sparse current row (cells below `limit`,
    sorted by column); the new row is returned in the same sparse form."""
    cnt, n = len(cols), len(y)
    cap = 2 * cnt + 16
    oc = np.empty(cap, dtype=np.int64)
    ok = np.empty(cap, dtype=np.int64)
    m = 0
    if cnt == 0:
        return oc[:0], ok[:0]
    p = 0
    carry = BIG
    j = cols[0]
    while j <= n:
        while p < cnt and cols[p] < j - 1:
            p += 1
        v = carry
        t = p
        if p < cnt and cols[p] == j - 1:
            d = keys[p] + (0 if y[j - 1] == sym else base)
            if d < v:
                v = d
            t = p + 1
        if t < cnt and cols[t] == j:
            d = keys[t] + base
            if d < v:
                v = d
        if v < limit:
            if m == cap:
                cap *= 2
                nc = np.empty(cap, dtype=np.int64)
                nk = np.empty(cap, dtype=np.int64)
                nc[:m] = oc[:m]
                nk[:m] = ok[:m]
                oc, ok = nc, nk
            oc[m] = j
            ok[m] = v
            m += 1
            carry = v + base
            j += 1
        else:
            carry = BIG
            if t < cnt:
                j = j + 1 if cols[t] == j else cols[t]
            else:
                j = n + 1
    return oc[:m].copy(), ok[:m].copy()


@njit(cache=True)
def sg_full(xb, y, base):
    """Best (key, end column) of the last row of the unrestricted semi-global DP."""
    best, best_q, _, _ = sg_column_scan(xb, y, base, np.int64(0))
    return best[len(xb)], best_q[len(xb)]


@njit(cache=True)
def probe_advance(ptr, expected, sym):
    """Advance every probe whose next expected symbol is `sym`."""
    for c in range(ptr.shape[0]):
        if expected[c, ptr[c]] == sym:
            ptr[c] += 1
