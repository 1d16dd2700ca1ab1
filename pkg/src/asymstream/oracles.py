"""Exact references: full and banded edit distance, script recovery and
splitting, LCS, LIS/LNS/LNST and the closest-substring search."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .model import EditOp, as_array, as_symbols


def ed_full(x, y) -> int:
    return int(kernels.ed_full_kernel(as_array(x), as_array(y)))


def ed_bounded(x_access: Iterable, y, k: int) -> int | None:
    """ED(x, y) when it is at most k, else None.

    x is consumed left to right once; the state is one band of 2k+1 cells.
    """
    yy = as_symbols(y)
    m = len(yy)
    width = 2 * k + 1
    inf = k + 1
    row = [o - k if 0 <= o - k <= m else inf for o in range(width)]
    i = 0
    for sym in x_access if not isinstance(x_access, str) else as_symbols(x_access):
        i += 1
        prev = row
        row = [inf] * width
        low = inf
        for o in range(width):
            j = i + o - k
            if j < 0 or j > m:
                continue
            if j == 0:
                v = i
            else:
                v = prev[o] + (sym != yy[j - 1])
                if o + 1 < width:
                    v = min(v, prev[o + 1] + 1)
                if o > 0:
                    v = min(v, row[o - 1] + 1)
            row[o] = min(v, inf)
            low = min(low, row[o])
        if low > k:
            return None
    o = m - i + k
    if not 0 <= o < width or row[o] > k:
        return None
    return row[o]


def _materialize(x_access) -> np.ndarray:
    if callable(x_access):
        x_access = list(x_access())
    return as_array(x_access)


def recover_script(x_access, y_sub, k: int) -> list[EditOp]:
    """A minimum script turning y_sub into x, found by walking back from the
    end and re-running the banded DP once per edit.

    `x_access` is a sequence or a zero-argument callable returning a fresh
    iterator (a replay). Requires ED(x, y_sub) < k.
    """
    x = _materialize(x_access)
    src = as_array(y_sub)
    return _walk_back(src, x, k)


def _walk_back(src: np.ndarray, tgt: np.ndarray, k: int) -> list[EditOp]:
    band = max(k - 1, 0)
    total = kernels.banded_ed_kernel(src, tgt, band)
    if total < 0:
        raise ValueError(f"edit distance is not below {k}")
    ops: list[EditOp] = []
    i, j, cur = len(src), len(tgt), int(total)
    while i > 0 or j > 0:
        if i > 0 and j > 0 and src[i - 1] == tgt[j - 1]:
            i -= 1
            j -= 1
            continue
        if i == 0:
            ops.append(EditOp("insert", 1, int(tgt[j - 1])))
            j -= 1
        elif j == 0:
            ops.append(EditOp("delete", i))
            i -= 1
        else:
            diag, up, left = kernels.banded_neighbours(src, tgt, band, i, j)
            if diag == cur - 1:
                ops.append(EditOp("substitute", i, int(tgt[j - 1])))
                i -= 1
                j -= 1
            elif up == cur - 1:
                ops.append(EditOp("delete", i))
                i -= 1
            else:
                assert left == cur - 1
                ops.append(EditOp("insert", i + 1, int(tgt[j - 1])))
                j -= 1
        cur -= 1
    assert cur == 0
    ops.reverse()
    return ops


@dataclass(frozen=True)
class Part:
    x_range: tuple[int, int]  # 1-based inclusive, (p, p-1) when empty
    y_range: tuple[int, int]
    ops: int


def split_by_script(x, y, ops: Sequence[EditOp], t: int) -> list[Part]:
    """Cut x and y into t aligned parts, each carrying at most ceil(d/t) of the
    script's d edits; cuts sit just before the first edit of the next group."""
    n, m = len(as_symbols(x)), len(as_symbols(y))
    if t < 1:
        raise ValueError("t must be positive")
    ordered = sorted(ops, key=lambda op: (op.position, op.kind != "insert"))
    for a, b in zip(ordered, ordered[1:]):
        if a.kind != "insert" and b.kind != "insert" and a.position == b.position:
            raise ValueError("malformed script: two edits on one position")
    d = len(ordered)
    size = -(-d // t) if d else 1
    groups = [ordered[g:g + size] for g in range(0, d, size)] or [[]]
    parts: list[Part] = []
    xs, ys = 1, 1
    net = 0  # target length minus source length over everything before the cut
    for gi, group in enumerate(groups):
        for op in group:
            net += {"insert": 1, "delete": -1, "substitute": 0}[op.kind]
        if gi + 1 < len(groups):
            xe = groups[gi + 1][0].position - 1
        else:
            xe = n
        ye = xe + net
        parts.append(Part((xs, xe), (ys, ye), len(group)))
        xs, ys = xe + 1, ye + 1
    if ys != m + 1:
        raise ValueError("script does not turn x into y")
    while len(parts) < t:
        parts.append(Part((n + 1, n), (m + 1, m), 0))
    return parts


def lcs_full(x, y) -> int:
    return int(kernels.lcs_kernel(as_array(x), as_array(y)))


def lis_exact(x) -> int:
    """Longest strictly increasing subsequence."""
    tails: list[int] = []
    for v in as_symbols(x):
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def lns_exact(x, r: int | None = None) -> int:
    """Longest non-decreasing subsequence with one counter per symbol."""
    xs = as_symbols(x)
    size = max([r or 0] + [v + 1 for v in xs])
    best = [0] * size
    for v in xs:
        best[v] = max(best[: v + 1]) + 1
    return max(best, default=0)


def lnst_exact(x, r: int | None, t: int) -> int:
    """Longest non-decreasing subsequence using each symbol at most t times.

    State (symbol j, copies c) holds the best length of a subsequence whose
    last c symbols are j.
    """
    xs = as_symbols(x)
    size = max([r or 0] + [v + 1 for v in xs])
    best = [[0] * (t + 1) for _ in range(size)]
    for v in xs:
        below = max((max(best[j]) for j in range(v)), default=0)
        row = best[v]
        for c in range(t, 1, -1):
            if row[c - 1]:
                row[c] = max(row[c], row[c - 1] + 1)
        row[1] = max(row[1], below + 1)
    return max((max(row) for row in best), default=0)


def best_substring_ed(x, y) -> tuple[tuple[int, int], int]:
    """Closest substring of y to x by exhaustive search.

    Ties go to the smallest p, then the smallest q; the empty substring is
    only returned when nothing non-empty is as close.
    """
    xs, ys = as_array(x), as_array(y)
    n = len(ys)
    best = None
    for p in range(1, n + 2):
        for q in range(p - 1, n + 1):
            d = int(kernels.ed_full_kernel(xs, ys[p - 1:q]))
            key = (d, q < p, p, q)
            if best is None or key < best:
                best = key
    return (best[2], best[3]), best[0]


def brute_longest_prefix(x, y, u: int) -> int:
    """Largest l such that some substring of y is within u of x[1:l]."""
    xs = as_symbols(x)
    for l in range(len(xs), -1, -1):
        if best_substring_ed(xs[:l], y)[1] <= u:
            return l
    return 0
