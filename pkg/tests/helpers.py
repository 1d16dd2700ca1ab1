"""Pure-Python references and shared corpora for the test-suite."""

from __future__ import annotations

import functools
import random

from asymstream.generators import planted_pair
from asymstream.oracles import ed_full


def ed_reference(a, b) -> int:
    """Textbook two-row edit distance, kept independent of the compiled kernels."""
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        prev = cur
    return prev[-1]


def lcs_reference(a, b) -> int:
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0]
        for j, cb in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if ca == cb else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def prefix_substring_distances(x, y) -> list[int]:
    """For every prefix length l, min over substrings of y of ED(x[1:l], y[p:q])."""
    row = [0] * (len(y) + 1)  # free start anywhere in y
    out = [0]
    for i, cx in enumerate(x, start=1):
        cur = [i] + [0] * len(y)
        for j, cy in enumerate(y, start=1):
            cur[j] = min(row[j] + 1, cur[j - 1] + 1, row[j - 1] + (cx != cy))
        row = cur
        out.append(min(row))
    return out


def longest_prefix(dists: list[int], u: int) -> int:
    best = 0
    for l, d in enumerate(dists):
        if d <= u:
            best = l
        else:
            break
    return best


@functools.lru_cache(maxsize=None)
def planted_suite(count: int = 200, seed: int = 2024) -> tuple:
    """Planted-edit pairs with n in 500..2000 and 1 <= ED <= 64 (ED measured)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(500, 2000)
        edits = rng.randint(1, 64)
        r = rng.choice((2, 4, 26))
        x, y = planted_pair(n, edits, r, rng)
        d = ed_full(x, y)
        if 1 <= d <= 64:
            out.append((tuple(x), tuple(y), d))
    return tuple(out)
