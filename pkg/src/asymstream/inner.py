"""Offline edit-distance estimators behind one interface.

Both backends are exact, which satisfies any (1+eps) contract; `epsilon` is
the factor the guarantee formulas assume for whatever backend is plugged in.
Estimator work is charged to the estimator's own meter, apart from the
streaming algorithm that calls it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .model import SpaceMeter, as_array

BACKENDS = ("exact", "banded")


@dataclass
class InnerEstimator:
    epsilon: float = 0.1
    backend: str = "banded"
    meter: SpaceMeter = field(default_factory=SpaceMeter)
    calls: int = 0

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}; expected one of {BACKENDS}")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")

    def estimate(self, a, b) -> int:
        """d with ED(a, b) <= d <= (1+epsilon) ED(a, b)."""
        a, b = as_array(a), as_array(b)
        self.calls += 1
        if self.backend == "exact":
            words = min(len(a), len(b)) + 1
            self.meter.charge(2 * words)
            d = int(kernels.ed_full_kernel(a, b))
            self.meter.release(2 * words)
            return d
        k = 1
        while True:
            words = 2 * (2 * k + 1)
            self.meter.charge(words)
            d = int(kernels.banded_ed_kernel(a, b, k))
            self.meter.release(words)
            if d >= 0:
                return d
            k *= 2

    def best_substring(self, y, target) -> tuple[int, int, int]:
        """(d, p, q) minimising the estimate between y[p:q] and target.

        Ties: smallest p, then smallest q, with the empty substring last.
        """
        ys, tg = as_array(y), as_array(target)
        base = len(ys) + 2
        self.calls += 1
        if self.backend == "exact":
            self.meter.charge(len(tg) + 1)
            key, q = kernels.sg_full(tg, ys, base)
            self.meter.release(len(tg) + 1)
            return int(key // base), int(key % base), int(q)
        k = 1
        while True:
            found = cutoff_substring_search(tg, ys, k, self.meter)
            if found is not None:
                return found
            k *= 2


def seed_rows(k: int) -> int:
    """Rows handled by the column scan before switching to sparse rows."""
    return 8 * k + 8


def cutoff_substring_search(target: np.ndarray, ys: np.ndarray, k: int, meter: SpaceMeter):
    """Closest substring of ys to target if within k, else None.

    The first rows go through a column scan (state linear in those rows);
    after that only cells within k are kept, row by row.
    """
    base = len(ys) + 2
    limit = (k + 1) * base
    rows = min(len(target), seed_rows(k))
    meter.charge(rows + 1)
    best, best_q, cols, keys = kernels.sg_column_scan(target[:rows], ys, base, limit)
    meter.release(rows + 1)
    if best[rows] >= limit:
        return None
    live = 2 * len(cols)
    meter.charge(live)
    for i in range(rows, len(target)):
        cols, keys = kernels.sg_advance(cols, keys, target[i], ys, base, limit)
        meter.resize(live, 2 * len(cols))
        live = 2 * len(cols)
        if len(cols) == 0:
            meter.release(live)
            return None
    meter.release(live)
    if len(target) > rows:
        key, q = row_best(cols, keys, len(target), len(ys))
    else:
        key, q = int(best[rows]), int(best_q[rows])
    return key // base, key % base, q


def row_best(cols: np.ndarray, keys: np.ndarray, row: int, n: int) -> tuple[int, int]:
    """Smallest key in a sparse row and its first column; column 0 (the empty
    substring) is skipped unless it is the only option."""
    if row >= 1 and n >= 1 and len(cols) and cols[0] == 0:
        cols, keys = cols[1:], keys[1:]
    i = int(np.argmin(keys))
    return int(keys[i]), int(cols[i])
