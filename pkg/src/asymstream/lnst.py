"""One-pass approximation of LNST(x, t), the longest non-decreasing
subsequence of x that repeats each symbol at most t times.

Every count vector d on a coarse grid is probed as the pattern
1^d1 2^d2 ... r^dr; the best probe that survives the pass is the answer,
unless the plain LNS already fits under the threshold.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .model import OnlineStream, RunReport, SpaceMeter

BUDGET_ENV = "ASYMSTREAM_SPACE_BUDGET"


class SizingError(RuntimeError):
    """The requested run needs more probes than the configured budget."""


@dataclass(frozen=True)
class CountGrid:
    values: tuple[int, ...]
    r: int
    t: int
    epsilon: float


def grid(r: int, t: int, epsilon) -> CountGrid:
    """Floored multiples of (epsilon/r)*t up to t, plus t itself."""
    if r < 1 or t < 1 or epsilon <= 0:
        raise ValueError("need r >= 1, t >= 1 and epsilon > 0")
    gap = Fraction(epsilon).limit_denominator(10**6) * t / r
    if gap <= 1:
        return CountGrid(tuple(range(t + 1)), r, t, epsilon)
    points = {math.floor(k * gap) for k in range(int(t / gap) + 1)}
    points.add(t)
    return CountGrid(tuple(sorted(points)), r, t, epsilon)


def probe_table(g: CountGrid) -> tuple[np.ndarray, np.ndarray]:
    """Count vectors and, per probe, the symbol expected at each pointer
    (0 once the pattern is complete)."""
    vecs = np.array(list(itertools.product(g.values, repeat=g.r)), dtype=np.int64).reshape(-1, g.r)
    width = g.r * g.t + 1
    expected = np.zeros((len(vecs), width), dtype=np.int64)
    for c, d in enumerate(vecs):
        pattern = np.repeat(np.arange(1, g.r + 1), d)
        expected[c, :len(pattern)] = pattern
    return vecs, expected


def space_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


@dataclass
class LnstOutcome:
    value: int
    lns: int
    best_probe: tuple[int, ...] | None
    probes: int
    accepted: int


def approx_lnst(stream: OnlineStream, r: int, t: int, epsilon, budget: int | None = None) -> tuple[int, RunReport]:
    out, report = run_lnst(stream, r, t, epsilon, budget)
    return out.value, report


def run_lnst(stream: OnlineStream, r: int, t: int, epsilon, budget: int | None = None, table=None) -> tuple[LnstOutcome, RunReport]:
    g = grid(r, t, epsilon)
    probes = len(g.values) ** r
    budget = space_budget() if budget is None else budget
    if budget is not None and probes > budget:
        raise SizingError(f"{probes} probes exceed the budget of {budget}")
    vecs, expected = table if table is not None else probe_table(g)

    meter = stream.meter or SpaceMeter()
    stream.meter = meter
    meter.charge(probes + r + 1)  # a pointer per probe, the LNS table, one counter
    ptr = np.zeros(probes, dtype=np.int64)
    lns_best = [0] * (r + 1)  # lns_best[v]: longest run ending in a symbol <= v
    for sym in stream:
        if not 1 <= sym <= r:
            raise ValueError(f"symbol {sym} outside alphabet 1..{r}")
        kernels.probe_advance(ptr, expected, sym)
        top = lns_best[sym] + 1
        for v in range(sym, r + 1):
            if lns_best[v] >= top:
                break
            lns_best[v] = top
    lns = lns_best[r]

    totals = vecs.sum(axis=1)
    done = ptr == totals
    best_probe = None
    if lns <= t:
        value = lns
    else:
        idx = int(np.argmax(np.where(done, totals, -1)))
        value = int(totals[idx])
        best_probe = tuple(int(v) for v in vecs[idx])
    meter.release(probes + r + 1)

    out = LnstOutcome(value, lns, best_probe, probes, int(done.sum()))
    report = RunReport(
        value=value,
        guarantee_factor=1 + Fraction(epsilon).limit_denominator(10**6),
        peak_space_words=meter.peak,
        online_symbols_read=stream.online_symbols_read,
        trace={
            "r": r,
            "t": t,
            "epsilon": float(epsilon),
            "grid": list(g.values),
            "probes": probes,
            "accepted": out.accepted,
            "lns": lns,
            "exact_branch": lns <= t,
            "best_probe": list(best_probe) if best_probe else None,
        },
    )
    return out, report
