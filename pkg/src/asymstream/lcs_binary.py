"""One-pass LCS lower bounds for binary strings from symbol counts, best
two-way splits and streaming edit-distance estimates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ed_stream import EdStreamParams, ed_stream_co
from .inner import InnerEstimator
from .model import Feed, OfflineText, OnlineStream, RunReport, SpaceMeter, Tee, as_symbols


@dataclass(frozen=True)
class SymbolCounts:
    zeros: int = 0
    ones: int = 0

    @classmethod
    def of(cls, text: Sequence[int]) -> "SymbolCounts":
        ones = sum(1 for v in text if v)
        return cls(len(text) - ones, ones)

    @property
    def length(self) -> int:
        return self.zeros + self.ones

    def __getitem__(self, sym: int) -> int:
        if sym == 0:
            return self.zeros
        if sym == 1:
            return self.ones
        raise ValueError(f"symbol {sym} is not binary")

    def __add__(self, other: "SymbolCounts") -> "SymbolCounts":
        return SymbolCounts(self.zeros + other.zeros, self.ones + other.ones)

    def __sub__(self, other: "SymbolCounts") -> "SymbolCounts":
        return SymbolCounts(self.zeros - other.zeros, self.ones - other.ones)

    def fraction(self, sym: int, n: int) -> Fraction:
        return Fraction(self[sym], n) if n else Fraction(0)


def match_count(cx: SymbolCounts, cy: SymbolCounts, sym: int) -> int:
    return min(cx[sym], cy[sym])


def best_match(cx: SymbolCounts, cy: SymbolCounts) -> int:
    return max(match_count(cx, cy, 0), match_count(cx, cy, 1))


def greedy_split_offline(cx1: SymbolCounts, cx2: SymbolCounts, y) -> tuple[int, int]:
    """Best cut y = y[1:l] y[l+1:n] for pairing with x1 and x2; smallest l on ties."""
    ys = as_symbols(y)
    total = SymbolCounts.of(ys)
    prefix = SymbolCounts()
    best, best_l = best_match(cx2, total), 0
    for l, v in enumerate(ys, start=1):
        prefix = prefix + (SymbolCounts(0, 1) if v else SymbolCounts(1, 0))
        val = best_match(cx1, prefix) + best_match(cx2, total - prefix)
        if val > best:
            best, best_l = val, l
    return best, best_l


class OnlineGreedy:
    """Cut of the online string for a fixed split y1 y2 of the offline one.

    The suffix counts of x are unknown mid-pass, so the scan assumes x holds
    `assumed_zeros` zeros in total; `finish` re-scores the chosen cut with
    the true totals, which keeps the result a valid lower bound.
    """

    def __init__(self, cy1: SymbolCounts, cy2: SymbolCounts, n: int, assumed_zeros: int):
        self.cy1, self.cy2 = cy1, cy2
        self.assumed = SymbolCounts(assumed_zeros, n - assumed_zeros)
        self.prefix = SymbolCounts()
        self.best = self._score(self.prefix)
        self.best_prefix = self.prefix

    def _score(self, prefix: SymbolCounts) -> int:
        rest = SymbolCounts(max(self.assumed.zeros - prefix.zeros, 0), max(self.assumed.ones - prefix.ones, 0))
        return best_match(prefix, self.cy1) + best_match(rest, self.cy2)

    def __call__(self, sym: int) -> None:
        self.prefix = self.prefix + (SymbolCounts(0, 1) if sym else SymbolCounts(1, 0))
        val = self._score(self.prefix)
        if val > self.best:
            self.best, self.best_prefix = val, self.prefix

    def finish(self, cx: SymbolCounts) -> int:
        return best_match(self.best_prefix, self.cy1) + best_match(cx - self.best_prefix, self.cy2)


def greedy_split_online(cy1: SymbolCounts, cy2: SymbolCounts, x, assumed_zeros: int | None = None) -> int:
    xs = as_symbols(x)
    if assumed_zeros is None:
        assumed_zeros = xs.count(0)
    scan = OnlineGreedy(cy1, cy2, len(xs), assumed_zeros)
    for v in xs:
        scan(v)
    return scan.finish(SymbolCounts.of(xs))


@dataclass(frozen=True)
class BalanceParams:
    delta: Fraction = Fraction(1, 10)
    beta: Fraction | None = None  # defaults to delta * alpha, the least allowed

    def beta_for(self, alpha: Fraction) -> Fraction:
        return self.beta if self.beta is not None else self.delta * alpha


def imbalance_alpha(cx: SymbolCounts, cy: SymbolCounts) -> Fraction:
    n = cx.length
    return min(cx.fraction(1, n), cy.fraction(1, n), cx.fraction(0, n), cy.fraction(0, n))


def near_complement(cx: SymbolCounts, cy: SymbolCounts, delta) -> bool:
    """|1(x) - 0(y)| <= delta * alpha, on fractions of n."""
    n = cx.length
    alpha = imbalance_alpha(cx, cy)
    return abs(cx.fraction(1, n) - cy.fraction(0, n)) <= Fraction(delta) * alpha


def classify_balance(cx: SymbolCounts, cy: SymbolCounts, params: BalanceParams = BalanceParams()) -> str:
    """'unbalanced' when both defining conditions hold, else 'balanced'."""
    n = cx.length
    alpha = imbalance_alpha(cx, cy)
    wide = 10 * params.beta_for(alpha)
    zx = cx.fraction(0, n)
    away = not (Fraction(1, 2) - wide <= zx <= Fraction(1, 2) + wide)
    return "unbalanced" if near_complement(cx, cy, params.delta) and away else "balanced"


@dataclass
class LcsEstimate:
    value: int
    witness: str
    boundaries: tuple[int, int]  # last position of L, last position of M
    candidates: dict


def approx_lcs_binary(stream: OnlineStream, y, delta_space=Fraction(1, 3), epsilon: float = 0.1, backend: str = "banded") -> tuple[LcsEstimate, RunReport]:
    ys = as_symbols(y)
    n = len(ys)
    if stream.remaining() != n:
        raise ValueError("online and offline strings must have equal length")
    if any(v not in (0, 1) for v in ys):
        raise ValueError("offline string is not binary")
    flip = 2 * sum(ys) > n  # relabel so that 1(y) <= 1/2; LCS is unchanged
    if flip:
        ys = [1 - v for v in ys]
    a = sum(ys)  # |L| = |R| = a = 1(y) * n
    cuts = (a, n - a)
    yL, yM, yR = ys[:a], ys[a:n - a], ys[n - a:]
    cyL, cyM, cyR = SymbolCounts.of(yL), SymbolCounts.of(yM), SymbolCounts.of(yR)
    cy = cyL + cyM + cyR

    meter = stream.meter or SpaceMeter()
    stream.meter = meter
    hub = Tee(stream, transform=(lambda v: 1 - v) if flip else None)

    counts = [0, 0, 0]  # ones seen in L, M, R
    pos = [0]

    def count(sym: int) -> None:
        pos[0] += 1
        if sym not in (0, 1):
            raise ValueError("online string is not binary")
        seg = 0 if pos[0] <= a else (1 if pos[0] <= n - a else 2)
        counts[seg] += sym

    meter.charge(4)
    hub.add_callback(count)
    scans = {
        "greedy-online-L": OnlineGreedy(cyL, cyM + cyR, n, a),
        "greedy-online-LM": OnlineGreedy(cyL + cyM, cyR, n, a),
    }
    for scan in scans.values():
        meter.charge(6)
        hub.add_callback(scan)

    params = EdStreamParams(Fraction(delta_space), epsilon, backend=backend)
    inners = []
    runs = {}
    for name, lo, hi, yseg in (("x", 1, n, ys), ("L", 1, a, yL), ("R", n - a + 1, n, yR)):
        inner = InnerEstimator(epsilon, backend)
        inners.append(inner)
        feed = Feed(max(hi - lo + 1, 0), meter)
        gen = ed_stream_co(feed, OfflineText(yseg), params, inner, meter)
        runs[name] = hub.add_consumer(gen, (lo, hi))
    hub.run()

    cxL = SymbolCounts(a - counts[0], counts[0])
    cxM = SymbolCounts(n - 2 * a - counts[1], counts[1])
    cxR = SymbolCounts(a - counts[2], counts[2])
    cx = cxL + cxM + cxR
    ed = {name: hub.result(idx)[0] for name, idx in runs.items()}

    seg_L = max(best_match(cxL, cyL), a - ed["L"])
    seg_R = max(best_match(cxR, cyR), a - ed["R"])
    cand = {
        "best-match": best_match(cx, cy),
        "approx-ed": max(n - ed["x"], 0),
        "segments": seg_L + best_match(cxM, cyM) + seg_R,
        "segments-LM+R": best_match(cxL + cxM, cyL + cyM) + seg_R,
        "segments-L+MR": seg_L + best_match(cxM + cxR, cyM + cyR),
        "greedy-offline-L": greedy_split_offline(cxL, cxM + cxR, ys)[0],
        "greedy-offline-LM": greedy_split_offline(cxL + cxM, cxR, ys)[0],
    }
    for name, scan in scans.items():
        cand[name] = scan.finish(cx)
    witness = max(cand, key=lambda k: cand[k])
    est = LcsEstimate(cand[witness], witness, cuts, cand)
    report = RunReport(
        value=est.value,
        guarantee_factor=Fraction(2),
        peak_space_words=meter.peak,
        online_symbols_read=stream.online_symbols_read,
        trace={
            "witness": witness,
            "candidates": cand,
            "boundaries": list(cuts),
            "relabelled": flip,
            "ed_estimates": ed,
            "estimator_peak_words": max(i.meter.peak for i in inners),
            "deliveries": hub.deliveries,
        },
    )
    return est, report
