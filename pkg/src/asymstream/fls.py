"""FindLongestSubstring: the longest prefix of the online string that stays
close to some substring of the offline string, found in one pass."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .inner import InnerEstimator, row_best, seed_rows
from .model import (
    EditOp,
    Feed,
    Held,
    OfflineText,
    OnlineStream,
    RunReport,
    SpaceMeter,
    drive,
    iter_script,
    script_words,
)
from .oracles import _walk_back


@dataclass
class FlsOutput:
    pq: tuple[int, int]
    l: int
    d: int
    script: list[EditOp] | None = None  # base case only: turns y[pq] into x[1:l]


@dataclass
class FlsParams:
    u: int
    s: int
    inner: InnerEstimator = field(default_factory=InnerEstimator)

    def __post_init__(self):
        if self.u < 1 or self.s < 2:
            raise ValueError("need u >= 1 and s >= 2")


@lru_cache(maxsize=None)
def _factor(u: int, s: int, eps: Fraction) -> Fraction:
    if u <= s:
        return Fraction(1)
    return (1 + eps) * (2 * _factor(-(-u // s), s, eps) + 1)


def guarantee_factor(u: int, s: int, eps) -> Fraction:
    """Approximation factor of the recursion: 1 at the leaves, and
    (1+eps)(2c + 1) per level with c the factor one level down."""
    if u < 1 or s < 1:
        raise ValueError("u and s must be positive")
    if s == 1 and u > 1:
        raise ValueError("s = 1 never reaches the base case")
    return _factor(int(u), int(s), Fraction(eps).limit_denominator(10**9))


class _Witness:
    """y[p:q] plus at most u edits reproduce x[1:c]; the tail holds x[c+1:l].

    Together they let the prefix be re-read without keeping it.
    """

    def __init__(self, y: OfflineText, meter: SpaceMeter):
        self.y = y
        self.p, self.q = 1, 0
        self.ops: list[EditOp] = []
        self.tail: list[int] = []
        self.held = Held(meter)

    def _recharge(self):
        self.held.set(2 + script_words(self.ops) + len(self.tail))

    def reset(self, p: int, q: int, ops: list[EditOp]):
        self.p, self.q, self.ops, self.tail = p, q, ops, []
        self._recharge()

    def push(self, sym: int):
        self.tail.append(sym)
        self._recharge()

    def replay(self) -> np.ndarray:
        src = self.y.symbols[self.p - 1:self.q]
        body = list(iter_script(iter(src.tolist()), len(src), self.ops))
        return np.asarray(body + self.tail, dtype=np.int64)

    def extend(self, budget: int) -> bool:
        """Fold the tail into the script by aligning it right after y[q];
        fails when that needs more than `budget` further edits."""
        tail = np.asarray(self.tail, dtype=np.int64)
        rest = self.y.symbols[self.q:]
        dist, end = kernels.anchored_free_end(tail, rest, budget)
        if dist < 0:
            return False
        shift = self.q - self.p + 1
        more = _walk_back(rest[:end], tail, int(dist) + 1)
        ops = self.ops + [EditOp(op.kind, op.position + shift, op.symbol) for op in more]
        self.reset(self.p, self.q + int(end), ops)
        return True

    def drop(self):
        self.held.drop()


def _decode(key: int, base: int) -> tuple[int, int]:
    return key // base, key % base


def fls_base_co(feed: Feed, y: OfflineText, u: int, meter: SpaceMeter):
    """Exact leaf of the recursion (distance budget u at most the space s).

    The first rows are handled with a buffered column scan; from then on only
    cells within u are carried row to row and the prefix is re-read from a
    witness script, never stored.
    """
    m = feed.left
    if m == 0:
        return FlsOutput((1, 0), 0, 0, [])
    n = y.n
    base = n + 2
    limit = (u + 1) * base
    first = min(u, m)
    rows = min(m, max(first, seed_rows(u)))

    buf: list[int] = []
    held_buf = Held(meter)
    for _ in range(rows):
        buf.append((yield from feed.pull()))
        held_buf.set(len(buf))
    xb = np.asarray(buf, dtype=np.int64)
    meter.charge(rows + 1)
    best, best_q, cols, keys = kernels.sg_column_scan(xb, y.symbols, base, limit)
    meter.release(rows + 1)

    failed = np.nonzero(best[first:rows + 1] >= limit)[0]
    if len(failed):
        l = first + int(failed[0]) - 1
        feed.unread(buf[l:])
        d, p = _decode(int(best[l]), base)
        q = int(best_q[l])
        script = _walk_back(y.symbols[p - 1:q], xb[:l], d + 1)
        held_buf.drop()
        return FlsOutput((p, q), l, d, script)

    l = rows
    d, p = _decode(int(best[l]), base)
    q = int(best_q[l])
    if l == m:
        script = _walk_back(y.symbols[p - 1:q], xb, d + 1)
        held_buf.drop()
        return FlsOutput((p, q), l, d, script)
    live = Held(meter, 2 * len(cols))
    witness = _Witness(y, meter)
    witness.reset(p, q, _walk_back(y.symbols[p - 1:q], xb, d + 1))
    held_buf.drop()
    refresh = max(u, 8)
    while l < m:
        sym = yield from feed.pull()
        nc, nk = kernels.sg_advance(cols, keys, sym, y.symbols, base, limit)
        if len(nc) == 0:
            feed.unread([sym])
            break
        cols, keys = nc, nk
        live.set(2 * len(cols))
        l += 1
        witness.push(sym)
        if len(witness.tail) >= refresh and not witness.extend(u - len(witness.ops)):
            key, q = row_best(cols, keys, l, n)
            d, p = _decode(key, base)
            ops = _walk_back(y.symbols[p - 1:q], witness.replay(), d + 1)
            witness.reset(p, q, ops)

    key, q = row_best(cols, keys, l, n)
    d, p = _decode(key, base)
    script = _walk_back(y.symbols[p - 1:q], witness.replay(), d + 1)
    witness.drop()
    live.drop()
    return FlsOutput((p, q), l, d, script)


def fls_co(feed: Feed, y: OfflineText, u: int, s: int, inner: InnerEstimator, meter: SpaceMeter, trace=None):
    """Full recursion: at most s calls with budget ceil(u/s), then the
    substring of y closest to the concatenation of their answers."""
    if u <= s:
        out = yield from fls_base_co(feed, y, u, meter)
        return out
    sub = -(-u // s)
    parts: list[FlsOutput] = []
    held = Held(meter)
    while feed.left > 0 and len(parts) < s:
        out = yield from fls_co(feed, y, sub, s, inner, meter)
        out.script = None
        parts.append(out)
        held.set(4 * len(parts))
    stitched = np.concatenate([y.symbols[o.pq[0] - 1:o.pq[1]] for o in parts]) if parts else np.zeros(0, np.int64)
    d_tilde, p, q = inner.best_substring(y.symbols, stitched)
    held.drop()
    if trace is not None:
        trace.append({"u": u, "parts": len(parts)})
    return FlsOutput((p, q), sum(o.l for o in parts), d_tilde + sum(o.d for o in parts))


def _run(stream: OnlineStream, consumer, feed: Feed) -> FlsOutput:
    out = drive(consumer, stream)
    leftover = feed.hand_back()
    if leftover:
        stream.unread(leftover)
    return out


def fls_base(stream: OnlineStream, y, u: int, meter: SpaceMeter | None = None) -> FlsOutput:
    yy = y if isinstance(y, OfflineText) else OfflineText(y)
    meter = meter or SpaceMeter()
    feed = Feed(stream.remaining(), meter)
    return _run(stream, fls_base_co(feed, yy, u, meter), feed)


def find_longest_substring(stream: OnlineStream, y, params: FlsParams, meter: SpaceMeter | None = None) -> FlsOutput:
    yy = y if isinstance(y, OfflineText) else OfflineText(y)
    meter = meter or SpaceMeter()
    feed = Feed(stream.remaining(), meter)
    return _run(stream, fls_co(feed, yy, params.u, params.s, params.inner, meter), feed)


def fls_report(x, y, params: FlsParams) -> tuple[FlsOutput, RunReport]:
    meter = SpaceMeter()
    stream = OnlineStream(x, meter)
    out = find_longest_substring(stream, y, params, meter)
    report = RunReport(
        value=out.d,
        guarantee_factor=guarantee_factor(params.u, params.s, params.inner.epsilon),
        peak_space_words=meter.peak,
        online_symbols_read=stream.online_symbols_read,
        trace={"p": out.pq[0], "q": out.pq[1], "l": out.l, "d": out.d},
    )
    return out, report
