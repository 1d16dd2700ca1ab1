"""One-pass edit-distance approximation with a budget that grows with the
number of parts already cut from the online string."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fls import fls_co, guarantee_factor
from .inner import InnerEstimator
from .model import Feed, Held, OfflineText, OnlineStream, RunReport, SpaceMeter, drive


def parse_delta(delta) -> Fraction:
    d = Fraction(delta)
    if d <= 0 or d > Fraction(1, 2) or d.numerator != 1:
        raise ValueError(f"delta must be 1/j for an integer j >= 2, got {delta}")
    return d


@dataclass
class EdStreamParams:
    delta: Fraction = Fraction(1, 2)
    epsilon: float = 0.1
    k0: int | None = None
    backend: str = "banded"

    def __post_init__(self):
        self.delta = parse_delta(self.delta)
        j = self.delta.denominator
        if self.k0 is None:
            self.k0 = 8 ** j
        s0 = round(self.k0 ** (1 / j))
        if s0 < 2 or s0 ** j != self.k0:
            raise ValueError(f"k0 = {self.k0} has no integral {j}-th root >= 2")

    @property
    def j(self) -> int:
        return self.delta.denominator

    @property
    def s0(self) -> int:
        return round(self.k0 ** (1 / self.j))


@dataclass
class EdTrace:
    parts: list[dict] = field(default_factory=list)  # a, p, q, l, d per part
    k_history: list[int] = field(default_factory=list)
    d_tilde: int = 0

    def to_dict(self) -> dict:
        return {"parts": self.parts, "k_history": self.k_history, "d_tilde": self.d_tilde, "T": len(self.parts)}


def final_factor(params: EdStreamParams, k_final: int) -> Fraction:
    eps = Fraction(params.epsilon).limit_denominator(10**9)
    if params.delta == Fraction(1, 2):
        return 3 + 2 * eps
    s = round(k_final ** (1 / params.j))
    return (1 + eps) * (1 + 2 * guarantee_factor(k_final // s, s, eps))


def ed_stream_co(feed: Feed, y: OfflineText, params: EdStreamParams, inner: InnerEstimator, meter: SpaceMeter):
    """Generator consumer; returns (estimate, trace)."""
    trace = EdTrace()
    j = params.j
    k, s = params.k0, params.s0
    trace.k_history.append(k)
    meter.charge(4)  # a, i, k, s
    held = Held(meter)
    a, i = 1, 1
    refs = []
    total = 0
    while feed.left > 0:
        out = yield from fls_co(feed, y, k // s, s, inner, meter)
        out.script = None
        trace.parts.append({"a": a, "p": out.pq[0], "q": out.pq[1], "l": out.l, "d": out.d})
        refs.append(out.pq)
        total += out.d
        held.set(5 * len(refs))
        a += out.l
        i += 1
        if i >= s:
            k *= 2 ** j
            s *= 2
            trace.k_history.append(k)
    if refs:
        stitched = np.concatenate([y.symbols[p - 1:q] for p, q in refs])
    else:
        stitched = np.zeros(0, dtype=np.int64)
    trace.d_tilde = inner.estimate(y.symbols, stitched)
    held.drop()
    meter.release(4)
    return trace.d_tilde + total, trace


def approx_ed_streaming(stream: OnlineStream, y, params: EdStreamParams | None = None) -> tuple[int, EdTrace, RunReport]:
    params = params or EdStreamParams()
    yy = y if isinstance(y, OfflineText) else OfflineText(y)
    meter = stream.meter or SpaceMeter()
    stream.meter = meter
    inner = InnerEstimator(params.epsilon, params.backend)
    feed = Feed(stream.remaining(), meter)
    estimate, trace = drive(ed_stream_co(feed, yy, params, inner, meter), stream)
    report = ed_report(estimate, trace, params, meter, inner, stream.online_symbols_read)
    return estimate, trace, report


def ed_report(estimate, trace: EdTrace, params: EdStreamParams, meter: SpaceMeter, inner: InnerEstimator, read: int) -> RunReport:
    k_final = trace.k_history[-1]
    info = trace.to_dict()
    info.update(
        delta=str(params.delta),
        epsilon=params.epsilon,
        k0=params.k0,
        k_final=k_final,
        inner_backend=params.backend,
        estimator_peak_words=inner.meter.peak,
    )
    return RunReport(
        value=estimate,
        guarantee_factor=final_factor(params, k_final),
        peak_space_words=meter.peak,
        online_symbols_read=read,
        trace=info,
    )


def three_approx(stream: OnlineStream, y, epsilon: float = 0.1, backend: str = "banded") -> tuple[int, RunReport]:
    estimate, _, report = approx_ed_streaming(stream, y, EdStreamParams(Fraction(1, 2), epsilon, backend=backend))
    return estimate, report
