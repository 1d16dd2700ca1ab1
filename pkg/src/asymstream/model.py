"""Access model shared by every algorithm: the once-only online stream, the
free-access offline text, edit scripts, prefix replay and the space meter."""

from __future__ import annotations

import json
import string
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

SYMBOL_CHARS = string.digits + string.ascii_lowercase + string.ascii_uppercase


class HarnessError(RuntimeError):
    """Raised when the access model itself is violated."""


# --- texts -----------------------------------------------------------------


def as_symbols(text) -> list[int]:
    """Integer symbols for a text given as ints or as a str of symbol chars."""
    if isinstance(text, str):
        return [SYMBOL_CHARS.index(ch) if ch in SYMBOL_CHARS else ord(ch) for ch in text]
    return [int(v) for v in text]


def as_array(text) -> np.ndarray:
    if isinstance(text, np.ndarray) and text.dtype == np.int64:
        return text
    return np.asarray(as_symbols(text), dtype=np.int64)


def render(symbols: Sequence[int], r: int) -> str:
    if r <= len(SYMBOL_CHARS):
        return "".join(SYMBOL_CHARS[s] for s in symbols)
    return " ".join(str(s) for s in symbols)


def parse_line(line: str, r: int) -> list[int]:
    if r <= len(SYMBOL_CHARS):
        return [SYMBOL_CHARS.index(ch) for ch in line.strip()]
    return [int(tok) for tok in line.split()]


@dataclass(frozen=True)
class Instance:
    r: int
    online: tuple[int, ...]
    offline: tuple[int, ...]


def write_instance(path, inst: Instance) -> None:
    with open(path, "w") as fh:
        fh.write(f"r={inst.r}\n{render(inst.online, inst.r)}\n{render(inst.offline, inst.r)}\n")


def read_instance(path) -> Instance:
    with open(path) as fh:
        lines = fh.read().split("\n")
    head = lines[0].strip()
    if not head.startswith("r="):
        raise ValueError(f"{path}: first line must be r=<alphabet size>")
    r = int(head[2:])
    if r < 1:
        raise ValueError(f"{path}: alphabet size must be positive")
    online = parse_line(lines[1] if len(lines) > 1 else "", r)
    offline = parse_line(lines[2] if len(lines) > 2 else "", r)
    for s in online + offline:
        if not 0 <= s < r:
            raise ValueError(f"{path}: symbol {s} outside alphabet of size {r}")
    return Instance(r, tuple(online), tuple(offline))


# --- space accounting ----------------------------------------------------------


class SpaceMeter:
    """Live auxiliary words, with the peak over the run."""

    def __init__(self):
        self.current = 0
        self.peak = 0

    def charge(self, words: int) -> None:
        if words < 0:
            raise HarnessError("negative charge")
        self.current += words
        if self.current > self.peak:
            self.peak = self.current

    def release(self, words: int) -> None:
        if words < 0 or words > self.current:
            raise HarnessError(f"release of {words} words with {self.current} live")
        self.current -= words

    def resize(self, old: int, new: int) -> None:
        if new >= old:
            self.charge(new - old)
        else:
            self.release(old - new)


class Held:
    """A resizable charge: `held.set(n)` keeps exactly n words charged."""

    def __init__(self, meter: SpaceMeter, words: int = 0):
        self.meter = meter
        self.words = 0
        self.set(words)

    def set(self, words: int) -> None:
        self.meter.resize(self.words, words)
        self.words = words

    def drop(self) -> None:
        self.set(0)


# --- the online stream -------------------------------------------------------


class OnlineStream:
    """Left-to-right, exactly-once access to the online string.

    `unread` lets an algorithm hand back symbols it has physically read but not
    used yet; they stay in a charged side buffer and are served before any new
    physical read.
    """

    def __init__(self, text, meter: SpaceMeter | None = None):
        self._symbols = as_symbols(text)
        self.n = len(self._symbols)
        self.cursor = 1
        self.meter = meter
        self._back: deque[int] = deque()

    @property
    def online_symbols_read(self) -> int:
        return self.cursor - 1

    def remaining(self) -> int:
        return self.n - self.cursor + 1 + len(self._back)

    def next(self) -> int | None:
        if self._back:
            if self.meter is not None:
                self.meter.release(1)
            return self._back.popleft()
        if self.cursor > self.n:
            return None
        sym = self._symbols[self.cursor - 1]
        self.cursor += 1
        return sym

    def unread(self, symbols: Sequence[int]) -> None:
        if self.meter is not None:
            self.meter.charge(len(symbols))
        self._back.extendleft(reversed(list(symbols)))

    def __iter__(self) -> Iterator[int]:
        while (sym := self.next()) is not None:
            yield sym


class OfflineText:
    """Random access to the offline string; the access counter is diagnostic."""

    def __init__(self, text):
        self.symbols = as_array(text)
        self.n = len(self.symbols)
        self.reads = 0

    def __getitem__(self, i: int) -> int:
        """1-based access."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        self.reads += 1
        return int(self.symbols[i - 1])

    def substring(self, p: int, q: int) -> np.ndarray:
        if not 1 <= p <= q + 1 <= self.n + 1:
            raise IndexError((p, q))
        return self.symbols[p - 1:q]

    def __len__(self) -> int:
        return self.n


# --- coroutine consumers -------------------------------------------------------
#
# Streaming algorithms are written as generators that receive one symbol per
# `send`. That lets a single physical pass feed several algorithms in lockstep.


class Feed:
    """Per-consumer view of its share of the stream: `length` symbols in total,
    with a charged pushback buffer for symbols read ahead but not yet used."""

    def __init__(self, length: int, meter: SpaceMeter | None = None):
        self.left = length
        self.meter = meter
        self.back: deque[int] = deque()

    def pull(self):
        if self.back:
            self.left -= 1
            if self.meter is not None:
                self.meter.release(1)
            return self.back.popleft()
        if self.left == 0:
            return None
        sym = yield
        self.left -= 1
        return sym

    def unread(self, symbols: Sequence[int]) -> None:
        if self.meter is not None:
            self.meter.charge(len(symbols))
        self.back.extendleft(reversed(list(symbols)))
        self.left += len(symbols)

    def hand_back(self) -> list[int]:
        """Give up the read-ahead symbols (and their charge) to the caller."""
        syms = list(self.back)
        if self.meter is not None:
            self.meter.release(len(syms))
        self.back.clear()
        self.left -= len(syms)
        return syms


def drive(consumer, stream: OnlineStream, limit: int | None = None):
    """Run a generator consumer against a stream until it returns.

    `limit` caps the number of symbols handed over; symbols the consumer left
    in its Feed pushback are not the stream's concern.
    """
    try:
        next(consumer)
        sent = 0
        while True:
            if limit is not None and sent >= limit:
                raise HarnessError("consumer asked for more symbols than its share")
            sym = stream.next()
            if sym is None:
                raise HarnessError("consumer asked past the end of the stream")
            sent += 1
            consumer.send(sym)
    except StopIteration as stop:
        return stop.value


class Tee:
    """One physical pass delivered to several consumers in lockstep.

    Consumers are either plain callbacks `f(symbol)` or generator consumers;
    `window=(lo, hi)` restricts a consumer to 1-based positions lo..hi.
    """

    def __init__(self, stream: OnlineStream, transform: Callable[[int], int] | None = None):
        self.stream = stream
        self.transform = transform
        self._callbacks: list[tuple[Callable[[int], None], int, int]] = []
        self._gens: list[list] = []
        self.deliveries = 0
        self.physical_reads = 0

    def add_callback(self, fn: Callable[[int], None], window: tuple[int, int] | None = None) -> None:
        lo, hi = window if window else (1, self.stream.n)
        self._callbacks.append((fn, lo, hi))

    def add_consumer(self, gen, window: tuple[int, int] | None = None) -> int:
        lo, hi = window if window else (1, self.stream.n)
        slot = [gen, lo, hi, None, False]
        self._gens.append(slot)
        return len(self._gens) - 1

    def result(self, idx: int):
        gen, lo, hi, value, done = self._gens[idx]
        if not done:
            raise HarnessError("consumer did not finish")
        return value

    def run(self) -> None:
        for slot in self._gens:
            self._start(slot)
        pos = 0
        for sym in self.stream:
            pos += 1
            self.physical_reads += 1
            if self.transform is not None:
                sym = self.transform(sym)
            for fn, lo, hi in self._callbacks:
                if lo <= pos <= hi:
                    fn(sym)
                    self.deliveries += 1
            for slot in self._gens:
                if slot[1] <= pos <= slot[2]:
                    if slot[4]:
                        raise HarnessError("symbol delivered to a finished consumer")
                    self.deliveries += 1
                    try:
                        slot[0].send(sym)
                    except StopIteration as stop:
                        slot[3], slot[4] = stop.value, True
        for slot in self._gens:
            if not slot[4]:
                raise HarnessError("consumer still waiting at end of stream")

    @staticmethod
    def _start(slot) -> None:
        try:
            next(slot[0])
        except StopIteration as stop:
            slot[3], slot[4] = stop.value, True


def tee(text, m: int) -> list[list[int]]:
    """What each of m lockstep consumers observes over one pass of `text`."""
    if m < 1:
        raise ValueError("need at least one consumer")
    stream = OnlineStream(text)
    seen: list[list[int]] = [[] for _ in range(m)]
    hub = Tee(stream)
    for bucket in seen:
        hub.add_callback(bucket.append)
    hub.run()
    return seen


# --- edit scripts ----------------------------------------------------------------


@dataclass(frozen=True)
class EditOp:
    kind: str  # "insert" | "delete" | "substitute"
    position: int  # 1-based, into the source; insert goes before this position
    symbol: int | None = None

    def __post_init__(self):
        if self.kind not in ("insert", "delete", "substitute"):
            raise ValueError(f"unknown edit kind {self.kind!r}")
        if (self.symbol is None) != (self.kind == "delete"):
            raise ValueError("insert/substitute need a symbol, delete must not have one")


def insert(pos: int, sym) -> EditOp:
    return EditOp("insert", pos, as_symbols([sym] if not isinstance(sym, str) else sym)[0])


def delete(pos: int) -> EditOp:
    return EditOp("delete", pos)


def substitute(pos: int, sym) -> EditOp:
    return EditOp("substitute", pos, as_symbols([sym] if not isinstance(sym, str) else sym)[0])


def _ordered(ops: Sequence[EditOp]) -> list[EditOp]:
    # inserts at position i land before source symbol i; stable among inserts
    return sorted(ops, key=lambda op: (op.position, op.kind != "insert"))


def iter_script(source: Iterable[int], n: int, ops: Sequence[EditOp]) -> Iterator[int]:
    """Stream the target of `ops` applied to a source of length n."""
    ordered = _ordered(ops)
    touched: set[int] = set()
    for op in ordered:
        limit = n + 1 if op.kind == "insert" else n
        if not 1 <= op.position <= limit:
            raise IndexError(f"{op} out of bounds for source of length {n}")
        if op.kind != "insert":
            if op.position in touched:
                raise ValueError(f"two edits on source position {op.position}")
            touched.add(op.position)
    k = 0
    pos = 0
    for pos, sym in enumerate(source, start=1):
        while k < len(ordered) and ordered[k].position == pos and ordered[k].kind == "insert":
            yield ordered[k].symbol
            k += 1
        if k < len(ordered) and ordered[k].position == pos:
            op = ordered[k]
            k += 1
            if op.kind == "substitute":
                yield op.symbol
            continue
        yield sym
    if pos != n:
        raise ValueError(f"source has {pos} symbols, expected {n}")
    while k < len(ordered):
        yield ordered[k].symbol
        k += 1


def apply_script(source, ops: Sequence[EditOp]) -> list[int]:
    src = as_symbols(source)
    return list(iter_script(src, len(src), ops))


def replay_prefix(y: OfflineText, ref: tuple[int, int], ops: Sequence[EditOp], tail: Sequence[int]) -> Iterator[int]:
    """x[1:l] rebuilt from y[p:q], a script turning it into x[1:l-|tail|], and
    the buffered tail. Never touches the online stream."""
    p, q = ref
    if not 1 <= p <= q + 1 <= y.n + 1:
        raise ValueError(f"bad substring reference {ref} for text of length {y.n}")
    source = (y[i] for i in range(p, q + 1))
    yield from iter_script(source, q - p + 1, ops)
    yield from tail


def script_words(ops: Sequence[EditOp]) -> int:
    return 3 * len(ops)


# --- reports ---------------------------------------------------------------------


@dataclass
class RunReport:
    value: int
    guarantee_factor: Fraction | float
    peak_space_words: int
    online_symbols_read: int
    trace: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        gf = self.guarantee_factor
        return {
            "value": int(self.value),
            "guarantee_factor": float(gf),
            "peak_space_words": int(self.peak_space_words),
            "online_symbols_read": int(self.online_symbols_read),
            "trace": self.trace,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
