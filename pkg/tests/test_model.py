import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asymstream.model import (
    EditOp,
    Feed,
    HarnessError,
    Instance,
    OfflineText,
    OnlineStream,
    RunReport,
    SpaceMeter,
    Tee,
    apply_script,
    as_symbols,
    delete,
    drive,
    insert,
    read_instance,
    replay_prefix,
    substitute,
    tee,
    write_instance,
)


def test_stream_delivers_in_order_then_ends():
    s = OnlineStream("ab")
    assert s.next() == as_symbols("a")[0]
    assert s.next() == as_symbols("b")[0]
    assert s.next() is None
    assert s.online_symbols_read == 2


def test_empty_stream_ends_at_once():
    s = OnlineStream("")
    assert s.next() is None
    assert s.online_symbols_read == 0


def test_counter_after_full_read():
    s = OnlineStream("abcdefg")
    assert len(list(s)) == 7
    assert s.online_symbols_read == 7
    assert s.next() is None
    assert s.online_symbols_read == 7


def test_unread_is_charged_and_served_first():
    meter = SpaceMeter()
    s = OnlineStream([1, 2, 3], meter)
    a, b = s.next(), s.next()
    s.unread([a, b])
    assert meter.current == 2
    assert [s.next(), s.next(), s.next()] == [1, 2, 3]
    assert meter.current == 0
    assert s.online_symbols_read == 3


def test_tee_two_consumers():
    seen = tee("abc", 2)
    assert seen == [as_symbols("abc")] * 2


def test_tee_single_is_identity():
    assert tee([4, 5, 6], 1) == [[4, 5, 6]]


def test_tee_counts_reads_and_deliveries():
    stream = OnlineStream(list(range(10)))
    hub = Tee(stream)
    for _ in range(3):
        hub.add_callback(lambda v: None)
    hub.run()
    assert hub.physical_reads == 10
    assert hub.deliveries == 30
    assert stream.online_symbols_read == 10


def test_tee_windows_and_generators():
    def collect(feed):
        got = []
        while feed.left:
            got.append((yield from feed.pull()))
        return got

    stream = OnlineStream(list(range(1, 9)))
    hub = Tee(stream)
    whole = hub.add_consumer(collect(Feed(8)))
    mid = hub.add_consumer(collect(Feed(3)), (3, 5))
    hub.run()
    assert hub.result(whole) == list(range(1, 9))
    assert hub.result(mid) == [3, 4, 5]


def test_tee_rejects_waiting_consumer():
    def greedy(feed):
        while feed.left:
            yield from feed.pull()

    hub = Tee(OnlineStream([1, 2]))
    hub.add_consumer(greedy(Feed(5)))
    with pytest.raises(HarnessError):
        hub.run()


def test_drive_refuses_reading_past_end():
    def hungry(feed):
        while True:
            yield from feed.pull()
            feed.left += 1

    with pytest.raises(HarnessError):
        drive(hungry(Feed(1)), OnlineStream([1, 2]))


@pytest.mark.parametrize(
    "source, ops, target",
    [
        ("abc", [], "abc"),
        ("abc", [substitute(3, "d")], "abd"),
        ("ab", [insert(3, "c"), delete(1)], "bc"),
    ],
)
def test_apply_script_examples(source, ops, target):
    assert apply_script(source, ops) == as_symbols(target)


def test_apply_script_rejects_out_of_bounds():
    with pytest.raises(IndexError):
        apply_script("ab", [delete(3)])
    with pytest.raises(IndexError):
        apply_script("ab", [insert(4, "a")])


def test_edit_op_validation():
    with pytest.raises(ValueError):
        EditOp("swap", 1, 0)
    with pytest.raises(ValueError):
        EditOp("delete", 1, 3)
    with pytest.raises(ValueError):
        EditOp("insert", 1)


def test_replay_whole_text():
    y = OfflineText("abcde")
    assert list(replay_prefix(y, (1, 5), [], [])) == as_symbols("abcde")


def test_replay_with_script_and_tail():
    y = OfflineText("abcde")
    out = replay_prefix(y, (2, 4), [substitute(1, "x")], as_symbols("z"))
    assert list(out) == as_symbols("xcdz")


def test_replay_tail_only():
    y = OfflineText("abc")
    assert list(replay_prefix(y, (1, 0), [], as_symbols("ab"))) == as_symbols("ab")


def test_replay_rejects_bad_reference():
    with pytest.raises(ValueError):
        list(replay_prefix(OfflineText("abc"), (3, 1), [], []))


@given(
    st.lists(st.integers(0, 3), max_size=12),
    st.data(),
)
def test_replay_matches_apply_then_tail(y, data):
    yt = OfflineText(y)
    p = data.draw(st.integers(1, len(y) + 1))
    q = data.draw(st.integers(p - 1, len(y)))
    ops, used = [], set()
    for _ in range(data.draw(st.integers(0, 4))):
        kind = data.draw(st.sampled_from(["insert", "delete", "substitute"]))
        if kind == "insert":
            ops.append(EditOp("insert", data.draw(st.integers(1, q - p + 2)), data.draw(st.integers(0, 3))))
        elif q >= p:
            pos = data.draw(st.integers(1, q - p + 1))
            if pos not in used:
                used.add(pos)
                ops.append(EditOp(kind, pos, None if kind == "delete" else data.draw(st.integers(0, 3))))
    tail = data.draw(st.lists(st.integers(0, 3), max_size=4))
    expect = apply_script(y[p - 1:q], ops) + tail
    assert list(replay_prefix(yt, (p, q), ops, tail)) == expect


def test_meter_examples():
    m = SpaceMeter()
    assert m.peak == 0
    m.charge(10)
    m.release(10)
    assert m.peak == 10
    m = SpaceMeter()
    m.charge(5)
    m.charge(7)
    m.release(5)
    assert m.peak == 12
    assert m.current == 7


def test_meter_negative_balance_is_an_error():
    m = SpaceMeter()
    m.charge(2)
    with pytest.raises(HarnessError):
        m.release(3)
    with pytest.raises(HarnessError):
        m.charge(-1)


@given(st.lists(st.tuples(st.booleans(), st.integers(0, 20)), max_size=40))
def test_meter_peak_never_decreases(moves):
    m = SpaceMeter()
    last = 0
    for up, w in moves:
        if up:
            m.charge(w)
        else:
            m.release(min(w, m.current))
        assert m.peak >= last
        assert m.peak >= m.current >= 0
        last = m.peak


def test_instance_round_trip(tmp_path):
    small = Instance(3, (0, 1, 2, 2), (2, 1))
    big = Instance(100, (99, 0, 57), (1, 2, 3))
    for inst in (small, big):
        path = tmp_path / "inst.txt"
        write_instance(path, inst)
        assert read_instance(path) == inst
    assert (tmp_path / "inst.txt").read_text().splitlines()[0] == "r=100"


def test_instance_rejects_foreign_symbols(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("r=2\n0120\n01\n")
    with pytest.raises(ValueError):
        read_instance(path)


def test_report_json_is_stable():
    rep = RunReport(3, 2, 10, 5, {"b": 1, "a": [1, 2]})
    text = rep.to_json()
    assert text == RunReport(3, 2, 10, 5, {"a": [1, 2], "b": 1}).to_json()
    assert set(json.loads(text)) == {"value", "guarantee_factor", "peak_space_words", "online_symbols_read", "trace"}
