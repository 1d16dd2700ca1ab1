import random
from fractions import Fraction

import numpy as np
import pytest
from helpers import ed_reference, longest_prefix, prefix_substring_distances
from hypothesis import given, settings
from hypothesis import strategies as st

from asymstream.fls import FlsParams, find_longest_substring, fls_base, guarantee_factor
from asymstream.inner import InnerEstimator, cutoff_substring_search
from asymstream.model import OnlineStream, SpaceMeter, apply_script, as_symbols
from asymstream.oracles import best_substring_ed, ed_full


# --- inner estimator --------------------------------------------------------------------


@pytest.mark.parametrize("backend", ["exact", "banded"])
def test_estimator_examples(backend):
    est = InnerEstimator(0.1, backend)
    assert est.estimate("abcab", "abcab") == 0
    assert est.estimate("abc", "abd") == 1
    assert est.estimate("", "ab") == 2


def test_estimator_rejects_unknown_backend():
    with pytest.raises(ValueError):
        InnerEstimator(0.1, "magic")


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=12), st.lists(st.integers(0, 2), max_size=12))
def test_estimator_backends_exact(a, b):
    d = ed_full(a, b)
    assert InnerEstimator(0.1, "exact").estimate(a, b) == d
    assert InnerEstimator(0.1, "banded").estimate(a, b) == d


def test_banded_space_tracks_distance():
    rng = random.Random(3)
    y = [rng.randrange(4) for _ in range(3000)]
    peaks = []
    for d in (2, 8, 32):
        x = list(y)
        for i in range(d):
            x[i * 50] = (x[i * 50] + 1) % 4
        est = InnerEstimator(0.1, "banded")
        assert est.estimate(x, y) == d
        peaks.append(est.meter.peak)
    assert peaks[0] < peaks[1] < peaks[2] <= 2 * (2 * 64 + 1)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=9), st.lists(st.integers(0, 2), min_size=1, max_size=9))
def test_best_substring_backends_agree_with_brute_force(target, y):
    (p, q), d = best_substring_ed(target, y)
    for backend in ("exact", "banded"):
        assert InnerEstimator(0.1, backend).best_substring(y, target) == (d, p, q)


def test_cutoff_search_gives_up_beyond_budget():
    ys = np.zeros(4, dtype=np.int64)
    target = np.ones(3, dtype=np.int64)
    assert cutoff_substring_search(target, ys, 2, SpaceMeter()) is None
    assert cutoff_substring_search(target, ys, 3, SpaceMeter()) == (3, 1, 1)


# --- guarantee factor ------------------------------------------------------------------------


def test_guarantee_factor_examples():
    assert guarantee_factor(4, 8, 0.1) == 1
    assert guarantee_factor(9, 3, 0) == 3
    assert guarantee_factor(27, 3, 0) == 7
    assert guarantee_factor(9, 3, Fraction(1, 10)) == Fraction(11, 10) * 3


@given(st.integers(1, 10**6), st.integers(2, 50))
def test_guarantee_factor_growth(u, s):
    c = guarantee_factor(u, s, 0)
    levels = 0
    while u > s:
        u = -(-u // s)
        levels += 1
    assert c == 2 ** (levels + 1) - 1


# --- base case -------------------------------------------------------------------------------


def _base(x, y, u):
    meter = SpaceMeter()
    stream = OnlineStream(x, meter)
    out = fls_base(stream, y, u, meter)
    return out, stream, meter


def test_base_identical():
    out, _, _ = _base("abcd", "abcd", 2)
    assert (out.l, out.d, out.pq) == (4, 0, (1, 4))


def test_base_stops_when_nothing_is_close():
    out, stream, _ = _base("zzzz", "aaaa", 1)
    assert (out.l, out.d, out.pq) == (1, 1, (1, 1))
    # the unused symbols stay available to the next reader
    assert list(stream) == as_symbols("zzz")


def test_base_with_one_insertion():
    out, _, _ = _base("abXcd", "qqabcdqq", 1)
    assert (out.l, out.pq, out.d) == (5, (3, 6), 1)


def test_base_empty_stream():
    out, _, _ = _base("", "abc", 3)
    assert (out.l, out.pq, out.d, out.script) == (0, (1, 0), 0, [])


def test_base_short_stream_takes_everything():
    out, _, _ = _base("zz", "aaaa", 3)
    assert out.l == 2 and out.d == 2


@settings(max_examples=400, deadline=None)
@given(
    st.lists(st.integers(0, 2), max_size=12),
    st.lists(st.integers(0, 2), max_size=12),
    st.integers(1, 4),
)
def test_base_matches_brute_force(x, y, u):
    out, stream, _ = _base(x, y, u)
    dists = prefix_substring_distances(x, y)
    l0 = longest_prefix(dists, u)
    assert out.l == l0
    assert out.d == dists[l0]
    (p, q), d = best_substring_ed(x[:l0], y)
    assert (out.pq, out.d) == ((p, q), d)
    assert len(out.script) == out.d
    assert apply_script(y[p - 1:q], out.script) == x[:l0]
    assert list(stream) == x[l0:]
    if x:
        assert out.l >= 1


def test_base_long_prefix_via_witness():
    rng = random.Random(11)
    y = [rng.randrange(2) for _ in range(600)]
    x = y[100:500]
    for i in (30, 140, 260, 390):
        x[i] = 1 - x[i]
    x = x + [2] * 40
    out, stream, meter = _base(x, y, 5)
    assert out.l == 400 + 1
    assert out.d == ed_reference(x[:out.l], y[out.pq[0] - 1:out.pq[1]])
    assert out.d == prefix_substring_distances(x[:out.l], y)[-1]
    assert list(stream) == x[out.l:]
    assert meter.peak < 200


def test_base_space_is_small_against_prefix_length():
    rng = random.Random(5)
    peaks = []
    for n in (500, 2000, 8000):
        y = [rng.randrange(4) for _ in range(n)]
        meter = SpaceMeter()
        out = fls_base(OnlineStream(y, meter), y, 4, meter)
        assert out.l == n and out.d == 0
        peaks.append(meter.peak)
    assert max(peaks) < 150
    assert peaks[-1] <= peaks[0] + 20


# --- recursion -------------------------------------------------------------------------------


def _recursive(x, y, u, s, backend="exact"):
    meter = SpaceMeter()
    stream = OnlineStream(x, meter)
    out = find_longest_substring(stream, y, FlsParams(u, s, InnerEstimator(0.1, backend)), meter)
    return out, stream


def test_recursion_delegates_when_budget_fits():
    a, _ = _recursive("abXcd", "qqabcdqq", 1, 3)
    b, _, _ = _base("abXcd", "qqabcdqq", 1)
    assert (a.pq, a.l, a.d) == (b.pq, b.l, b.d)


@pytest.mark.parametrize("u, s", [(9, 3), (27, 3), (100, 4)])
def test_recursion_identical_strings(u, s):
    x = [0, 1, 1, 0, 2, 1, 0, 0, 1, 2, 2, 1] * 3
    out, _ = _recursive(x, x, u, s)
    assert out.l == len(x) and out.d == 0


def test_params_validation():
    with pytest.raises(ValueError):
        FlsParams(0, 3)
    with pytest.raises(ValueError):
        FlsParams(3, 1)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(0, 1), max_size=40),
    st.lists(st.integers(0, 1), min_size=1, max_size=40),
    st.sampled_from([9, 27]),
    st.sampled_from(["exact", "banded"]),
)
def test_recursion_sandwich(x, y, u, backend):
    out, stream = _recursive(x, y, u, 3, backend)
    l0 = longest_prefix(prefix_substring_distances(x, y), u)
    assert out.l >= l0
    p, q = out.pq
    true = ed_full(x[:out.l], y[p - 1:q])
    best = best_substring_ed(x[:out.l], y)[1]
    assert true <= out.d <= guarantee_factor(u, 3, 0.1) * best
    assert list(stream) == x[out.l:]
