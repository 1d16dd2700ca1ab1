import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymstream.lcs_binary import (
    BalanceParams,
    SymbolCounts,
    approx_lcs_binary,
    best_match,
    classify_balance,
    greedy_split_offline,
    greedy_split_online,
    match_count,
    near_complement,
)
from asymstream.model import OnlineStream
from asymstream.oracles import lcs_full

C = SymbolCounts.of


def _pairs(n):
    return st.integers(0, n).flatmap(
        lambda k: st.tuples(st.lists(st.integers(0, 1), min_size=k, max_size=k), st.lists(st.integers(0, 1), min_size=k, max_size=k))
    )


def test_counts():
    c = C([0, 1, 1, 0, 1])
    assert (c.zeros, c.ones, c.length) == (2, 3, 5)
    assert c.fraction(1, 5) == Fraction(3, 5)
    assert (c - C([1])).ones == 2


def test_match_examples():
    assert match_count(C([1, 1, 1, 0]), C([1] * 5), 1) == 3
    assert match_count(C([0, 0]), C([1, 0, 1]), 1) == 0
    assert match_count(C([0, 1, 1]), C([0, 1, 1]), 1) == 2
    with pytest.raises(ValueError):
        match_count(C([0]), C([0]), 2)


def test_best_match_examples():
    assert best_match(C([0, 0, 1, 1]), C([0, 1, 0, 1])) == 2
    assert best_match(C([0, 0, 0]), C([1, 1, 1])) == 0
    assert best_match(C([0, 1]), C([0, 1])) == 1


@given(_pairs(10))
def test_best_match_is_a_common_subsequence(pair):
    x, y = pair
    assert best_match(C(x), C(y)) <= lcs_full(x, y)


def test_greedy_offline_examples():
    assert greedy_split_offline(C([0, 0]), C([1, 1]), [0, 0, 1, 1]) == (4, 2)
    y = [1, 0, 1, 1]
    assert greedy_split_offline(C([]), C([0, 1, 1]), y)[0] == best_match(C([0, 1, 1]), C(y))
    assert greedy_split_offline(C([0]), C([1]), []) == (0, 0)


def _exhaustive_split(x1, x2, y):
    scores = [best_match(C(x1), C(y[:l])) + best_match(C(x2), C(y[l:])) for l in range(len(y) + 1)]
    best = max(scores)
    return best, scores.index(best)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), max_size=25), st.lists(st.integers(0, 1), max_size=25), st.lists(st.integers(0, 1), max_size=50))
def test_greedy_offline_is_optimal(x1, x2, y):
    assert greedy_split_offline(C(x1), C(x2), y) == _exhaustive_split(x1, x2, y)


def test_greedy_online_examples():
    assert greedy_split_online(C([0, 0]), C([1, 1]), [0, 0, 1, 1]) == 4
    assert greedy_split_online(C([]), C([1, 1, 0]), [0, 1, 1]) == 2
    assert greedy_split_online(C([0, 1]), C([0, 1]), [0, 1, 0, 1]) == 2


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), max_size=20), st.lists(st.integers(0, 1), max_size=20), st.data())
def test_greedy_online_with_true_counts_is_optimal(y1, y2, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=len(y1) + len(y2), max_size=len(y1) + len(y2)))
    best = max(best_match(C(x[:l]), C(y1)) + best_match(C(x[l:]), C(y2)) for l in range(len(x) + 1))
    assert greedy_split_online(C(y1), C(y2), x) == best
    assert best <= lcs_full(x, y1 + y2)


@settings(max_examples=200)
@given(st.lists(st.integers(0, 1), max_size=20), st.lists(st.integers(0, 1), max_size=20), st.data())
def test_greedy_online_guess_is_still_sound(y1, y2, data):
    x = data.draw(st.lists(st.integers(0, 1), min_size=len(y1) + len(y2), max_size=len(y1) + len(y2)))
    guess = data.draw(st.integers(0, len(x)))
    assert greedy_split_online(C(y1), C(y2), x, guess) <= lcs_full(x, y1 + y2)


def test_classify_examples():
    # 1(x) = 0(y) = 0.3, 0(x) = 0.7
    x = C([1] * 3 + [0] * 7)
    y = C([0] * 3 + [1] * 7)
    assert classify_balance(x, y, BalanceParams(beta=Fraction(1, 100))) == "unbalanced"
    half = C([0] * 5 + [1] * 5)
    assert classify_balance(half, C([0] * 5 + [1] * 5), BalanceParams(beta=Fraction(1, 1000))) == "balanced"
    # alpha = 0.2, |1(x) - 0(y)| = 0.04 = 2 * delta * alpha
    x = C([1] * 24 + [0] * 76)
    y = C([0] * 20 + [1] * 80)
    assert not near_complement(x, y, Fraction(1, 10))
    assert classify_balance(x, y, BalanceParams(beta=Fraction(1, 1000))) == "balanced"


def test_estimate_equal_strings():
    rng = random.Random(4)
    x = [rng.randrange(2) for _ in range(80)]
    est, report = approx_lcs_binary(OnlineStream(x), x, backend="exact")
    assert est.value == 80
    assert report.online_symbols_read == 80


def test_estimate_reversed_blocks():
    x, y = [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0]
    assert lcs_full(x, y) == 3
    est, _ = approx_lcs_binary(OnlineStream(x), y)
    assert est.candidates["best-match"] == 3
    assert est.value == 3


def test_estimate_relabels_heavy_offline_string():
    x = [1, 1, 0, 1, 1, 1, 0, 1]
    y = [1, 1, 1, 0, 1, 1, 1, 1]
    est, report = approx_lcs_binary(OnlineStream(x), y)
    assert report.trace["relabelled"]
    assert lcs_full(x, y) / 2 <= est.value <= lcs_full(x, y)


def test_estimate_rejects_bad_input():
    with pytest.raises(ValueError):
        approx_lcs_binary(OnlineStream([0, 1]), [0, 1, 1])
    with pytest.raises(ValueError):
        approx_lcs_binary(OnlineStream([0, 2]), [0, 1])
    with pytest.raises(ValueError):
        approx_lcs_binary(OnlineStream([0, 1]), [0, 2])


def test_estimate_tiny_inputs():
    for n in range(4):
        for x, y in itertools.product(itertools.product((0, 1), repeat=n), repeat=2):
            est, report = approx_lcs_binary(OnlineStream(list(x)), list(y))
            lcs = lcs_full(x, y)
            assert lcs / 2 <= est.value <= lcs
            assert report.online_symbols_read == n


@settings(max_examples=150, deadline=None)
@given(_pairs(60))
def test_estimate_sound_and_half(pair):
    x, y = pair
    est, report = approx_lcs_binary(OnlineStream(x), y)
    lcs = lcs_full(x, y)
    assert est.value <= lcs
    assert 2 * est.value >= lcs
    assert all(v <= lcs for v in est.candidates.values())
    assert report.online_symbols_read == len(x)
