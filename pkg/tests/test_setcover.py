"""Exact set cover against exhaustive search."""
from itertools import combinations

from hypothesis import given, settings, strategies as st

from eqcat.setcover import has_cover_of_size, min_set_cover


def brute_min_cover(universe, sets):
    if universe == 0:
        return 0
    for k in range(1, len(sets) + 1):
        for combo in combinations(sets, k):
            acc = 0
            for s in combo:
                acc |= s
            if acc & universe == universe:
                return k
    return None


instances = st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just((1 << n) - 1), st.lists(st.integers(0, (1 << n) - 1), max_size=9)))


@given(instances)
@settings(max_examples=300)
def test_min_cover_is_minimum(inst):
    universe, sets = inst
    res = min_set_cover(universe, sets)
    expect = brute_min_cover(universe, sets)
    if expect is None:
        assert res is None
        return
    assert len(res) == expect
    acc = 0
    for i in res:
        acc |= sets[i]
    assert acc & universe == universe


@given(instances, st.integers(0, 5))
@settings(max_examples=200)
def test_limit_and_decision_agree(inst, k):
    universe, sets = inst
    expect = brute_min_cover(universe, sets)
    limited = min_set_cover(universe, sets, limit=k)
    ok = expect is not None and expect <= k
    assert (limited is not None) == ok
    assert has_cover_of_size(universe, sets, k) == ok


def test_deterministic_ties():
    sets = [0b0011, 0b1100, 0b0110, 0b1001]
    assert min_set_cover(0b1111, sets) == min_set_cover(0b1111, list(sets))
    assert min_set_cover(0, sets) == []
