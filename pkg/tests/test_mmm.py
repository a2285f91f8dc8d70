import pytest
from hypothesis import given, settings, strategies as st

from hstab import mmm
from oracles import char_class_degrees, count_monomials


def test_n3_prefix():
    assert mmm.generator_degrees(3, 10) == [2, 2, 4, 6, 6, 6, 8, 8, 10, 10, 10, 10]


def test_n3_degree_twelve_has_three_classes():
    a = mmm.CharClassAlphabet(3)
    names = [mmm.monomial_name(a, e) for e, d in mmm.monomials(a, 18) if d == 18]
    assert sorted(names) == ["e*p1*p2", "e*p1^3", "e^3"]
    assert mmm.generator_degrees(3, 12).count(12) == 3


def test_n4():
    assert mmm.generator_degrees(4, 12) == [4, 8, 8, 8, 12, 12]
    assert mmm.generator_degrees(3, 1) == []


def test_alphabet():
    assert mmm.CharClassAlphabet(3).generators == [("e", 6), ("p1", 4), ("p2", 8)]
    assert mmm.CharClassAlphabet(5).generators == [("e", 10), ("p2", 8), ("p3", 12), ("p4", 16)]
    with pytest.raises(mmm.MmmError):
        mmm.CharClassAlphabet(2)


def test_hilbert_examples():
    assert mmm.hilbert_series([2, 2], 6) == [1, 0, 2, 0, 3, 0, 4]
    assert mmm.hilbert_series([], 3) == [1, 0, 0, 0]
    assert mmm.hilbert_series(mmm.generator_degrees(3, 6), 6) == [1, 0, 2, 0, 4, 0, 9]
    with pytest.raises(mmm.MmmError):
        mmm.hilbert_series([3], 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_degrees_match_brute_force(n):
    dmax = 24
    gens = char_class_degrees(n)
    want = []
    for d in range(2 * n + 1, dmax + 2 * n + 1):
        want += [d - 2 * n] * count_monomials(gens, d)
    assert mmm.generator_degrees(n, dmax) == want


@pytest.mark.parametrize("n", [3, 4, 5])
def test_hilbert_matches_monomial_count(n):
    degs = mmm.generator_degrees(n, 20)
    assert mmm.hilbert_series(degs, 20) == [count_monomials(degs, t) for t in range(21)]


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 8), st.integers(0, 20), st.integers(0, 10))
def test_prefix_stability(n, d, extra):
    short = mmm.generator_degrees(n, d)
    assert mmm.generator_degrees(n, d + extra)[:len(short)] == short
