import pytest

from hstab.scomplex import (AugmentedSemiSimplicialSet, ChainComplex, SemiSimplicialSet, associated_semisimplicial,
                            boundary_of_simplex, injective_words, octahedron, ordered_simplex,
                            simplicial_chain_complex)
from hstab.specseq import (LevelwiseChains, d1, d1_squared_violations, e1_page, e2_page, total_homology,
                           vanishing_line_check)

over_point = AugmentedSemiSimplicialSet.over_point


def test_injective_words_two_letters_e1_and_d1():
    P = e1_page(over_point(injective_words(2)))
    assert {k: v[0] for k, v in P.entries.items()} == {(-1, 0): 1, (0, 0): 2, (1, 0): 2}
    D = d1(P)
    # words (1,2), (2,1) have faces d_0 = last letter, d_1 = first letter
    assert D[(1, 0)] == [[-1, 1], [1, -1]]
    assert D[(0, 0)] == [[1, 1]]


def test_injective_words_two_letters_e2():
    X = over_point(injective_words(2))
    plain = e2_page(e1_page(X, augmented=False))
    assert plain.support() == [(0, 0), (1, 0)] and plain.rank(0, 0) == plain.rank(1, 0) == 1
    aug = e2_page(e1_page(X))
    assert aug.support() == [(1, 0)] and aug.rank(1, 0) == 1


def test_single_level_gives_augmentation_map():
    X = over_point(SemiSimplicialSet((("a", "b", "c"),), ((),)))
    P = e1_page(X)
    assert d1(P) == {(0, 0): [[1, 1, 1]]}
    assert e2_page(P).support() == [(0, 0)] and e2_page(P).rank(0, 0) == 2


@pytest.mark.parametrize("m", range(1, 6))
def test_d1_squares_to_zero_and_euler(m):
    X = over_point(injective_words(m))
    P1 = e1_page(X)
    assert d1_squared_violations(P1) == []
    P2 = e2_page(P1)
    chi_total = total_homology(X)["augmented"].euler_characteristic()
    assert P1.euler_characteristic() == P2.euler_characteristic() == chi_total


def test_d1_squared_zero_on_octahedron():
    X = over_point(associated_semisimplicial(octahedron()))
    assert d1_squared_violations(e1_page(X)) == []


@pytest.mark.parametrize("m", range(1, 6))
def test_vanishing_line_for_injective_words(m):
    X = over_point(injective_words(m))
    assert vanishing_line_check(X, m - 2)
    if m >= 2:
        assert not vanishing_line_check(X, m - 1)


def test_vanishing_line_trivial_cases():
    X = over_point(ordered_simplex(1))
    assert vanishing_line_check(X, -1)
    two = AugmentedSemiSimplicialSet(ordered_simplex(1), ("a", "b"), (0, 0))
    assert not vanishing_line_check(two, 0)


def test_total_homology_examples():
    assert total_homology(over_point(injective_words(2)))["absolute"].betti_numbers() == {0: 1, 1: 1}
    assert total_homology(over_point(ordered_simplex(2)))["absolute"].betti_numbers() == {0: 1}


@pytest.mark.parametrize("make", [lambda: injective_words(3), lambda: ordered_simplex(3),
                                  lambda: associated_semisimplicial(boundary_of_simplex(3))])
def test_single_row_e2_matches_total(make):
    X = over_point(make())
    P2 = e2_page(e1_page(X, augmented=False))
    H = total_homology(X)["absolute"]
    for p in range(X.base.top + 1):
        assert P2.rank(p, 0) == H.betti(p)


def test_levelwise_input_is_homology_of_level():
    C = simplicial_chain_complex(boundary_of_simplex(3))
    P = e1_page(LevelwiseChains({0: C}))
    assert {k: v[0] for k, v in P.entries.items() if v[0]} == {(0, 0): 1, (0, 2): 1}
    assert e2_page(P).entries == P.entries  # zero d1


def test_table_is_aligned():
    lines = e1_page(over_point(injective_words(3))).table()
    assert lines[-1].startswith("p=") and len({len(l) for l in lines}) == 1
