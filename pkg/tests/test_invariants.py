import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delune.coloring import determinant
from delune.diagrams import Diagram
from delune.errors import CapExceeded
from delune.invariants import (
    Fingerprint,
    bracket_state_sum,
    determinant_from_polynomial,
    kauffman_bracket,
    normalized_polynomial,
)
from delune.laurent import LaurentPoly

TREFOIL = Diagram.from_braid([1, 1, 1])
FIG8 = Diagram.from_braid([1, -2, 1, -2])
HOPF = Diagram.from_braid([1, 1])


def test_unknot_bracket():
    assert kauffman_bracket(Diagram.unknot()) == LaurentPoly.one()


def test_kink_brackets():
    assert kauffman_bracket(Diagram.parse("X 0 0 1 1 +1")).key() == "3:-1"
    assert kauffman_bracket(Diagram.parse("X 0 1 1 0 -1")).key() == "-3:-1"


def test_kink_normalizes_away():
    for text in ("X 0 0 1 1 +1", "X 0 1 1 0 -1"):
        assert normalized_polynomial(Diagram.parse(text)) == LaurentPoly.one()


def test_figure_eight_polynomial():
    # the classic symmetric five-term polynomial
    f = normalized_polynomial(FIG8)
    assert f.key() == "-8:1,-4:-1,0:1,4:-1,8:1"
    assert f == f.mirror()


def test_trefoil_polynomial_is_chiral():
    f = normalized_polynomial(TREFOIL)
    assert f != f.mirror()
    assert normalized_polynomial(TREFOIL.reflected()) == f.mirror()


def test_hopf_polynomial():
    assert normalized_polynomial(HOPF).key() == "-10:-1,-2:-1"


def test_polynomial_invariant_under_reidemeister_like_presentations():
    # same knot, different braid words
    a = normalized_polynomial(Diagram.from_braid([1, 1, 1]))
    b = normalized_polynomial(Diagram.from_braid([1, 1, 1, 2, -1, -2], strands=3))
    assert a == b


def test_determinant_cross_check():
    for d in (TREFOIL, FIG8, HOPF, Diagram.from_braid([1] * 7)):
        f = normalized_polynomial(d)
        assert determinant_from_polynomial(f) == determinant(d)


def test_cap_raises():
    big = Diagram.from_braid([1] * 9)
    with pytest.raises(CapExceeded):
        kauffman_bracket(big, cap=5)
    with pytest.raises(CapExceeded):
        bracket_state_sum(big, cap=5)


@settings(deadline=None, max_examples=40)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=2, max_size=8))
def test_contraction_matches_state_sum(word):
    if not {1, 2} <= {abs(w) for w in word}:
        word = word + [1, 2]
    d = Diagram.from_braid(word, strands=3)
    assert kauffman_bracket(d) == bracket_state_sum(d)


@settings(deadline=None, max_examples=25)
@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=8))
def test_mirror_symmetry_property(word):
    d = Diagram.from_braid(word)
    assert normalized_polynomial(d.reflected()) == normalized_polynomial(d).mirror()


def test_fingerprint_mirror_blind():
    fp = Fingerprint.of(TREFOIL)
    assert fp == Fingerprint.of(TREFOIL.reflected())
    assert fp.det == 3
    assert fp.components == 1
    assert Fingerprint.of(HOPF).components == 2


def test_fingerprint_separates_small_knots():
    prints = {
        Fingerprint.of(d)
        for d in (
            Diagram.unknot(),
            TREFOIL,
            FIG8,
            Diagram.from_braid([1] * 5),
            Diagram.from_braid([1] * 7),
        )
    }
    assert len(prints) == 5
