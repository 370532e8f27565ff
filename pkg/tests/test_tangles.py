"""Tests for the open 2-string tangle engine."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delune.diagrams import Diagram
from delune.errors import InvalidDiagram
from delune.invariants import kauffman_bracket
from delune.laurent import LaurentPoly
from delune.tangles import (
    LOOP, NE, NW, PAIR_H, PAIR_V, SE, SW, Tangle, compose_h, lune_components)


def boundary_colors(t: Tangle):
    forms = t.forms
    assert forms is not None
    b = t.boundary
    return (forms[b[NW]], forms[b[NE]], forms[b[SE]], forms[b[SW]])


class TestTwist:
    def test_counts_and_regions(self):
        for k in range(1, 7):
            t = Tangle.from_twist(k)
            assert t.n == k
            assert t.region_degrees == {"N": k, "E": 1, "S": k, "W": 1}
            assert len(t.interior_lunes) == k - 1

    def test_forms_are_arithmetic(self):
        # Colors along a twist grow by one per crossing: nw=1, ne=k+1,
        # se=k, sw=0.
        for k in range(1, 7):
            t = Tangle.from_twist(k)
            assert boundary_colors(t) == (1, k + 1, k, 0)

    def test_strand_pairing_alternates(self):
        x = frozenset({frozenset({0, 2}), frozenset({1, 3})})
        h = frozenset({frozenset({0, 1}), frozenset({2, 3})})
        for k in range(1, 7):
            t = Tangle.from_twist(k)
            assert t.strand_pairing() == (x if k % 2 else h)

    def test_single_crossing_bracket(self):
        t = Tangle.from_twist(1)
        assert t.bracket == {
            PAIR_H: LaurentPoly.monomial(1),
            PAIR_V: LaurentPoly.monomial(-1),
        }

    def test_closure_matches_closed_bracket(self):
        # Joining nw-ne and sw-se turns the twist into the closed braid
        # on [1]*k, whose bracket the diagram engine computes
        # independently.
        for k in range(1, 7):
            t = Tangle.from_twist(k)
            closed = kauffman_bracket(Diagram.from_braid([1] * k))
            combo = (t.bracket.get(PAIR_H, LaurentPoly.zero()) * LOOP
                     + t.bracket.get(PAIR_V, LaurentPoly.zero()))
            assert combo == closed

    def test_mirror_inverts_bracket_variable(self):
        for k in (1, 2, 3, 4):
            t = Tangle.from_twist(k)
            m = t.mirrored()
            for pair in (PAIR_H, PAIR_V):
                a = t.bracket.get(pair, LaurentPoly.zero())
                b = m.bracket.get(pair, LaurentPoly.zero())
                assert a.mirror() == b


class TestValidation:
    def test_closed_component_rejected(self):
        # A crossing closed onto itself leaves a circle beside the two
        # boundary strands and must not validate.
        with pytest.raises(InvalidDiagram):
            Tangle(crossings=((0, 0, 1, 1),), parities=(0,),
                   boundary=(2, 2, 3, 3))

    def test_nonplanar_rejected(self):
        with pytest.raises(InvalidDiagram):
            Tangle(crossings=((0, 1, 2, 3), (0, 2, 1, 3)), parities=(0, 0),
                   boundary=(4, 4, 5, 5))

    def test_json_round_trip(self):
        t = Tangle.from_twist(3).mirrored()
        assert Tangle.from_json_obj(t.to_json_obj()) == t


class TestKey:
    def test_key_is_framing_invariant(self):
        t = Tangle.from_twist(4)
        relabeled = Tangle.from_json_obj({
            "crossings": [[e + 10 for e in c] for c in t.crossings],
            "parities": list(t.parities),
            "boundary": [e + 10 for e in t.boundary],
        })
        assert relabeled.key() == t.key()

    def test_key_separates_mirror(self):
        t = Tangle.from_twist(2)
        assert t.key() != t.mirrored().key()

    def test_key_carries_forms_when_given(self):
        t = Tangle.from_twist(2)
        assert t.key(t.forms) != t.key()


class TestSymmetries:
    def test_rotation_is_involutive(self):
        t = Tangle.from_twist(3)
        assert t.reframed_180().reframed_180().key() == t.key()

    def test_flip_is_involutive(self):
        t = Tangle.from_twist(3)
        assert t.flipped_vertical().flipped_vertical().key() == t.key()

    def test_twist_is_rotation_symmetric(self):
        for k in (1, 2, 3, 4):
            t = Tangle.from_twist(k)
            assert t.reframed_180().key() == t.key()


class TestCompose:
    def test_two_singles_make_twist(self):
        one = Tangle.from_twist(1)
        assert compose_h(one, one).key() == Tangle.from_twist(2).key()

    def test_chain_of_singles(self):
        one = Tangle.from_twist(1)
        cur = one
        for k in range(2, 6):
            cur = compose_h(cur, one)
            assert cur.key() == Tangle.from_twist(k).key()

    def test_compose_adds_bracket_degrees(self):
        a = Tangle.from_twist(2)
        b = Tangle.from_twist(3)
        c = compose_h(a, b)
        assert c.n == 5
        assert c.key() == Tangle.from_twist(5).key()


class TestMoves:
    def test_r1_round_trip(self):
        t = Tangle.from_twist(3)
        added = list(t.r1_additions())
        assert added
        for desc, child in added:
            assert child.n == t.n + 1
            back = [c for _, c in child.r1_removals() if c.key() == t.key()]
            assert back, desc

    def test_twist_bigons_are_irreducible(self):
        # Same-sign twists alternate over and under, so their lunes never
        # admit a type II removal; otherwise the trefoil would simplify.
        for k in (2, 3, 4):
            assert list(Tangle.from_twist(k).r2_removals()) == []

    def test_r2_round_trip(self):
        t = Tangle.from_twist(3)
        pushed = list(t.r2_pushes(max_n=7))
        assert pushed
        for desc, child in pushed:
            assert child.n == t.n + 2
            back = [c for _, c in child.r2_removals() if c.key() == t.key()]
            assert back, desc

    def test_r3_round_trip(self):
        t = Tangle.from_twist(3)
        seen = 0
        for desc, mid in t.r2_pushes(max_n=7):
            for d3, slid in mid.r3_slides():
                seen += 1
                assert slid.n == mid.n
                back = [c for _, c in slid.r3_slides()
                        if c.key() == mid.key()]
                assert back, (desc, d3)
        assert seen > 0

    def test_moves_preserve_boundary_colors(self):
        t = Tangle.from_twist(3)
        want = boundary_colors(t)
        count = 0
        for desc, child in t.neighbours(max_n=7):
            count += 1
            assert boundary_colors(child) == want, desc
        assert count > 10

    def test_moves_preserve_strand_pairing(self):
        t = Tangle.from_twist(4)
        want = t.strand_pairing()
        for desc, child in t.neighbours(max_n=8):
            assert child.strand_pairing() == want, desc

    @settings(max_examples=12, deadline=None)
    @given(st.integers(min_value=1, max_value=4),
           st.randoms(use_true_random=False))
    def test_random_walk_keeps_invariants(self, k, rng):
        # Any short Reidemeister walk preserves the boundary colors and
        # the connectivity of the two strands.
        t = Tangle.from_twist(k)
        colors = boundary_colors(t)
        pairing = t.strand_pairing()
        for _ in range(3):
            kids = [c for _, c in t.neighbours(max_n=k + 4)]
            if not kids:
                break
            t = rng.choice(kids)
        assert boundary_colors(t) == colors
        assert t.strand_pairing() == pairing


class TestLuneComponents:
    def test_twist_is_one_component(self):
        t = Tangle.from_twist(4)
        assert lune_components(t) == [[0, 1, 2, 3]]

    def test_lune_free_tangle_has_no_components(self):
        assert lune_components(Tangle.from_twist(1)) == []
