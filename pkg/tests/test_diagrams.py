import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from delune.diagrams import Crossing, Diagram, FlatDiagram, is_over_slot, strand_exit
from delune.errors import InvalidDiagram

TREFOIL = Diagram.from_braid([1, 1, 1])
HOPF = Diagram.from_braid([1, 1])
FIG8 = Diagram.from_braid([1, -2, 1, -2])
NEG_KINK = Diagram.parse("X 0 1 1 0 -1")
POS_KINK = Diagram.parse("X 0 0 1 1 +1")


# -- face structure -------------------------------------------------------

def test_trefoil_faces():
    assert TREFOIL.face_degrees == [2, 2, 2, 3, 3]


def test_hopf_faces_all_bigons():
    assert HOPF.face_degrees == [2, 2, 2, 2]


def test_kink_faces():
    assert NEG_KINK.face_degrees == [1, 1, 2]
    assert POS_KINK.face_degrees == [1, 1, 2]


def test_figure_eight_faces():
    assert FIG8.face_degrees == [2, 2, 3, 3, 3, 3]


def test_face_count_is_euler_forced():
    for d in (TREFOIL, HOPF, FIG8, NEG_KINK):
        assert len(d.faces) == d.n + 2


def test_face_darts_cover_every_corner_once():
    seen = [d for f in FIG8.faces for d in f.darts]
    assert len(seen) == len(set(seen)) == 4 * FIG8.n


# -- components, arcs, writhe ---------------------------------------------

def test_component_counts():
    assert TREFOIL.n_components == 1
    assert HOPF.n_components == 2
    assert FIG8.n_components == 1
    assert Diagram.unknot().n_components == 1


def test_arc_count_equals_crossings_for_knots():
    # each under-passage ends one arc, so arcs == crossings here
    assert TREFOIL.n_arcs == 3
    assert FIG8.n_arcs == 4
    assert NEG_KINK.n_arcs == 1


def test_writhe():
    assert TREFOIL.writhe == 3
    assert TREFOIL.reflected().writhe == -3
    assert FIG8.writhe == 0


# -- lune classification ---------------------------------------------------

def test_trefoil_is_one_cyclic_tassel():
    rep = TREFOIL.lune_report
    assert len(rep.tassels) == 1
    site = rep.tassels[0]
    assert site.crossings == (0, 1, 2)
    assert site.cyclic and site.sign == 1 and len(site.lunes) == 3
    assert not rep.reducible_pairs and not rep.curls and not rep.stray


def test_hopf_is_a_cyclic_pair():
    rep = HOPF.lune_report
    assert len(rep.tassels) == 1
    assert rep.tassels[0].cyclic
    assert rep.tassels[0].length == 2
    assert rep.lune_count == 4


def test_figure_eight_has_two_linear_tassels():
    rep = FIG8.lune_report
    assert [(t.crossings, t.sign, t.cyclic) for t in rep.tassels] == [
        ((0, 2), 1, False),
        ((1, 3), -1, False),
    ]


def test_pushed_over_strand_is_reducible_not_twist():
    rep = Diagram.from_braid([1, -1]).lune_report
    assert not rep.tassels
    assert len(rep.reducible_pairs) == 4


def test_kinks_are_curls():
    assert len(NEG_KINK.lune_report.curls) == 1
    assert len(POS_KINK.lune_report.curls) == 1


def test_long_twist_chain():
    d = Diagram.from_braid([2] * 5 + [1], strands=3)
    sites = d.lune_report.tassels
    assert any(t.length == 5 and not t.cyclic for t in sites)


def test_lune_free_detection():
    assert not TREFOIL.is_lune_free
    assert Diagram.unknot().is_lune_free


# -- validation ------------------------------------------------------------

def test_rejects_bad_edge_multiplicity():
    with pytest.raises(InvalidDiagram, match="endpoints"):
        Diagram.parse("X 0 1 2 3 +1")


def test_rejects_nonspherical():
    with pytest.raises(InvalidDiagram, match="spherical"):
        Diagram.parse("X 0 1 0 1 +1")


def test_rejects_split_diagram():
    a = [(0, 2, 3, 1), (2, 4, 5, 3), (4, 0, 1, 5)]
    b = [tuple(e + 6 for e in edges) for edges in a]
    xs = tuple(Crossing(t, 1) for t in a + b)
    with pytest.raises(InvalidDiagram, match="split"):
        Diagram(xs)


def test_rejects_inconsistent_orientation():
    # valid Hopf data except the second sign, which flips its entry slots
    with pytest.raises(InvalidDiagram, match="oriented"):
        Diagram.parse("X 0 2 3 1 +1\nX 2 0 1 3 -1")


def test_rejects_bad_sign_and_shape():
    with pytest.raises(InvalidDiagram):
        Crossing((0, 1, 2, 3), 2)
    with pytest.raises(InvalidDiagram):
        Diagram.parse("X 0 1 2 +1")
    with pytest.raises(InvalidDiagram):
        Diagram.parse("")


def test_rejects_split_unlink_and_empty():
    with pytest.raises(InvalidDiagram):
        Diagram((), free_circles=2)
    with pytest.raises(InvalidDiagram):
        Diagram((), free_circles=0)


def test_rejects_braid_with_unused_strand():
    with pytest.raises(InvalidDiagram, match="split"):
        Diagram.from_braid([1], strands=3)


# -- parsing and serialization ---------------------------------------------

def test_text_roundtrip():
    for d in (TREFOIL, FIG8, NEG_KINK):
        assert Diagram.parse(d.to_text()) == d


def test_json_roundtrip():
    for d in (TREFOIL, HOPF, Diagram.unknot()):
        assert Diagram.parse(json.dumps(d.to_json_obj())) == d


def test_parse_accepts_flat_lists_and_comments():
    d = Diagram.parse('{"crossings": [[0, 0, 1, 1, 1]]}')
    assert d == POS_KINK
    d2 = Diagram.parse("# a kink\nX 0 0 1 1 +1  # trailing\n")
    assert d2 == POS_KINK


# -- canonical codes -------------------------------------------------------

def test_code_ignores_edge_labels_and_crossing_order():
    base = TREFOIL.canonical_code()
    relabeled = Diagram(tuple(
        Crossing(tuple(e + 40 for e in x.edges), x.sign) for x in TREFOIL.crossings
    ))
    assert relabeled.canonical_code() == base
    rotated = Diagram(TREFOIL.crossings[1:] + TREFOIL.crossings[:1])
    assert rotated.canonical_code() == base


def test_code_is_mirror_blind_but_knot_sensitive():
    assert TREFOIL.canonical_code() == TREFOIL.reflected().canonical_code()
    assert TREFOIL.canonical_code() != FIG8.canonical_code()
    assert TREFOIL.canonical_code() != Diagram.from_braid([1, 1, 1, 1, 1]).canonical_code()


def test_switched_crossing_changes_code_and_writhe():
    sw = TREFOIL.with_crossing_switched(0)
    assert sw.writhe == 1
    assert sw.canonical_code() != TREFOIL.canonical_code()


# -- shadows ---------------------------------------------------------------

def _alternates(d: Diagram) -> bool:
    sh = d.shadow()
    for walk in sh.strand_walks:
        unders = []
        for c, i in walk:
            sign = d.crossings[c].sign
            unders.append(not is_over_slot(i))
        m = len(unders)
        if any(unders[t] == unders[(t + 1) % m] for t in range(m)):
            return False
    return True


def test_shadow_lifts_are_valid():
    sh = TREFOIL.shadow()
    for bits in range(2 ** sh.n):
        d = sh.assign(bits)
        assert d.face_degrees == [2, 2, 2, 3, 3]


def test_alternating_lift():
    for d in (TREFOIL, FIG8, Diagram.from_braid([1, 1, 2, 2], strands=3)):
        sh = d.shadow()
        alt = sh.assign(sh.alternating_bits())
        assert _alternates(alt)


def test_shadow_components_match():
    assert HOPF.shadow().n_components == 2
    assert FIG8.shadow().n_components == 1


two_strand_words = st.lists(st.sampled_from([1, -1]), min_size=1, max_size=9)


@given(two_strand_words)
def test_braid_closures_validate(word):
    d = Diagram.from_braid(word)
    assert len(d.faces) == d.n + 2
    assert d.n_components in (1, 2)
    assert Diagram.parse(d.to_text()) == d


@given(two_strand_words)
def test_code_survives_random_relabeling(word):
    d = Diagram.from_braid(word)
    labels = d.edge_labels
    rng = random.Random(len(word))
    shuffled = list(labels)
    rng.shuffle(shuffled)
    lookup = dict(zip(labels, shuffled))
    jumbled = Diagram(tuple(
        Crossing(tuple(lookup[e] for e in x.edges), x.sign) for x in d.crossings
    ))
    assert jumbled.canonical_code() == d.canonical_code()


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=2, max_size=10))
def test_three_strand_closures(word):
    if not {1, 2} <= {abs(w) for w in word}:
        word = word + [1, 2]
    d = Diagram.from_braid(word, strands=3)
    assert len(d.faces) == d.n + 2
    sh = d.shadow()
    assert sh.canonical_code() == d.renumbered().shadow().canonical_code()
