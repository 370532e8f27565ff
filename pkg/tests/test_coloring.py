import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delune.coloring import (
    ColoringSpace,
    class_representatives,
    coloring_rank_mod_p,
    coloring_space,
    count_colorings,
    determinant,
    edge_colors_from_arcs,
    is_coloring,
    min_palette,
    n_classes,
    relation_matrix,
)
from delune.diagrams import Diagram
from delune.snf import smith_normal_form

TREFOIL = Diagram.from_braid([1, 1, 1])
FIG8 = Diagram.from_braid([1, -2, 1, -2])
HOPF = Diagram.from_braid([1, 1])
CINQ = Diagram.from_braid([1, 1, 1, 1, 1])


# -- Smith form ------------------------------------------------------------

def test_snf_known_cases():
    assert smith_normal_form([[2, -2], [-2, 2]]) == [2]
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([]) == []
    assert smith_normal_form([[0, 0], [0, 0]]) == []


def test_snf_divisibility_chain():
    divs = smith_normal_form([[6, 10], [15, 4], [2, 0]])
    for a, b in zip(divs, divs[1:]):
        assert b % a == 0


int_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=n, max_size=n),
        min_size=1,
        max_size=4,
    )
)


@settings(deadline=None, max_examples=30)
@given(int_matrices)
def test_snf_matches_sympy(rows):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as snf_ref

    ours = smith_normal_form(rows)
    ref = snf_ref(sympy.Matrix(rows))
    ref_divs = sorted(abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i])
    assert sorted(ours) == ref_divs
    for a, b in zip(ours, ours[1:]):
        assert b % a == 0


# -- determinants ----------------------------------------------------------

def test_known_determinants():
    assert determinant(TREFOIL) == 3
    assert determinant(FIG8) == 5
    assert determinant(HOPF) == 2
    assert determinant(CINQ) == 5
    assert determinant(Diagram.unknot()) == 1


def test_determinant_ignores_mirror_and_switch_parity():
    assert determinant(TREFOIL.reflected()) == 3


def test_relation_rows_sum_to_zero():
    for d in (TREFOIL, FIG8, HOPF):
        for row in relation_matrix(d):
            assert sum(row) == 0


# -- counting --------------------------------------------------------------

def test_counts_include_trivial():
    assert count_colorings(TREFOIL, 3) == 9
    assert count_colorings(TREFOIL, 5) == 5
    assert count_colorings(FIG8, 5) == 25
    assert count_colorings(Diagram.unknot(), 7) == 7


def test_count_matches_mod_p_kernel_dimension():
    for d in (TREFOIL, FIG8, HOPF, CINQ):
        for p in (2, 3, 5, 7):
            k = coloring_rank_mod_p(d, p)
            assert count_colorings(d, p) == p ** k


def test_has_nontrivial():
    assert coloring_space(TREFOIL).has_nontrivial(3)
    assert not coloring_space(TREFOIL).has_nontrivial(5)
    assert coloring_space(FIG8).has_nontrivial(5)


@given(st.integers(min_value=2, max_value=30))
def test_count_multiplicative_structure(m):
    # counting via gcds of the divisors must agree with brute force mod m
    d = TREFOIL
    space = coloring_space(d)
    arcs = d.n_arcs
    brute = 0
    for x in range(m):
        for y in range(m):
            for z in range(m):
                vec = (x, y, z)
                rows = relation_matrix(d)
                if all(sum(a * v for a, v in zip(row, vec)) % m == 0 for row in rows):
                    brute += 1
    assert arcs == 3
    assert space.count(m) == brute


# -- palettes --------------------------------------------------------------

def test_class_counts():
    assert n_classes(TREFOIL, 3) == 1
    assert n_classes(TREFOIL, 5) == 0
    assert n_classes(FIG8, 5) == 1
    assert n_classes(HOPF, 2) == 1


def test_min_palette_values():
    assert min_palette(TREFOIL, 3).size == 3
    assert min_palette(FIG8, 5).size == 4
    assert min_palette(CINQ, 5).size == 5
    assert min_palette(TREFOIL, 5) is None
    assert min_palette(Diagram.unknot(), 3) is None


def test_min_palette_witness_is_a_coloring():
    res = min_palette(FIG8, 5)
    assert is_coloring(FIG8, res.edge_colors, 5)
    assert len({v % 5 for v in res.edge_colors.values()}) == res.size


def test_representatives_are_nontrivial_colorings():
    for d, p in ((TREFOIL, 3), (FIG8, 5), (CINQ, 5)):
        reps = list(class_representatives(d, p))
        assert len(reps) == n_classes(d, p)
        for vec in reps:
            colors = edge_colors_from_arcs(d, vec)
            assert is_coloring(d, colors, p)
            assert len(set(vec)) > 1


def test_connected_sum_has_extra_classes():
    # granny knot: coloring space mod 3 has rank 3, so p + 1 = 4 classes
    granny = Diagram.from_braid([1, 1, 1, 2, 2, 2], strands=3)
    assert determinant(granny) == 9
    assert coloring_rank_mod_p(granny, 3) == 3
    assert n_classes(granny, 3) == 4
    reps = list(class_representatives(granny, 3))
    assert len(reps) == 4
    # a minimum over classes can beat the single-class value
    assert min_palette(granny, 3).size == 3
