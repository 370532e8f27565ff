"""Grey subsets of Z_p and the first-non-grey scan."""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from delune.errors import CapExceeded
from delune.greysets import grey_index, is_grey, max_cyclic_gap, rainbow_index

SMALL_PRIMES = (3, 5, 7, 11, 13)


def test_max_cyclic_gap():
    assert max_cyclic_gap([0], 7) == 7
    assert max_cyclic_gap([0, 1], 7) == 6
    assert max_cyclic_gap([0, 3, 5], 7) == 3
    assert max_cyclic_gap(range(7), 7) == 1


def test_singletons_and_pairs_are_grey():
    for p in SMALL_PRIMES:
        for a in range(p):
            assert is_grey([a], p)
        for a, b in itertools.combinations(range(p), 2):
            assert is_grey([a, b], p)


def test_triples_are_grey_from_five_up():
    for p in SMALL_PRIMES[1:]:
        for s in itertools.combinations(range(p), 3):
            assert is_grey(s, p)


def test_full_residue_set_is_not_grey():
    for p in SMALL_PRIMES:
        assert not is_grey(range(p), p)


def test_is_grey_rejects_bad_modulus():
    for p in (2, 9, 15):
        with pytest.raises(ValueError):
            is_grey([0], p)


def test_is_grey_rejects_repeats():
    with pytest.raises(ValueError):
        is_grey([0, 7], 7)


@given(st.data())
def test_greyness_is_affine_invariant(data):
    p = data.draw(st.sampled_from(SMALL_PRIMES))
    size = data.draw(st.integers(min_value=1, max_value=p))
    s = data.draw(
        st.lists(
            st.integers(min_value=0, max_value=p - 1),
            min_size=size,
            max_size=size,
            unique=True,
        )
    )
    mu = data.draw(st.integers(min_value=1, max_value=p - 1))
    lam = data.draw(st.integers(min_value=0, max_value=p - 1))
    image = [(mu * v + lam) % p for v in s]
    assert is_grey(s, p) == is_grey(image, p)


def _first_non_grey_size_brute(p):
    """Reference scan with no {0,1} normalization at all."""
    for size in range(1, p + 1):
        for s in itertools.combinations(range(p), size):
            if not is_grey(s, p):
                return size
    raise AssertionError


def test_normalized_scan_agrees_with_brute_force():
    for p in SMALL_PRIMES:
        assert grey_index(p).algmincol == _first_non_grey_size_brute(p)


def test_known_indices():
    values = {3: 3, 5: 4, 7: 4, 11: 5, 13: 5, 17: 6, 23: 6}
    for p, algmincol in values.items():
        report = grey_index(p)
        assert report.algmincol == algmincol
        assert report.grey_index == algmincol - 1


def test_p19_first_non_grey_size_is_5():
    # Size 4 is exhaustively grey while {0, 1, 2, 5, 12} is not grey, so
    # the scan stops at 5.  Confirmed against a direct scan of all 342
    # affine maps for the witness and all C(17, 2) normalized 4-subsets.
    report = grey_index(19)
    assert report.algmincol == 5
    assert report.witness == (0, 1, 2, 5, 12)
    assert not is_grey(report.witness, 19)
    for rest in itertools.combinations(range(2, 19), 2):
        assert is_grey((0, 1) + rest, 19)


def test_witness_properties():
    for p in (7, 11, 13, 17):
        report = grey_index(p)
        assert len(report.witness) == report.algmincol
        assert not is_grey(report.witness, p)
        assert report.witness[:2] == (0, 1)
        assert report.scans[-1].size == report.algmincol
        assert report.scans[-1].grey < report.scans[-1].examined
        for scan in report.scans[:-1]:
            assert scan.grey == scan.examined


def test_rainbow_index():
    assert rainbow_index(3) == 3
    assert rainbow_index(13) == 5


def test_cap():
    with pytest.raises(CapExceeded):
        grey_index(47)
    assert grey_index(47, cap=47).p == 47


def test_report_json_shape():
    obj = grey_index(17).to_json_obj()
    assert obj["p"] == 17
    assert obj["grey_index"] == 5
    assert obj["algmincol"] == 6
    assert obj["witness"] == [0, 1, 2, 3, 5, 9]
    assert obj["scans"][-1]["size"] == 6
