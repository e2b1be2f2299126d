import pytest
from hypothesis import given, strategies as st

from youngcrystal.qchar import (
    CenteredPoly,
    CoefficientOverflow,
    NotUnimodal,
    QIntCombo,
    RECURSIONS,
    check_recursion_n2,
    check_recursion_n3,
    check_recursion_n4,
    peel,
    plus,
    q_binom,
    q_int,
    recursion_csv,
)


def test_q_int_small():
    assert q_int(1).coeffs == {0: 1}
    assert q_int(2).coeffs == {-1: 1, 1: 1}
    assert q_int(0).is_zero


def test_q_int_seven():
    p = q_int(7)
    assert sorted(p.coeffs) == [-6, -4, -2, 0, 2, 4, 6]
    assert p.at_one() == 7


def test_q_binom_fig1():
    assert q_binom(5, 2) == q_int(3) + q_int(7)


def test_q_binom_edges():
    for n in range(6):
        assert q_binom(n, n) == CenteredPoly({0: 1})
    assert q_binom(2, 3).is_zero
    assert q_binom(4, 2) == q_int(1) + q_int(5)
    assert q_binom(4, 2).at_one() == 6


def test_peel_examples():
    assert peel(q_binom(5, 2)).as_dict() == {3: 1, 7: 1}
    assert peel(q_int(9)).as_dict() == {9: 1}
    combo = peel(q_binom(7, 3))
    assert combo.as_dict() == {1: 1, 5: 1, 7: 1, 9: 1, 13: 1}
    assert combo.dimension() == 35
    assert str(combo) == "[13] + [9] + [7] + [5] + [1]"


def test_peel_rejects_non_characters():
    with pytest.raises(NotUnimodal):
        peel(CenteredPoly({-2: 1, 0: 0, 2: 1}))
    with pytest.raises(NotUnimodal):
        peel(CenteredPoly({-2: 2, 0: 1, 2: 2}))


def test_centered_poly_validation():
    with pytest.raises(ValueError):
        CenteredPoly({-1: 1, 0: 1, 1: 1})  # mixed parity
    with pytest.raises(ValueError):
        CenteredPoly({1: 1})  # not symmetric
    with pytest.raises(ValueError):
        CenteredPoly({0: -1})


def test_plus():
    assert plus(QIntCombo.of({3: 1, 7: 1}), 2).as_dict() == {5: 1, 9: 1}
    assert plus(QIntCombo.of({5: 1}), 4).as_dict() == {9: 1}
    f = QIntCombo.of([4, 4, 2])
    assert plus(f, 0) == f
    assert str(f) == "2[4] + [2]"


def test_recursion_examples():
    assert check_recursion_n2(5).equal
    assert peel(check_recursion_n2(5).lhs).as_dict() == {9: 1, 5: 1, 1: 1}
    assert check_recursion_n3(6).equal
    assert check_recursion_n4(4).equal
    assert check_recursion_n4(4).lhs == q_int(5)


def test_recursion_needs_r_at_least_n():
    with pytest.raises(ValueError):
        check_recursion_n4(3)


def test_recursion_csv_shape():
    text = recursion_csv([RECURSIONS[3](r) for r in range(3, 6)])
    lines = text.splitlines()
    assert lines[0] == "n,r,equal,decomposition"
    assert len(lines) == 4


def test_overflow_is_checked():
    with pytest.raises(CoefficientOverflow):
        q_binom(140, 70)


@given(st.integers(0, 30), st.integers(0, 8))
def test_q_binom_symmetric_and_dimension(top, bottom):
    from math import comb

    p = q_binom(top, bottom)
    assert p.at_one() == comb(top, bottom)
    assert q_binom(top, bottom) == (q_binom(top, top - bottom) if bottom <= top else p)


@given(st.integers(1, 30), st.integers(1, 6))
def test_q_binom_is_a_character(top, bottom):
    # Sylvester: the peel never goes negative and expands back
    p = q_binom(top, bottom)
    assert peel(p).expand() == p


@given(st.booleans(), st.dictionaries(st.integers(0, 12), st.integers(1, 5), max_size=6))
def test_peel_inverts_expand(odd, halves):
    # lengths of one parity, so the sum is a genuine character
    combo = QIntCombo.of({2 * h + 1 if odd else 2 * h + 2: m for h, m in halves.items()})
    assert peel(combo.expand()) == combo


@given(st.dictionaries(st.integers(1, 20), st.integers(1, 3), max_size=5), st.integers(0, 10))
def test_plus_adds_length(parts, j):
    combo = QIntCombo.of(parts)
    shifted = plus(combo, j)
    assert shifted.size() == combo.size()
    assert shifted.dimension() == combo.dimension() + j * combo.size()
