from fractions import Fraction

import pytest
from hypothesis import example, given
from hypothesis.strategies import composite, integers

from jacquetcalc.segment import (
    HALF, HalfInt, Segment, SegmentError, dual_segment, e_center, half, mk_segment, seg,
    segment_relations, segment_text,
)


@composite
def segments(draw, lo=-9, hi=9):
    x = draw(integers(min_value=lo, max_value=hi))
    n = draw(integers(min_value=0, max_value=6))
    return Segment(HalfInt(2 * x + 1), HalfInt(2 * (x + n) + 1))


@pytest.mark.parametrize('text,twice', [
    ('1/2', 1),
    ('-1/2', -1),
    ('3', 6),
    ('-5/2', -5),
    (' 7/2 ', 7),
])
def test_halfint_parse(text, twice):
    assert HalfInt.parse(text) == HalfInt(twice)


@pytest.mark.parametrize('text', ['1/3', 'x', '1.5', '', '1/'])
def test_halfint_parse_rejects(text):
    with pytest.raises(SegmentError):
        HalfInt.parse(text)


def test_halfint_of():
    assert half(2) == HalfInt(4)
    assert half(Fraction(3, 2)) == HalfInt(3)
    assert half(HALF) is HALF
    with pytest.raises(SegmentError):
        half(Fraction(1, 3))
    with pytest.raises(TypeError):
        half(True)


def test_halfint_arithmetic():
    assert str(HALF + 1) == '3/2'
    assert str(1 - HALF) == '1/2'
    assert -HALF == HalfInt(-1)
    assert abs(HalfInt(-5)) == HalfInt(5)
    assert HalfInt(1).steps_to(HalfInt(5)) == 2
    with pytest.raises(SegmentError):
        HalfInt(1).steps_to(HalfInt(2))


def test_halfint_compares_as_a_number():
    assert HalfInt(-1) < 0 < HALF
    assert HalfInt(4) == 2 and HalfInt(4) >= 2 and not HalfInt(4) > 2
    assert HALF == Fraction(1, 2)
    assert HALF < Fraction(2, 3) and HALF > Fraction(1, 3)
    assert HalfInt(3) != Fraction(1, 3)
    assert hash(HalfInt(4)) == hash(2)
    assert hash(HALF) == hash(Fraction(1, 2))
    assert sorted([HalfInt(3), 0, HalfInt(-1)]) == [HalfInt(-1), 0, HalfInt(3)]
    assert HALF != '1/2'


@given(integers(min_value=-40, max_value=40), integers(min_value=-40, max_value=40))
def test_halfint_order_matches_fractions(x, y):
    assert (HalfInt(x) < HalfInt(y)) == (Fraction(x, 2) < Fraction(y, 2))
    assert (HalfInt(x) <= y) == (Fraction(x, 2) <= y)
    assert (HalfInt(x) == Fraction(y, 2)) == (x == y)


def test_mk_segment():
    assert mk_segment('1/2', '5/2') == Segment(HalfInt(1), HalfInt(5))
    assert mk_segment('3/2', '1/2') is None
    with pytest.raises(SegmentError):
        mk_segment('5/2', '1/2')
    with pytest.raises(SegmentError):
        mk_segment('1/2', '2')
    with pytest.raises(SegmentError):
        seg('3/2', '1/2')


def test_segment_basics():
    s = seg('-1/2', '3/2')
    assert s.length == 3
    assert s.support() == (HalfInt(-1), HalfInt(1), HalfInt(3))
    assert s.word() == (HalfInt(3), HalfInt(1), HalfInt(-1))
    assert HalfInt(1) in s
    assert HalfInt(2) not in s
    assert str(s) == 'd(-1/2,3/2)'
    assert segment_text(None) == '1'
    assert e_center(s) == HALF
    with pytest.raises(SegmentError):
        e_center(None)


@given(segments())
def test_dual_is_involution(s):
    assert dual_segment(dual_segment(s)) == s
    assert dual_segment(s).length == s.length
    assert e_center(dual_segment(s)) == -e_center(s)


@pytest.mark.parametrize('d1,d2,linked,union,intersection', [
    (('1/2', '3/2'), ('5/2', '7/2'), True, ('1/2', '7/2'), None),
    (('1/2', '3/2'), ('7/2', '9/2'), False, None, None),
    (('1/2', '5/2'), ('3/2', '7/2'), True, ('1/2', '7/2'), ('3/2', '5/2')),
    (('1/2', '7/2'), ('3/2', '5/2'), False, ('1/2', '7/2'), ('3/2', '5/2')),
    (('1/2', '1/2'), ('1/2', '1/2'), False, ('1/2', '1/2'), ('1/2', '1/2')),
])
def test_segment_relations(d1, d2, linked, union, intersection):
    r = segment_relations(seg(*d1), seg(*d2))
    assert r.linked == linked
    assert r.union == (seg(*union) if union else None)
    assert r.intersection == (seg(*intersection) if intersection else None)


@given(segments(), segments())
@example(seg('1/2', '3/2'), seg('5/2', '7/2'))
def test_segment_relations_symmetric(d1, d2):
    assert segment_relations(d1, d2) == segment_relations(d2, d1)


def test_segment_relations_reject_empty():
    with pytest.raises(SegmentError):
        segment_relations(None, seg('1/2', '1/2'))
