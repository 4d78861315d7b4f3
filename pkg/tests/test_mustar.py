from collections import Counter

import pytest
from hypothesis import given
from hypothesis.strategies import composite, integers, sampled_from

from jacquetcalc.atoms import (
    SIGMA, DS3, DS3Tag, InducedLabel, LangSeg, Sign, SignedSeg, induced, segment_subquotients,
    sigma_a,
)
from jacquetcalc.glring import ONE, GLStandard
from jacquetcalc.mustar import (
    FormulaError, RGTensor, Term, conserves_support, cuspidal_words, mu_star_base,
    mu_star_delta_signed, mu_star_formula1, mu_star_induced, mu_star_iterated,
    mu_star_langlands_segment, mu_star_partition, resolve_classical, sigma_part,
)
from jacquetcalc.segment import HalfInt, Segment, dual_segment, half, seg


@composite
def segments(draw):
    x = draw(integers(min_value=-3, max_value=2))
    n = draw(integers(min_value=0, max_value=2))
    return Segment(HalfInt(2 * x + 1), HalfInt(2 * (x + n) + 1))


def test_cuspidal_base():
    mu = mu_star_base(SIGMA)
    assert mu.items() == [(Term(ONE, SIGMA), 1)]


def test_sigma_a_half():
    mu = mu_star_delta_signed('-1/2', '1/2', Sign.PLUS)
    assert mu == RGTensor.from_terms([
        (Term(ONE, sigma_a('1/2')), 1),
        (Term(GLStandard.of(seg('1/2', '1/2')), SIGMA), 1),
    ])
    assert mu.row_counts == {'row1': 1, 'row2': 0, 'row3': 1}


def test_langlands_half():
    mu = mu_star_langlands_segment('-1/2', '1/2')
    assert mu == RGTensor.from_terms([
        (Term(ONE, LangSeg(half('-1/2'), half('1/2'))), 1),
        (Term(GLStandard.of(seg('-1/2', '-1/2')), SIGMA), 1),
    ])


def test_formula_domain_errors():
    with pytest.raises(FormulaError):
        mu_star_delta_signed('-1/2', '3/2', Sign.MINUS)
    with pytest.raises(FormulaError):
        mu_star_langlands_segment('3/2', '3/2')
    with pytest.raises(FormulaError):
        mu_star_base(DS3(half('1/2'), half('3/2'), half('5/2'), DS3Tag.PLUS))
    with pytest.raises(FormulaError):
        mu_star_formula1(None, SIGMA)


@pytest.mark.parametrize('c,d', [
    ('-1/2', '1/2'),
    ('-1/2', '5/2'),
    ('1/2', '3/2'),
    ('1/2', '5/2'),
    ('3/2', '3/2'),
    ('3/2', '7/2'),
])
def test_partition_identity(c, d):
    lhs, rhs = mu_star_partition(c, d)
    assert lhs == rhs


def test_lax_row_two_symmetric_terms_vanish():
    strict = mu_star_delta_signed('3/2', '3/2', Sign.PLUS)
    lax = mu_star_delta_signed('3/2', '3/2', Sign.PLUS, strict=False)
    assert lax == strict
    assert lax.row_counts['row2_symmetric'] == 2
    assert 'row2_symmetric' not in strict.row_counts


@pytest.mark.parametrize('c,d', [('1/2', '3/2'), ('3/2', '5/2'), ('5/2', '5/2'), ('3/2', '9/2')])
@pytest.mark.parametrize('sign', [Sign.PLUS, Sign.MINUS])
def test_lax_terms_have_irreducible_classical_parts(c, d, sign):
    mu = mu_star_delta_signed(c, d, sign, strict=False)
    assert not any(isinstance(t.cl, InducedLabel) for t, _ in mu.items())


def test_iterated_matches_induced():
    segs = [seg('1/2', '3/2'), seg('-1/2', '1/2')]
    label = induced(segs, SIGMA)
    assert mu_star_iterated(label.segs, SIGMA) == mu_star_induced(label)
    assert mu_star_induced(SIGMA) == mu_star_base(SIGMA)


@given(segments(), segments(), sampled_from([SIGMA, sigma_a('1/2')]))
def test_iterated_is_independent_of_fold_order(s1, s2, base):
    mu = mu_star_iterated([s1, s2], base)
    assert mu == mu_star_iterated([s2, s1], base)
    assert mu == mu_star_iterated([dual_segment(s1), s2], base)
    assert mu == mu_star_induced(induced([s1, s2], base))


@pytest.mark.parametrize('label', [
    induced([seg('1/2', '5/2')], SIGMA),
    induced([seg('1/2', '3/2'), seg('-1/2', '1/2')], SIGMA),
    induced([seg('1/2', '1/2')], sigma_a('3/2')),
    induced([seg('1/2', '3/2')], LangSeg(half('1/2'), half('5/2'))),
])
def test_sigma_part_and_support(label):
    mu = mu_star_induced(label)
    assert sigma_part(label) == mu.sigma_terms()
    assert conserves_support(mu, label)
    assert mu.is_nonnegative()


def test_word_totals():
    words = cuspidal_words(induced([seg('1/2', '5/2')], SIGMA))
    assert sum(words.values()) == 8
    assert cuspidal_words(sigma_a('1/2')) == {(half('1/2'),): 1}


@pytest.mark.parametrize('lo,hi', [
    ('1/2', '5/2'),
    ('-1/2', '3/2'),
    ('-3/2', '3/2'),
    ('-3/2', '5/2'),
])
def test_words_split_over_subquotients(lo, hi):
    s = seg(lo, hi)
    whole = Counter(cuspidal_words(induced([s], SIGMA)))
    parts: Counter = Counter()
    for atom, n in segment_subquotients(s).items():
        for u, k in cuspidal_words(atom).items():
            parts[u] += n * k
    assert +whole == +parts


def test_resolve_classical():
    single = induced([seg('-1/2', '1/2')], SIGMA)
    assert resolve_classical(single) == segment_subquotients(seg('-1/2', '1/2'))
    assert resolve_classical(SignedSeg(half('1/2'), half('3/2'), Sign.PLUS)).total() == 1


def test_to_json():
    doc = mu_star_base(sigma_a('1/2')).to_json()
    assert {'gl': [], 'cl': 'sigma_a{1/2}', 'coeff': 1} in doc
    assert {'gl': ['d(1/2,1/2)'], 'cl': 'sigma', 'coeff': 1} in doc
