import pytest

from jacquetcalc.atoms import (
    SIGMA, DS3, DS3Tag, InducedLabel, Lang, LangSeg, Sign, SignedSeg, Temp, sigma_a,
)
from jacquetcalc.expr import (
    ParseError, SemanticError, format_label, instantiate, parse_constraint, parse_expression,
    parse_factors, parse_template,
)
from jacquetcalc.segment import half, seg


def test_induced_over_sigma():
    label = parse_expression('d(1/2,5/2) x d(-1/2,3/2) |x sigma')
    assert label == InducedLabel((seg('1/2', '5/2'), seg('-1/2', '3/2')), SIGMA)


def test_induced_over_signed():
    label = parse_expression('d(1/2,5/2) |x ds{b=3/2,c=5/2,+}')
    assert label == InducedLabel((seg('1/2', '5/2'),), SignedSeg(half('3/2'), half('5/2'), Sign.PLUS))
    assert parse_expression('ds{3/2,5/2,+}') == SignedSeg(half('3/2'), half('5/2'), Sign.PLUS)


@pytest.mark.parametrize('text,atom', [
    ('sigma', SIGMA),
    ('sigma_a{3/2}', sigma_a('3/2')),
    ('ds3{1/2,3/2,5/2,minus_bca}', DS3(half('1/2'), half('3/2'), half('5/2'), DS3Tag.MINUS_BCA)),
    ('T{1/2,5/2,-}', Temp(half('1/2'), half('5/2'), Sign.MINUS)),
    ('L(d(-1/2,3/2) ; sigma)', LangSeg(half('1/2'), half('3/2'))),
    ('L(d(1/2,1/2) x d(3/2,5/2) ; sigma_a{1/2})',
     Lang((seg('3/2', '5/2'), seg('1/2', '1/2')), sigma_a('1/2'))),
])
def test_atoms(text, atom):
    assert parse_expression(text) == atom


def test_dual_segments_canonicalized():
    label = parse_expression('d(-5/2,-1/2) |x sigma_a{1/2}')
    assert label == parse_expression('d(1/2,5/2) |x sigma_a{1/2}')
    assert format_label(label) == 'd(1/2,5/2) |x sigma_a{1/2}'


@pytest.mark.parametrize('text', [
    'd(1/2,5/2) x d(-1/2,3/2) |x sigma',
    'd(1/2,1/2) |x L(d(-3/2,5/2) ; sigma)',
    'd(-1/2,1/2) |x sigma_a{5/2}',
    'L(d(1/2,5/2) x d(-1/2,3/2) ; sigma)',
    'ds{b=1/2,c=5/2,-}',
    'ds3{1/2,3/2,5/2,plus}',
])
def test_printer_reads_back(text):
    label = parse_expression(text)
    assert parse_expression(format_label(label)) == label


@pytest.mark.parametrize('text,pos', [
    ('d(1/2,5/2 |x sigma', 10),
    ('d(1/3,5/2) |x sigma', 4),
    ('d(1/2,5/2) |x rho', 14),
    ('d(1/2,5/2) |x sigma extra', 20),
    ('d(a,5/2) |x sigma', 2),
    ('ds{1/2,5/2,*}', 11),
])
def test_syntax_errors(text, pos):
    with pytest.raises(ParseError) as e:
        parse_expression(text)
    assert e.value.pos == pos
    assert not isinstance(e.value, SemanticError)


@pytest.mark.parametrize('text', [
    'd(1/2,2) |x sigma',
    'd(5/2,1/2) |x sigma',
    'ds{b=-1/2,c=3/2,-}',
    'ds3{3/2,1/2,5/2,plus}',
    'T{3/2,3/2,+}',
    'L(d(1/2,3/2) ; L(d(-1/2,3/2) ; sigma))',
])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_expression(text)


def test_templates():
    t = parse_template('d(-a,b+1) |x sigma_a{c}')
    label = instantiate(t, {'a': half('1/2'), 'b': half('1/2'), 'c': half('5/2')})
    assert label == parse_expression('d(-1/2,3/2) |x sigma_a{5/2}')
    with pytest.raises(KeyError):
        instantiate(t, {'a': half('1/2')})
    assert [str(s) for s in parse_factors('d(1/2,a) x d(-b,c)')] == ['d(1/2,a)', 'd(-b,c)']


def test_constraints():
    chain = parse_constraint('1/2 <= a < b')
    assert chain.holds({'a': half('1/2'), 'b': half('3/2')})
    assert not chain.holds({'a': half('3/2'), 'b': half('3/2')})
    assert chain.variables == ['a', 'b']
    with pytest.raises(ParseError):
        parse_constraint('a')
