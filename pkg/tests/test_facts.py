import pytest

from jacquetcalc.atoms import DS3, DS3Tag, Sign, Temp, sigma_a
from jacquetcalc.assets import assets
from jacquetcalc.expr import parse_constraint, parse_expression, parse_factors, parse_template
from jacquetcalc.facts import FACT_KINDS, CatalogError, FactCatalog, default_catalog, match_template, sample_env
from jacquetcalc.glring import GLStandard
from jacquetcalc.segment import half, seg

def record(**kw):
    base = {
        'id': 'test-fact',
        'kind': 'decomposition',
        'pattern': 'd(-a,a) |x sigma_a{c}',
        'where': ['1/2 <= a < c'],
        'expansion': ['T{a,c,+}', 'T{a,c,-}'],
        'citation': {'claim': 'test', 'quote': 'a quote'},
    }
    base.update(kw)
    return base


RAW_FACTS = assets.load_yaml('facts.yaml')['facts']


def fact_templates(r):
    """
    Every template string of a raw fact record, paired with its parser.
    """
    out = [(r[k], parse_template) for k in ('pattern', 'atom', 'cl', 'quotient') if k in r]
    out += [(t, parse_template) for t in r.get('expansion', [])]
    out += [(t, parse_template) for group in r.get('layers', []) + r.get('kernels', []) for t in group]
    out += [(t, parse_template) for t in r.get('multiplicities', {})]
    out += [(t, parse_factors) for t in r.get('gl', [])]
    out += [(t, parse_constraint) for t in r.get('where', [])]
    return out


@pytest.mark.parametrize('r', RAW_FACTS, ids=[r['id'] for r in RAW_FACTS])
def test_shipped_fact_templates_parse(r):
    templates = fact_templates(r)
    assert templates
    for text, parse in templates:
        assert isinstance(text, str), f'{r["id"]}: {text!r} is not a single template'
        assert text.count('(') == text.count(')') and text.count('{') == text.count('}')
        parse(text)
    for group in r.get('layers', []) + r.get('kernels', []):
        assert isinstance(group, list)


def test_shipped_layer_shapes():
    by_id = {r['id']: r for r in RAW_FACTS}
    assert [len(layer) for layer in by_id['two-segments-ac-b']['layers']] == [2, 4, 4, 1]
    assert [len(layer) for layer in by_id['half-c-over-signed-ab-plus']['layers']] == [1, 3, 3, 1]
    assert [len(k) for k in by_id['long-intertwining-kernels']['kernels']] == [1, 1, 1, 2]
    assert by_id['plus-over-signed-bc']['gl'] == ['d(1/2,a)']
    assert by_id['two-halves']['multiplicities']['ds{b=a,c=b,+}'] == 1


def test_default_catalog_loads():
    catalog = default_catalog()
    assert len(catalog) > 20
    for kind in FACT_KINDS:
        assert catalog.by_kind[kind]
    for fact in catalog:
        assert fact.citation.claim and fact.citation.quote
    assert default_catalog() is catalog


def test_sample_env():
    env = sample_env([parse_constraint('1/2 <= a < b < c')])
    assert env == {'a': half('1/2'), 'b': half('5/2'), 'c': half('9/2')}
    env = sample_env([parse_constraint('1/2 <= x <= y')])
    assert env == {'x': half('1/2'), 'y': half('1/2')}


def test_match_template():
    t = parse_template('d(1/2,c) x d(-a,b) |x sigma')
    label = parse_expression('d(-1/2,3/2) x d(1/2,5/2) |x sigma')
    constraints = [parse_constraint('1/2 <= a < b < c')]
    assert match_template(t, label, constraints) == {'a': half('1/2'), 'b': half('3/2'), 'c': half('5/2')}
    assert match_template(t, parse_expression('d(-5/2,3/2) x d(1/2,1/2) |x sigma'), constraints) is None
    assert match_template(parse_template('sigma'), sigma_a('1/2')) is None


def test_match_linear_terms():
    t = parse_template('d(a+1,b) |x T{a,c,+}')
    label = parse_expression('d(3/2,5/2) |x T{1/2,7/2,+}')
    assert match_template(t, label) == {'a': half('1/2'), 'b': half('5/2'), 'c': half('7/2')}


@pytest.mark.parametrize('expr,fid', [
    ('d(-3/2,5/2) |x sigma_a{1/2}', 'discrete-pieces-bc-a'),
    ('d(-1/2,3/2) |x sigma_a{5/2}', 'discrete-pieces-ab-c'),
    ('d(-1/2,1/2) |x sigma_a{5/2}', 'tempered-split'),
    ('d(1/2,5/2) |x ds{b=1/2,c=3/2,+}', 'half-c-over-signed-ab-plus'),
    ('d(-3/2,5/2) x d(1/2,1/2) |x sigma', 'two-segments-bc-a'),
])
def test_find_decomposition(expr, fid):
    fact, expansion = default_catalog().decomposition(parse_expression(expr))
    assert fact.id == fid
    assert all(n == 1 for _, n in expansion.items())


def test_layers():
    layers = default_catalog().layers(parse_expression('d(1/2,5/2) |x ds{b=1/2,c=3/2,-}'))
    assert [len(layer) for layer in layers] == [1, 1, 1, 1]
    assert DS3(half('1/2'), half('3/2'), half('5/2'), DS3Tag.MINUS_ABC) in layers[2]
    assert default_catalog().layers(parse_expression('d(-3/2,5/2) |x sigma_a{1/2}')) is None


def test_multiplicity_fact():
    label = parse_expression('d(1/2,1/2) x d(1/2,3/2) |x sigma')
    fact, n = default_catalog().multiplicity(label, parse_expression('L(d(-1/2,3/2) ; sigma)'))
    assert fact.id == 'two-halves'
    assert n == 1
    assert default_catalog().multiplicity(label, sigma_a('1/2')) is None


def test_witnesses():
    t = Temp(half('1/2'), half('5/2'), Sign.PLUS)
    found = {fact.id: w for fact, w in default_catalog().witnesses(t)}
    assert set(found) == {'tempered-plus-half-a', 'tempered-plus-signed'}
    w = found['tempered-plus-signed']
    assert w.gl == GLStandard.of(seg('1/2', '1/2'))
    assert str(w.cl) == 'ds{b=1/2,c=5/2,+}'
    assert w.coeff == 2


def test_kernel_fact():
    fact, kernels, quotient = default_catalog().kernel(parse_expression('d(1/2,5/2) x d(-1/2,3/2) |x sigma'))
    assert fact.id == 'long-intertwining-kernels'
    assert [len(k) for k in kernels] == [1, 1, 1, 2]
    assert str(quotient) == 'L(d(1/2,5/2) x d(-1/2,3/2) ; sigma)'


def test_from_records_ok():
    catalog = FactCatalog.from_records([record()])
    assert catalog.get('test-fact').kind == 'decomposition'
    with pytest.raises(CatalogError):
        catalog.get('missing')


@pytest.mark.parametrize('kw', [
    {'citation': None},
    {'citation': {'claim': 'x'}},
    {'kind': 'lemma'},
    {'pattern': 'd(-a,a |x sigma_a{c}'},
    {'expansion': ['T{a,c,+}', 'sigma_a{c}']},
    {'where': ['c < a']},
])
def test_from_records_rejects(kw):
    with pytest.raises(CatalogError):
        FactCatalog.from_records([record(**kw)])


def test_duplicate_ids_rejected():
    with pytest.raises(CatalogError):
        FactCatalog.from_records([record(), record()])
