from concurrent.futures import ThreadPoolExecutor

import pytest

from jacquetcalc.atoms import (
    SIGMA, DS3, AtomError, DS3Tag, LangSeg, Sign, SignedSeg, Temp, classical_support, induced,
    segment_subquotients, sigma_a,
)
from jacquetcalc.claims import DEFAULT_PAIRS
from jacquetcalc.expr import parse_expression
from jacquetcalc.formal import Combination
from jacquetcalc.glring import ONE, Delta, GLStandard, word_count, word_expansion
from jacquetcalc.mustar import sigma_part
from jacquetcalc.rulebase import (
    Engine, decompose_induced_over_atom, decompose_induced_over_cuspidal, default_engine,
    multiplicity_verdict, sign_classifier, standard_quotient,
)
from jacquetcalc.segment import HalfInt, half, seg
from jacquetcalc.utils import Sentinel

PSI = 'd(1/2,5/2) x d(-1/2,3/2) |x sigma'
PSI_QUOTIENT = 'L(d(1/2,5/2) x d(-1/2,3/2) ; sigma)'


@pytest.fixture(scope='module')
def engine():
    return Engine()


def test_decompose_single_segment(engine):
    label = induced([seg('1/2', '5/2')], SIGMA)
    assert engine.decompose(label) == segment_subquotients(seg('1/2', '5/2'))
    assert decompose_induced_over_cuspidal(label) == engine.decompose(label)
    assert engine.decompose(sigma_a('1/2')) == Combination.of(sigma_a('1/2'))


def test_decompose_over_cuspidal_rejects():
    with pytest.raises(AtomError):
        decompose_induced_over_cuspidal(parse_expression('d(1/2,1/2) |x sigma_a{3/2}'))
    with pytest.raises(AtomError):
        decompose_induced_over_cuspidal(parse_expression('d(1/2,1/2) x d(1/2,3/2) |x sigma'))


def test_decompose_from_fact(engine):
    label = parse_expression('d(-1/2,1/2) |x sigma_a{5/2}')
    expected = Combination.from_terms([
        (Temp(half('1/2'), half('5/2'), Sign.PLUS), 1),
        (Temp(half('1/2'), half('5/2'), Sign.MINUS), 1),
    ])
    assert engine.decompose(label) == expected
    assert decompose_induced_over_atom(label) == expected


def test_no_fact(engine):
    label = induced([seg('1/2', '1/2')], DS3(half('1/2'), half('3/2'), half('5/2'), DS3Tag.PLUS))
    assert engine.decompose(label) is Sentinel.NO_FACT
    assert decompose_induced_over_atom(label) is Sentinel.NO_FACT


def test_standard_quotient():
    label = parse_expression('d(1/2,1/2) x d(1/2,3/2) |x sigma')
    assert standard_quotient(label) == parse_expression('L(d(1/2,3/2) x d(1/2,1/2) ; sigma)')
    assert standard_quotient(parse_expression('d(-1/2,1/2) |x sigma_a{5/2}')) is None
    assert standard_quotient(sigma_a('1/2')) is None


def test_support_screen(engine):
    v = engine.classical_multiplicity(parse_expression('d(1/2,5/2) |x sigma'), sigma_a('1/2'))
    assert v.is_exact and v.value == 0


def test_atom_identity(engine):
    assert engine.classical_multiplicity(sigma_a('1/2'), sigma_a('1/2')).value == 1
    assert engine.classical_multiplicity(sigma_a('1/2'), LangSeg(half('-1/2'), half('1/2'))).value == 0


def test_multiplicity_fact(engine):
    label = parse_expression('d(1/2,1/2) x d(1/2,3/2) |x sigma')
    v = engine.classical_multiplicity(label, parse_expression('L(d(-1/2,3/2) ; sigma)'))
    assert v.value == 1
    assert 'from fact two-halves' in v.notes


def test_langlands_quotient_rule(engine):
    label = parse_expression('d(1/2,1/2) x d(1/2,3/2) |x sigma')
    v = engine.classical_multiplicity(label, standard_quotient(label))
    assert v.value == 1


def test_identifying_word(engine):
    label = parse_expression('d(1/2,1/2) x d(3/2,3/2) |x sigma')
    assert engine.decompose(label) is Sentinel.NO_FACT
    assert engine.classical_word(sigma_a('3/2')) == (half('3/2'), half('1/2'))
    assert engine.classical_multiplicity(label, sigma_a('3/2')).value == 1


def test_kernel_bounds(engine):
    psi = parse_expression(PSI)
    quotient = parse_expression(PSI_QUOTIENT)
    assert engine.lower_bounds(psi)[quotient] >= 1
    cap = engine.upper_cap(psi)
    assert len(cap) == 15
    assert cap.total() == 33
    assert cap[quotient] == 1
    assert engine.classical_multiplicity(psi, quotient).value == 1
    assert engine.upper_cap(parse_expression('d(1/2,5/2) |x sigma')) is None


def test_jacquet_multiplicity_sigma(engine):
    label = parse_expression('d(1/2,5/2) |x sigma')
    assert engine.jacquet_multiplicity(label, Delta(seg('1/2', '5/2')), SIGMA).value == 1
    assert multiplicity_verdict((Delta(seg('1/2', '5/2')), SIGMA), engine.mu_star(label), engine).value == 1


def test_jacquet_multiplicity_classical(engine):
    label = parse_expression('d(1/2,1/2) |x sigma')
    assert engine.jacquet_multiplicity(label, ONE, sigma_a('1/2')).value == 1
    assert engine.jacquet_multiplicity(label, ONE, LangSeg(half('-1/2'), half('1/2'))).value == 1
    assert engine.jacquet_slice(label, GLStandard.of(seg('1/2', '1/2'))) == Combination.of(SIGMA)


def test_witnesses(engine):
    ws = engine.witnesses(sigma_a('3/2'))
    assert ws
    assert ws[0].cl == SIGMA
    assert ws[0].gl == GLStandard.of(seg('1/2', '3/2'))
    tws = engine.witnesses(Temp(half('1/2'), half('5/2'), Sign.PLUS))
    assert sorted(w.coeff for w in tws) == [1, 2]


def test_sign_classifier(engine):
    assert sign_classifier(engine.mu_star(sigma_a('1/2')))
    assert not sign_classifier(engine.mu_star(LangSeg(half('-1/2'), half('1/2'))))


SIGNED_PAIRS = [(c, d) for c, d in DEFAULT_PAIRS if half('1/2') <= c <= d]


@pytest.mark.parametrize('c,d', SIGNED_PAIRS, ids=[f'{c},{d}' for c, d in SIGNED_PAIRS])
def test_sign_classifier_over_pairs(engine, c, d):
    assert sign_classifier(engine.mu_star(SignedSeg(c, d, Sign.PLUS)))
    assert not sign_classifier(engine.mu_star(SignedSeg(c, d, Sign.MINUS)))


def closed_form_atoms(support):
    """
    Every signed segment and Langlands segment atom with the given support.
    """
    top = max(x.twice for x in support)
    out = []
    for c in range(-1, top + 1, 2):
        for d in range(c, top + 1, 2):
            for make in (lambda: SignedSeg(HalfInt(c), HalfInt(d), Sign.PLUS),
                         lambda: SignedSeg(HalfInt(c), HalfInt(d), Sign.MINUS),
                         lambda: LangSeg(HalfInt(c), HalfInt(d))):
                try:
                    atom = make()
                except AtomError:
                    continue
                if classical_support(atom) == support:
                    out.append(atom)
    return out


def word_bound(label, tau):
    whole = sigma_part(label)
    return min(
        word_count(whole, u) // n
        for u, n in word_expansion(sigma_part(tau)).items() if n > 0
    )


@pytest.mark.parametrize('text', [
    'd(1/2,5/2) |x sigma',
    'd(-1/2,3/2) |x sigma',
    'd(1/2,1/2) x d(1/2,3/2) |x sigma',
    'd(1/2,1/2) x d(3/2,3/2) |x sigma',
    'd(1/2,1/2) |x sigma_a{3/2}',
    'd(-3/2,3/2) |x sigma',
])
def test_exact_verdicts_within_word_bounds(engine, text):
    label = parse_expression(text)
    taus = closed_form_atoms(classical_support(label))
    assert taus
    for tau in taus:
        v = engine.classical_multiplicity(label, tau)
        if v.is_exact:
            assert v.lower <= word_bound(label, tau), tau


def test_default_engine_shared():
    assert default_engine() is default_engine()
    assert default_engine().strict


def test_engine_shared_across_threads(engine):
    psi = parse_expression(PSI)
    taus = [tau for tau, _ in engine.upper_cap(psi).items()]
    expected = [engine.classical_multiplicity(psi, tau) for tau in taus]
    shared = Engine()
    with ThreadPoolExecutor(max_workers=4) as pool:
        got = list(pool.map(lambda tau: shared.classical_multiplicity(psi, tau), taus * 2))
    assert [(v.lower, v.upper) for v in got] == [(v.lower, v.upper) for v in expected * 2]
    assert all(shared.classical_multiplicity(psi, tau) is v for tau, v in zip(taus, got))
