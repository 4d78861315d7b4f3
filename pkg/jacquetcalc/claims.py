# Copyright 2026 The jacquetcalc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

__all__ = [
    'ClaimError', 'ClaimCitation', 'Claim', 'ClaimCatalog', 'ClaimReport', 'SuiteReport',
    'CHECKERS', 'DEFAULT_GRID', 'DEFAULT_PAIRS', 'parse_triple', 'parse_pair',
    'verify_claim', 'run_suite', 'default_claims',
]

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .assets import assets
from .atoms import ClassAtom, Label, Sign, segment_subquotients
from .candidates import analyze_candidates
from .expr import (
    Env, ParseError, SemanticError, format_label, instantiate, instantiate_segments, parse_factors,
    parse_template,
)
from .formal import Combination
from .glring import GLStandard, word_expansion
from .log import log
from .mustar import mu_star_base, mu_star_partition, sigma_part
from .rulebase import Engine, default_engine
from .segment import HALF, HalfInt, Segment, SegmentError, half
from .utils import Sentinel, glob_match
from .version import __version__

Params = Tuple[HalfInt, ...]

DEFAULT_GRID: Tuple[Params, ...] = tuple(
    tuple(HalfInt(t) for t in twice) for twice in ((1, 3, 5), (1, 3, 7), (1, 5, 7), (3, 5, 7))
)

# (c, d) with c from -1/2 to 9/2 and d from -c to 9/2.
DEFAULT_PAIRS: Tuple[Params, ...] = tuple(
    (HalfInt(c), HalfInt(d)) for c in range(-1, 10, 2) for d in range(-c, 10, 2)
)

ORDER_NOTE = 'order not verified: only the multisets of the filtration layers are checked'

class ClaimError(ValueError):
    pass


@dataclass(frozen=True)
class ClaimCitation:
    result: str
    quote: str

    def to_json(self) -> Dict[str, str]:
        return {'result': self.result, 'quote': self.quote}


@dataclass(frozen=True)
class Claim:
    """
    A catalog entry.  fields holds the record's checker-specific fields as loaded.
    """
    id: str
    check: str
    domain: str
    expected: Any
    citation: ClaimCitation
    fields: Mapping[str, Any] = field(default_factory=dict)

    @property
    def arity(self) -> int:
        return 2 if self.domain == 'pair' else 3

    def env(self, params: Params) -> Dict[str, HalfInt]:
        names = ('c', 'd') if self.domain == 'pair' else ('a', 'b', 'c')
        return dict(zip(names, params))


@dataclass
class ClaimReport:
    claim_id: str
    params: Params
    computed: Any = None
    expected: Any = None
    citation: Optional[ClaimCitation] = None
    verdict: str = 'fail'
    elapsed: float = 0.0
    notes: List[str] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def sort_key(self) -> Tuple:
        return (self.claim_id, tuple(p.twice for p in self.params))

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            'claimId': self.claim_id,
            'params': [str(p) for p in self.params],
            'computed': self.computed,
            'expected': self.expected,
            'citation': self.citation.to_json() if self.citation else None,
            'verdict': self.verdict,
            'notes': list(self.notes),
        }
        if self.error:
            out['error'] = self.error
        if timings:
            out['elapsedMs'] = round(self.elapsed * 1000, 3)
        return out


@dataclass
class SuiteReport:
    reports: List[ClaimReport] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, int]:
        counts = {'total': len(self.reports), 'pass': 0, 'fail': 0, 'inconclusive': 0}
        for r in self.reports:
            counts[r.verdict] += 1
        return counts

    @property
    def ok(self) -> bool:
        return self.summary['fail'] == 0

    def to_json(self, timings: bool = False) -> Dict[str, Any]:
        return {
            'apiVersion': 'v1alpha1',
            'kind': 'SuiteReport',
            'generator': f'jacquetcalc {__version__}',
            'catalogDigest': assets.hash(),
            'reports': [r.to_json(timings) for r in self.reports],
            'summary': self.summary,
        }


@dataclass
class Outcome:
    """
    What a checker produced: a JSON-ready value, notes, and whether every
    multiplicity behind it was exact.
    """
    computed: Any
    notes: List[str] = field(default_factory=list)
    exact: bool = True


Checker = Callable[[Engine, Claim, Env], Outcome]


def _label(text: str, env: Env) -> Label:
    return instantiate(parse_template(text), env)


def _multiset(c: Combination[ClassAtom]) -> List[str]:
    return [format_label(k) for k, n in c.items() for _ in range(n)]


def _expected_multiset(texts: Sequence[str], env: Env) -> List[str]:
    return _multiset(Combination.from_terms((_label(t, env), 1) for t in texts))  # type: ignore


def _value(v: Any) -> Tuple[Any, bool]:
    return (v.lower, True) if v.is_exact else (str(v), False)


def _check_partition(engine: Engine, claim: Claim, env: Env) -> Outcome:
    c, d = env['c'], env['d']
    lhs, rhs = mu_star_partition(c, d, strict=engine.strict)
    notes = [f'{len(lhs)} terms on the left, {len(rhs)} on the right']
    for atom in segment_subquotients(Segment(-c, d)).keys():
        rows = mu_star_base(atom, strict=engine.strict).row_counts
        if rows:
            notes.append(f'{atom}: ' + ', '.join(f'{k}={v}' for k, v in sorted(rows.items())))
    return Outcome(lhs == rhs, notes)


def _check_kernel_bound(engine: Engine, claim: Claim, env: Env) -> Outcome:
    psi = _label(claim.fields['in'], env)
    found = engine.catalog.kernel(psi)
    if found is None:
        return Outcome(None, [f'no kernel fact for {psi}'], exact=False)
    _, kernels, _ = found
    whole = sigma_part(psi)
    dominated = []
    for kernel in kernels:
        diff = whole - Combination.sum(sigma_part(k) for k in kernel)
        dominated.append(all(n >= 0 for n in word_expansion(diff).values()))
    cap = engine.upper_cap(psi)
    notes = ['dominance is checked on cuspidal words, a necessary condition for K_i <= psi']
    if cap is None:
        return Outcome({'dominated': dominated, 'factors': None}, notes, exact=False)
    return Outcome({'dominated': dominated, 'factors': len(cap)}, notes)


def _check_jacquet_slice(engine: Engine, claim: Claim, env: Env) -> Outcome:
    label = _label(claim.fields['in'], env)
    g = GLStandard.of(*[s for s in _segments(claim.fields['gl'], env)])
    slice_ = engine.jacquet_slice(label, g)
    if slice_ is None:
        return Outcome(None, [f'some classical part of mu*({label}) does not resolve'], exact=False)
    computed = {format_label(k): n for k, n in slice_.items()}
    # The same slice, as promised by the witness facts of the pieces of label.
    promised: Combination[ClassAtom] = Combination()
    pieces = engine.decompose(label)
    if pieces is not Sentinel.NO_FACT:
        for atom, n in pieces.items():  # type: ignore
            for w in engine.witnesses(atom):
                if w.gl == g:
                    promised = promised + Combination.of(w.cl, n * w.coeff)
    notes = ['witness facts of the pieces give ' + (', '.join(
        f'{v}*{format_label(k)}' for k, v in promised.items()) or 'nothing')]
    return Outcome(computed, notes)


def _segments(text: str, env: Env) -> List[Segment]:
    return instantiate_segments(parse_factors(text), env)


def _check_multiplicities(engine: Engine, claim: Claim, env: Env) -> Outcome:
    values, notes, all_exact = [], [], True
    for item in claim.fields['items']:
        label = _label(item['in'], env)
        atom = _label(item['atom'], env)
        v = engine.classical_multiplicity(label, atom)  # type: ignore
        value, ok = _value(v)
        values.append(value)
        all_exact = all_exact and ok
        notes.extend(f'[{label} : {atom}]: {n}' for n in v.notes)
        if claim.fields.get('cross_check'):
            note = engine.cross_check(label, atom)  # type: ignore
            if note:
                notes.append(note)
    return Outcome(values, notes, all_exact)


def _check_jacquet_counts(engine: Engine, claim: Claim, env: Env) -> Outcome:
    values, all_exact = [], True
    for item in claim.fields['items']:
        label = _label(item['in'], env)
        g = GLStandard.of(*_segments(item['gl'], env))
        v = engine.jacquet_multiplicity(label, g, _label(item['cl'], env))  # type: ignore
        value, ok = _value(v)
        values.append(value)
        all_exact = all_exact and ok
    return Outcome(values, exact=all_exact)


def _check_candidates(engine: Engine, claim: Claim, env: Env) -> Outcome:
    computed, notes = {}, []
    for sign in Sign:
        analysis = analyze_candidates(env['a'], env['b'], env['c'], sign, engine)
        computed[str(sign)] = sorted(format_label(x) for x in analysis.candidates)
        notes.extend(f'{sign}: {f}' for f in analysis.flags)
    return Outcome(computed, notes)


def _sum_length(engine: Engine, text: str, env: Env) -> Optional[int]:
    d = engine.decompose(_label(text, env))
    return None if d is Sentinel.NO_FACT else d.total()  # type: ignore


def _check_factor_list(engine: Engine, claim: Claim, env: Env) -> Outcome:
    psi = _label(claim.fields['in'], env)
    values, all_exact = [], True
    for text in claim.fields['factors']:
        value, ok = _value(engine.classical_multiplicity(psi, _label(text, env)))  # type: ignore
        values.append(value)
        all_exact = all_exact and ok
    computed: Dict[str, Any] = {'factors': values}
    for key, text in claim.fields['sums'].items():
        computed[key] = _sum_length(engine, text, env)
        all_exact = all_exact and computed[key] is not None
    return Outcome(computed, exact=all_exact)


def _kernel_pieces(engine: Engine, psi: Label) -> Optional[Tuple[List[Combination[ClassAtom]], Optional[ClassAtom], List[Label]]]:
    """
    For each kernel, the factors not already in an earlier kernel.  The ambient
    representation is multiplicity free, so the sum of the kernels is their union.
    """
    found = engine.catalog.kernel(psi)
    if found is None:
        return None
    _, kernels, quotient = found
    seen: Combination[ClassAtom] = Combination()
    pieces = []
    for kernel in kernels:
        parts = [engine.decompose(k) for k in kernel]
        if any(p is Sentinel.NO_FACT for p in parts):
            return None
        whole = Combination.sum(parts)  # type: ignore
        new = Combination({k: max(n - seen[k], 0) for k, n in whole.items()})
        pieces.append(new)
        seen = seen + new
    return pieces, quotient, [k[0] for k in kernels]


def _check_kernel_lemma(engine: Engine, claim: Claim, env: Env) -> Outcome:
    found = _kernel_pieces(engine, _label(claim.fields['in'], env))
    if found is None:
        return Outcome(None, ['kernels do not resolve'], exact=False)
    pieces = found[0]
    return Outcome({f'k{i + 1}': _multiset(p) for i, p in enumerate(pieces) if i > 0})


def _layers(engine: Engine, psi: Label) -> Optional[Tuple[List[Combination[ClassAtom]], ClassAtom, Combination[ClassAtom]]]:
    found = _kernel_pieces(engine, psi)
    cap = engine.upper_cap(psi)
    if found is None or cap is None:
        return None
    pieces, quotient, heads = found
    first = engine.layers(heads[0])
    if first is None or quotient is None:
        return None
    return first + [p for p in pieces[1:] if p], quotient, cap


def _is_factor_list(engine: Engine, psi: Label, total: Combination[ClassAtom], cap: Combination[ClassAtom]) -> bool:
    """
    Whether total lists every possible factor of psi with its multiplicity in psi.
    """
    if set(total.keys()) != set(cap.keys()):
        return False
    return all(engine.classical_multiplicity(psi, a).value == n for a, n in total.items())  # type: ignore


def _check_filtration(engine: Engine, claim: Claim, env: Env) -> Outcome:
    psi = _label(claim.fields['in'], env)
    found = _layers(engine, psi)
    if found is None:
        return Outcome(None, ['filtration pieces do not resolve'], exact=False)
    layers, quotient, cap = found
    complete = _is_factor_list(engine, psi, Combination.sum(layers) + Combination.of(quotient), cap)
    return Outcome({
        'layers': [_multiset(layer) for layer in layers],
        'quotient': format_label(quotient),
        'complete': complete,
    }, [ORDER_NOTE])


def _check_main_multisets(engine: Engine, claim: Claim, env: Env) -> Outcome:
    psi = _label(claim.fields['in'], env)
    found = _layers(engine, psi)
    if found is None:
        return Outcome(None, ['filtration pieces do not resolve'], exact=False)
    layers, quotient, cap = found
    if len(layers) != 6:
        return Outcome(None, [f'expected six layers, found {len(layers)}'], exact=False)
    pieces = [layers[0], layers[1], layers[2] + layers[4], layers[3] + layers[5], Combination.of(quotient)]
    computed: Dict[str, Any] = {f'W{i + 1}': _multiset(p) for i, p in enumerate(pieces)}
    computed['complete'] = _is_factor_list(engine, psi, Combination.sum(pieces), cap)
    return Outcome(computed, [ORDER_NOTE])


CHECKERS: Dict[str, Checker] = {
    'partition': _check_partition,
    'kernel-bound': _check_kernel_bound,
    'jacquet-slice': _check_jacquet_slice,
    'multiplicities': _check_multiplicities,
    'jacquet-counts': _check_jacquet_counts,
    'candidates': _check_candidates,
    'factor-list': _check_factor_list,
    'kernel-lemma': _check_kernel_lemma,
    'filtration': _check_filtration,
    'main-multisets': _check_main_multisets,
}


def _expected_value(claim: Claim, env: Env) -> Any:
    """
    The claim's expected value at env, with label templates instantiated.
    """
    exp = claim.expected
    if claim.check == 'jacquet-slice':
        return {format_label(_label(k, env)): n for k, n in exp.items()}
    if claim.check == 'candidates':
        return {sign: sorted(format_label(_label(t, env)) for t in texts) for sign, texts in exp.items()}
    if claim.check == 'kernel-lemma':
        return {k: _expected_multiset(v, env) for k, v in exp.items()}
    if claim.check == 'filtration':
        return {
            'layers': [_expected_multiset(layer, env) for layer in exp['layers']],
            'quotient': format_label(_label(exp['quotient'], env)),
            'complete': exp['complete'],
        }
    if claim.check == 'main-multisets':
        return {k: v if k == 'complete' else _expected_multiset(v, env) for k, v in exp.items()}
    return exp


class ClaimCatalog:
    def __init__(self, claims: Sequence[Claim]) -> None:
        self.claims = {c.id: c for c in claims}

    @classmethod
    def from_records(cls, records: Sequence[Mapping[str, Any]]) -> 'ClaimCatalog':
        claims = []
        for r in records:
            cid = str(r.get('id') or '<unnamed>')
            cite = r.get('citation')
            if not isinstance(cite, dict) or not cite.get('result') or not cite.get('quote'):
                raise ClaimError(f'claim {cid}: missing citation')
            if r.get('check') not in CHECKERS:
                raise ClaimError(f'claim {cid}: unknown check {r.get("check")!r}')
            if 'expected' not in r:
                raise ClaimError(f'claim {cid}: missing expected value')
            domain = r.get('domain', 'triple')
            if domain not in ('triple', 'pair'):
                raise ClaimError(f'claim {cid}: unknown domain {domain!r}')
            fields = {k: v for k, v in r.items() if k not in ('id', 'check', 'domain', 'expected', 'citation')}
            claims.append(Claim(
                cid, r['check'], domain, r['expected'],
                ClaimCitation(str(cite['result']), str(cite['quote'])), fields
            ))
        return cls(claims)

    @classmethod
    def load(cls, fname: str = 'claims.yaml') -> 'ClaimCatalog':
        doc = assets.load_yaml(fname)
        if not isinstance(doc, dict) or doc.get('kind') != 'ClaimCatalog':
            raise ClaimError(f'{fname} is not a claim catalog')
        catalog = cls.from_records(doc.get('claims') or [])
        log.info('loaded %d claims from %s', len(catalog.claims), fname)
        return catalog

    def get(self, claim_id: str) -> Claim:
        try:
            return self.claims[claim_id]
        except KeyError:
            raise ClaimError(f'unknown claim {claim_id}') from None

    def select(self, pattern: str) -> List[Claim]:
        return [c for cid, c in sorted(self.claims.items()) if glob_match(pattern, cid)]


@lru_cache(maxsize=None)
def default_claims() -> ClaimCatalog:
    return ClaimCatalog.load()


def parse_triple(value: Union[str, Sequence[Any]]) -> Params:
    """
    Parses "a,b,c" (or a sequence of three values) into a triple with
    1/2 <= a < b < c in Z+1/2.
    """
    parts = value.split(',') if isinstance(value, str) else list(value)
    if len(parts) != 3:
        raise ClaimError(f'a triple needs three values, got {value!r}')
    try:
        a, b, c = (half(p.strip() if isinstance(p, str) else p) for p in parts)
    except (SegmentError, ValueError) as e:
        raise ClaimError(f'invalid triple {value!r}: {e}') from None
    if a.is_integer or b.is_integer or c.is_integer:
        raise ClaimError(f'triple {value!r} must lie in Z+1/2')
    if not (HALF <= a < b < c):
        raise ClaimError(f'triple {value!r} must satisfy 1/2 <= a < b < c')
    return (a, b, c)


def parse_pair(value: Union[str, Sequence[Any]]) -> Params:
    parts = value.split(',') if isinstance(value, str) else list(value)
    if len(parts) != 2:
        raise ClaimError(f'a pair needs two values, got {value!r}')
    try:
        c, d = (half(p.strip() if isinstance(p, str) else p) for p in parts)
    except (SegmentError, ValueError) as e:
        raise ClaimError(f'invalid pair {value!r}: {e}') from None
    if c.is_integer or d.is_integer or c < -HALF or c + d < 0:
        raise ClaimError(f'pair {value!r} must lie in Z+1/2 with c >= -1/2 and c + d >= 0')
    return (c, d)


def verify_claim(claim_id: str, params: Union[str, Sequence[Any]], engine: Optional[Engine] = None,
                 catalog: Optional[ClaimCatalog] = None) -> ClaimReport:
    """
    Runs one claim at one parameter point.  Raises ClaimError for an unknown claim
    or parameters outside its domain.
    """
    claim = (catalog or default_claims()).get(claim_id)
    values = parse_pair(params) if claim.domain == 'pair' else parse_triple(params)
    return _run(engine or default_engine(), claim, values)


def _run(engine: Engine, claim: Claim, params: Params) -> ClaimReport:
    report = ClaimReport(claim.id, params, citation=claim.citation)
    log.info('claim %s at %s: started', claim.id, ', '.join(str(p) for p in params))
    start = time.perf_counter()
    try:
        env = claim.env(params)
        report.expected = _expected_value(claim, env)
        outcome = CHECKERS[claim.check](engine, claim, env)
        report.computed = outcome.computed
        report.notes = outcome.notes
        if outcome.computed == report.expected:
            report.verdict = 'pass'
        elif not outcome.exact:
            report.verdict = 'inconclusive'
        else:
            report.verdict = 'fail'
    except (ParseError, SemanticError, ValueError) as e:
        report.error = str(e)
        report.verdict = 'fail'
        log.error('claim %s at %s: %s', claim.id, params, e)
    report.elapsed = time.perf_counter() - start
    log.info('claim %s at %s: %s (%.3fs)', claim.id, ', '.join(str(p) for p in params),
             report.verdict, report.elapsed)
    return report


def run_suite(triples: Iterable[Any], claims: str = '*', jobs: int = 1, engine: Optional[Engine] = None,
              catalog: Optional[ClaimCatalog] = None, pairs: Optional[Iterable[Any]] = None) -> SuiteReport:
    """
    Runs every claim matching the glob on every grid point.  Claims over pairs use
    pairs, which defaults to DEFAULT_PAIRS when any triple is given.  Grid entries
    that do not parse are reported as failures and the suite continues.
    """
    engine = engine or default_engine()
    selected = (catalog or default_claims()).select(claims)
    triples = list(triples)
    pairs = list(DEFAULT_PAIRS if pairs is None and triples else pairs or [])
    suite = SuiteReport()
    tasks: List[Tuple[Claim, Params]] = []
    for domain, entries, parse in (('triple', triples, parse_triple), ('pair', pairs, parse_pair)):
        claims_here = [c for c in selected if c.domain == domain]
        if not claims_here:
            continue
        for entry in entries:
            try:
                params = parse(entry)
            except ClaimError as e:
                log.error('%s', e)
                suite.reports.append(ClaimReport('grid', (), error=str(e)))
                continue
            tasks.extend((c, params) for c in claims_here)

    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            suite.reports.extend(pool.map(lambda t: _run(engine, *t), tasks))
    else:
        suite.reports.extend(_run(engine, *t) for t in tasks)
    suite.reports.sort(key=lambda r: r.sort_key)
    return suite
