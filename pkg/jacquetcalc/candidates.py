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
    'CaseRow', 'CASE_TABLE', 'Branch', 'CandidateAnalysis', 'analyze_candidates',
    'enumerate_nontempered_candidates',
]

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .atoms import (
    AtomError, ClassAtom, InducedLabel, Lang, Sign, SignedSeg, induced, is_tempered,
    make_lang, sigma_a,
)
from .expr import Constraint, instantiate, parse_constraint, parse_template
from .glring import Delta, GLStandard
from .log import log
from .rulebase import Engine, default_engine
from .segment import HALF, HalfInt, HalfLike, half, mk_segment, seg

@dataclass(frozen=True)
class CaseRow:
    """
    One row of the table of irreducible pi' <= d([x+1,c]) x| sigma_b by the
    position of x, written in the expression grammar with x for alpha_1.
    """
    condition: str
    options: Tuple[str, ...]
    flag: Optional[str] = None

    @property
    def constraint(self) -> Constraint:
        return parse_constraint(self.condition)


CASE_TABLE: Tuple[CaseRow, ...] = (
    CaseRow('a < x < b', ('L(d(x+1,b) ; sigma_a{c})', 'L(d(x+1,c) ; sigma_a{b})')),
    CaseRow('b <= x <= b', ('sigma_a{c}', 'L(d(b+1,c) ; sigma_a{b})')),
    CaseRow('b < x < c', ('L(d(x+1,c) ; sigma_a{b})',)),
    # alpha_1 = b is covered by the second row, so this row is alpha_1 = c.
    CaseRow('c <= x <= c', ('sigma_a{b}',), flag='case table row "sigma_b, alpha_1 = b" read as alpha_1 = c'),
)


@dataclass
class Branch:
    """
    One step of the case analysis: an embedding pi -> d([-alpha_1,beta_1]) x| pi'
    and the candidate it forces, if any.
    """
    beta1: HalfInt
    alpha1: Optional[HalfInt] = None
    sigma1: Optional[ClassAtom] = None
    pi_prime: Optional[ClassAtom] = None
    result: Optional[ClassAtom] = None
    note: str = ''
    flag: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'beta1': str(self.beta1)}
        for key in ('alpha1', 'sigma1', 'pi_prime', 'result'):
            value = getattr(self, key)
            if value is not None:
                out[key.replace('pi_prime', 'piPrime')] = str(value)
        if self.note:
            out['note'] = self.note
        if self.flag:
            out['flag'] = self.flag
        return out


@dataclass
class CandidateAnalysis:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    sign: Sign
    branches: List[Branch] = field(default_factory=list)

    @property
    def ambient_quotient(self) -> ClassAtom:
        return make_lang([seg(HALF, self.c)], SignedSeg(self.a, self.b, self.sign))

    @property
    def candidates(self) -> List[ClassAtom]:
        out: List[ClassAtom] = []
        for branch in self.branches:
            r = branch.result
            if r is not None and r not in out and r != self.ambient_quotient:
                out.append(r)
        return out

    @property
    def flags(self) -> List[str]:
        return sorted({b.flag for b in self.branches if b.flag})

    def to_json(self) -> Dict[str, Any]:
        return {
            'params': [str(self.a), str(self.b), str(self.c), str(self.sign)],
            'candidates': [str(x) for x in self.candidates],
            'flags': self.flags,
            'branches': [b.to_json() for b in self.branches],
        }


def _tempered_base(x: ClassAtom) -> ClassAtom:
    return x.tau if isinstance(x, Lang) else x


def _sigma1_options(engine: Engine, sigma: SignedSeg, beta1: HalfInt) -> List[ClassAtom]:
    """
    Tempered sigma_1 with d([1/2,beta_1]) (x) sigma_1 <= mu*(sigma).
    """
    g = GLStandard.of(seg(HALF, beta1))
    out = []
    for term, _ in engine.mu_star(sigma).items():
        if term.gl == g and not isinstance(term.cl, InducedLabel) and is_tempered(term.cl):
            if term.cl not in out:
                out.append(term.cl)
    return out


def _leading_term_check(engine: Engine, alpha1: HalfInt, beta1: HalfInt, top: HalfInt, base: ClassAtom) -> str:
    """
    Checks that d([-top,beta_1]) (x) base occurs once in mu* of
    d([-alpha_1,beta_1]) x d([-top,-alpha_1-1]) x| base, which pins pi down to the
    Langlands quotient of d([-beta_1,top]) x| base.
    """
    segs = [s for s in (mk_segment(-alpha1, beta1), mk_segment(-top, -alpha1 - 1)) if s is not None]
    phi = induced(segs, base)
    m = engine.jacquet_multiplicity(phi, Delta(seg(-top, beta1)), base)
    if m.is_exact and m.lower == 1:
        return f'[mu*({phi}) : d({-top},{beta1}) (x) {base}] = 1'
    log.warning('leading term of %s has multiplicity %s, expected 1', phi, m)
    return f'[mu*({phi}) : d({-top},{beta1}) (x) {base}] is {m}, expected 1'


def _half_range(lo: HalfInt, hi: HalfInt) -> List[HalfInt]:
    return [lo + k for k in range(lo.steps_to(hi) + 1)] if lo <= hi else []


def analyze_candidates(a: HalfLike, b: HalfLike, c: HalfLike, sign: Sign, engine: Optional[Engine] = None) -> CandidateAnalysis:
    """
    Replays the embedding case analysis for the non-tempered subquotients of
    d([1/2,c]) x| sigma^sign_{a,b}, other than its Langlands quotient.
    """
    a, b, c = half(a), half(b), half(c)
    if not (HALF <= a < b < c):
        raise AtomError(f'need 1/2 <= a < b < c, got a={a}, b={b}, c={c}')
    engine = engine or default_engine()
    sigma = SignedSeg(a, b, sign)
    out = CandidateAnalysis(a, b, c, sign)

    # beta_1 = -1/2: sigma_1 = sigma and 2 alpha_1 + 1 is a Jordan block of sigma.
    minus_half = -HALF
    for alpha1, pi_prime in ((a, SignedSeg(b, c, sign)), (b, SignedSeg(a, c, sign))):
        out.branches.append(Branch(
            minus_half, alpha1, sigma, pi_prime, make_lang([seg(HALF, alpha1)], pi_prime),
            note='pi\' tempered'
        ))
    # A non-tempered pi' needs alpha_1 <= a < b < alpha_2 <= c and
    # -alpha_1 - 1/2 <= -alpha_2 - b at once; the second forces alpha_2 < alpha_1.
    pairs = [
        (x, y) for x in _half_range(HALF, a) for y in _half_range(b + 1, c)
        if -x - HALF <= -y - b
    ]
    out.branches.append(Branch(
        minus_half, sigma1=sigma,
        note=f'pi\' non-tempered: {len(pairs)} admissible (alpha_1, alpha_2)'
    ))
    if pairs:
        log.warning('non-tempered branch admits %s', pairs)

    # beta_1 = a: sigma_1 is read off mu*(sigma).
    options = _sigma1_options(engine, sigma, a)
    for sigma1 in options:
        if sigma1 != sigma_a(b):
            out.branches.append(Branch(a, sigma1=sigma1, note='no case table for this sigma_1'))
            continue
        for alpha1 in _half_range(a + 1, c):
            env = {'a': a, 'b': b, 'c': c, 'x': alpha1}
            for row in CASE_TABLE:
                if not row.constraint.holds(env):
                    continue
                if row.flag:
                    log.warning('%s', row.flag)
                for text in row.options:
                    pi_prime = instantiate(parse_template(text), env)
                    base = _tempered_base(pi_prime)  # type: ignore
                    top = c if base == sigma_a(b) else b
                    result = make_lang([seg(-a, top)], base)  # type: ignore
                    out.branches.append(Branch(
                        a, alpha1, sigma1, pi_prime, result,  # type: ignore
                        note=_leading_term_check(engine, alpha1, a, top, base),
                        flag=row.flag
                    ))
    if not options:
        out.branches.append(Branch(a, note='no tempered sigma_1 with d(1/2,a) (x) sigma_1 in mu*'))

    # beta_1 = b: d([alpha_1+1,c]) x| sigma_1 is irreducible for b < alpha_1 <= c.
    options = _sigma1_options(engine, sigma, b)
    for sigma1 in options:
        for alpha1 in _half_range(b + 1, c):
            rest = mk_segment(alpha1 + 1, c)
            pi_prime = sigma1 if rest is None else make_lang([rest], sigma1)  # type: ignore
            out.branches.append(Branch(
                b, alpha1, sigma1, pi_prime, make_lang([seg(-b, c)], sigma1),  # type: ignore
                note=_leading_term_check(engine, alpha1, b, c, sigma1)
            ))
    if not options:
        out.branches.append(Branch(b, note='no tempered sigma_1 with d(1/2,b) (x) sigma_1 in mu*'))

    log.info('%s candidates for d(1/2,%s) |x %s', len(out.candidates), c, sigma)
    return out


def enumerate_nontempered_candidates(a: HalfLike, b: HalfLike, c: HalfLike, sign: Sign, engine: Optional[Engine] = None) -> List[ClassAtom]:
    return analyze_candidates(a, b, c, sign, engine).candidates
