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
    'FormulaError', 'Term', 'RGTensor', 'mu_star_base', 'mu_star_formula1', 'mu_star_iterated',
    'mu_star_induced', 'mu_star_delta_signed', 'mu_star_langlands_segment', 'sigma_part',
    'cuspidal_words', 'resolve_classical', 'mu_star_partition', 'conserves_support',
]

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from .atoms import (
    SIGMA, AtomError, Cusp, InducedLabel, Label, LangSeg, Sign, SignedSeg, classical_support,
    induced, segment_subquotients,
)
from .formal import Combination
from .glring import ONE, GLStandard, Word, gl_product, langlands_gl, word_expansion
from .log import log
from .segment import HALF, HalfInt, HalfLike, MaybeSegment, Segment, half, mk_segment

class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    """
    A basis element gl (x) cl of R(GL) (x) R(G).
    """
    gl: GLStandard
    cl: Label

    @property
    def sort_key(self) -> Tuple:
        return (self.gl.sort_key, self.cl.sort_key)

    def __str__(self) -> str:
        return f'{self.gl} (x) {self.cl}'


class RGTensor:
    """
    An element of R(GL) (x) R(G), such as a semisimplified Jacquet module.  Row counts
    record how many terms each row of a Jacquet formula contributed.
    """
    def __init__(self, terms: Combination[Term], row_counts: Optional[Dict[str, int]] = None):
        self.terms = terms
        self.row_counts: Dict[str, int] = dict(row_counts or {})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Term, int]], row_counts: Optional[Dict[str, int]] = None) -> 'RGTensor':
        return cls(Combination.from_terms(pairs), row_counts)

    def __add__(self, other: 'RGTensor') -> 'RGTensor':
        return RGTensor(self.terms + other.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RGTensor):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, term: Term) -> int:
        return self.terms[term]

    def items(self) -> List[Tuple[Term, int]]:
        return self.terms.items()

    def sigma_terms(self) -> Combination[GLStandard]:
        return Combination.from_terms((t.gl, n) for t, n in self.terms.items() if t.cl == SIGMA)

    def expand(self, gl_fn=None, cl_fn=None) -> 'RGTensor':
        """
        Rewrites the GL parts with gl_fn and the classical parts with cl_fn, both
        returning combinations; missing functions leave that side unchanged.
        """
        def rewrite(t: Term) -> Combination[Term]:
            gls = gl_fn(t.gl) if gl_fn else Combination.of(t.gl)
            cls = cl_fn(t.cl) if cl_fn else Combination.of(t.cl)
            return Combination.from_terms(
                (Term(g, c), m * n) for g, m in gls.items() for c, n in cls.items()
            )
        return RGTensor(self.terms.expand(rewrite), self.row_counts)

    def is_nonnegative(self) -> bool:
        return self.terms.is_nonnegative()

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {'gl': t.gl.factors(), 'cl': str(t.cl), 'coeff': n}
            for t, n in self.terms.items()
        ]

    def __str__(self) -> str:
        return '\n'.join(f'{n} * {t}' if n != 1 else str(t) for t, n in self.terms.items()) or '0'

    def __repr__(self) -> str:
        return f'RGTensor({self.terms!r})'


def _cd(c: HalfLike, d: HalfLike) -> Tuple[HalfInt, HalfInt]:
    c, d = half(c), half(d)
    if (c + d).twice < 0 or not (c + d).is_integer:
        raise FormulaError(f'c={c}, d={d} do not describe a segment [-c,d]')
    return c, d


def _hrange(lo: HalfInt, hi: HalfInt) -> Iterable[HalfInt]:
    x = lo
    while x <= hi:
        yield x
        x = x + 1


def _signed_or_zero(s: Segment, sign: Sign) -> Optional[SignedSeg]:
    """
    delta(s_sign; sigma) at canonical parameters, or None where it is zero.
    """
    if s.e.twice < 0:
        s = Segment(-s.hi, -s.lo)
    c, d = -s.lo, s.hi
    if c < -HALF or (sign is Sign.MINUS and c < HALF):
        return None
    return SignedSeg(c, d, sign)


def _langseg(s: Segment) -> Optional[LangSeg]:
    """
    L(delta(s); sigma) at canonical parameters, or None for a symmetric segment, which
    has no Langlands quotient of its own.
    """
    if s.e.twice < 0:
        s = Segment(-s.hi, -s.lo)
    if s.e.twice == 0:
        return None
    return LangSeg(-s.lo, s.hi)


def mu_star_delta_signed(c: HalfLike, d: HalfLike, sign: Sign, strict: bool = True) -> RGTensor:
    """
    mu* of delta([nu^-c rho, nu^d rho]_sign; sigma).  With strict=False the second row
    also admits i+j = -1; those terms carry a symmetric segment, contribute zero and are
    counted under row2_symmetric.
    """
    c, d = _cd(c, d)
    try:
        SignedSeg(c, d, sign)
    except AtomError as e:
        raise FormulaError(str(e)) from None
    pairs: List[Tuple[Term, int]] = []
    rows = {'row1': 0, 'row2': 0, 'row3': 0}

    for i in _hrange(-c - 1, d - 1):
        for j in _hrange(i + 1, d):
            cl = _signed_or_zero(Segment(i + 1, j), sign)
            if cl is None:
                continue
            pairs.append((Term(GLStandard.of(mk_segment(-i, c), mk_segment(j + 1, d)), cl), 1))
            rows['row1'] += 1

    limit = -1 if strict else 0
    if not strict:
        rows['row2_symmetric'] = 0
    for i in _hrange(-c - 1, c - 1):
        for j in _hrange(i + 1, c):
            if (i + j).twice >= 2 * limit:
                continue
            cl = _langseg(Segment(i + 1, j))
            if cl is None:
                rows['row2_symmetric'] += 1
                continue
            gl = GLStandard.of(mk_segment(-i, c), mk_segment(j + 1, d))
            pairs.append((Term(gl, cl), 1))
            rows['row2'] += 1

    top = HALF - 1 if sign is Sign.PLUS else -HALF - 1
    for i in _hrange(-c - 1, top):
        pairs.append((Term(GLStandard.of(mk_segment(-i, c), mk_segment(i + 1, d)), SIGMA), 1))
        rows['row3'] += 1

    log.debug('mu* of %s: rows %s', SignedSeg(c, d, sign), rows)
    return RGTensor.from_terms(pairs, rows)


def mu_star_langlands_segment(c: HalfLike, d: HalfLike) -> RGTensor:
    """
    mu* of L(delta([nu^-c rho, nu^d rho]); sigma), for c < 1/2 or 1/2 <= c < d.
    """
    c, d = _cd(c, d)
    try:
        LangSeg(c, d)
    except AtomError as e:
        raise FormulaError(str(e)) from None
    pairs: List[Tuple[Term, int]] = []
    rows = {'row1': 0, 'row2': 0}

    for i in _hrange(-c - 1, d - 1):
        for j in _hrange(i + 1, d):
            if (i + j).twice < 0:
                continue
            gl = langlands_gl(mk_segment(-i, c), mk_segment(j + 1, d))
            pairs.append((Term(gl, LangSeg(-i - 1, j)), 1))
            rows['row1'] += 1

    # Below -c-1 the first segment would have negative length.
    for i in _hrange(max(HALF, -c - 1), d):
        gl = langlands_gl(mk_segment(-i, c), mk_segment(i + 1, d))
        pairs.append((Term(gl, SIGMA), 1))
        rows['row2'] += 1

    log.debug('mu* of %s: rows %s', LangSeg(c, d), rows)
    return RGTensor.from_terms(pairs, rows)


def mu_star_base(x: Label, strict: bool = True) -> RGTensor:
    if isinstance(x, Cusp):
        return RGTensor.from_terms([(Term(ONE, SIGMA), 1)])
    if isinstance(x, SignedSeg):
        return mu_star_delta_signed(x.c, x.d, x.sign, strict=strict)
    if isinstance(x, LangSeg):
        return mu_star_langlands_segment(x.c, x.d)
    raise FormulaError(f'no closed form for mu* of {x}')


def _induce(mid: MaybeSegment, cl: Label) -> Label:
    if isinstance(cl, InducedLabel):
        segs, base = cl.segs, cl.base
    else:
        segs, base = (), cl
    if mid is not None:
        segs = segs + (mid,)
    return induced(segs, base)


def mu_star_formula1(delta: MaybeSegment, base: Union[Label, RGTensor], strict: bool = True) -> RGTensor:
    """
    mu* of delta x| base by the structure formula, where base is a label with a closed
    form or an already computed mu*.
    """
    if delta is None:
        raise FormulaError('mu_star_formula1 needs a non-empty segment')
    inner = base if isinstance(base, RGTensor) else mu_star_induced(base, strict=strict)
    x, y = delta.lo, delta.hi
    n = delta.length
    pairs: List[Tuple[Term, int]] = []
    for term, coeff in inner.items():
        for i in range(n + 1):
            for j in range(i + 1):
                gl = GLStandard.of(mk_segment(-y + i, -x), mk_segment(y + 1 - j, y)) * term.gl
                cl = _induce(mk_segment(y + 1 - i, y - j), term.cl)
                pairs.append((Term(gl, cl), coeff))
    return RGTensor.from_terms(pairs)


def mu_star_iterated(segs: Iterable[Segment], base: Label, strict: bool = True) -> RGTensor:
    """
    mu* of delta_1 x ... x delta_k x| base, applying the structure formula once per
    segment, innermost segment last in the list.
    """
    segs = list(segs)
    if any(s is None for s in segs):
        raise FormulaError('mu_star_iterated needs non-empty segments')
    acc = mu_star_base(base, strict=strict)
    for s in reversed(segs):
        acc = mu_star_formula1(s, acc, strict=strict)
    return acc


@lru_cache(maxsize=512)
def _mu_star_induced(label: Label, strict: bool) -> RGTensor:
    if isinstance(label, InducedLabel):
        return mu_star_iterated(label.segs, label.base, strict=strict)
    return mu_star_base(label, strict=strict)


def mu_star_induced(label: Label, strict: bool = True) -> RGTensor:
    """
    mu* of any label whose base has a closed form.  Results are cached and must not be
    mutated.
    """
    return _mu_star_induced(label, strict)


def _base_sigma_part(x: Label) -> Combination[GLStandard]:
    if isinstance(x, Cusp):
        return Combination.of(ONE)
    return mu_star_base(x).sigma_terms()


@lru_cache(maxsize=1024)
def _segment_sigma_part(s: Segment) -> Combination[GLStandard]:
    x, y = s.lo, s.hi
    return Combination.from_terms(
        (GLStandard.of(mk_segment(-y + i, -x), mk_segment(y + 1 - i, y)), 1)
        for i in range(s.length + 1)
    )


def sigma_part(label: Label) -> Combination[GLStandard]:
    """
    The GL parts of the terms of mu*(label) whose classical part is sigma, computed
    without the rest of the expansion.
    """
    if isinstance(label, InducedLabel):
        acc = _base_sigma_part(label.base)
        for s in label.segs:
            acc = gl_product(_segment_sigma_part(s), acc)
        return acc
    return _base_sigma_part(label)


def cuspidal_words(x: Union[Label, RGTensor]) -> Dict[Word, int]:
    """
    The minimal Jacquet module as a multiset of exponent words, read off the terms
    whose classical part is sigma.
    """
    part = x.sigma_terms() if isinstance(x, RGTensor) else sigma_part(x)
    return word_expansion(part)


def resolve_classical(cl: Label) -> Combination[Label]:
    """
    Replaces a single-segment induced label over sigma by its subquotients.  Other
    labels are returned unchanged.
    """
    if isinstance(cl, InducedLabel) and len(cl.segs) == 1 and isinstance(cl.base, Cusp):
        return segment_subquotients(cl.segs[0])
    return Combination.of(cl)


def mu_star_partition(c: HalfLike, d: HalfLike, strict: bool = True) -> Tuple[RGTensor, RGTensor]:
    """
    Both sides of the partition identity for delta([nu^-c rho, nu^d rho]) x| sigma:
    the sum of mu* over its subquotients, and the structure formula with its classical
    parts split into subquotients.  Langlands pairs are resolved on both sides.
    """
    c, d = _cd(c, d)
    s = Segment(-c, d)
    lhs = RGTensor(Combination())
    for atom, n in segment_subquotients(s).items():
        lhs = lhs + RGTensor(n * mu_star_base(atom, strict=strict).terms)
    rhs = mu_star_formula1(s, SIGMA, strict=strict)
    resolve_gl = lambda g: g.resolve()
    return lhs.expand(gl_fn=resolve_gl), rhs.expand(gl_fn=resolve_gl, cl_fn=resolve_classical)


def conserves_support(expansion: RGTensor, label: Label) -> bool:
    """
    Whether every term's GL exponents together with its classical support give the
    support of label, up to sign.
    """
    want = classical_support(label)
    for term in expansion.terms.keys():
        got = tuple(sorted([abs(x) for x in term.gl.support()] + list(classical_support(term.cl))))
        if got != want:
            return False
    return True
