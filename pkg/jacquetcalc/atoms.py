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
    'AtomError', 'Sign', 'DS3Tag', 'Cusp', 'SIGMA', 'SignedSeg', 'LangSeg', 'DS3', 'Temp',
    'Lang', 'ClassAtom', 'InducedLabel', 'Label', 'sigma_a', 'ds3_named', 'make_lang',
    'induced', 'canonicalize_induced', 'atom_identify', 'classical_support', 'rank',
    'is_tempered', 'has_closed_form', 'segment_subquotients',
]

import enum
from dataclasses import dataclass
from typing import Iterable, List, Tuple, Union

from .formal import Combination
from .segment import HALF, HalfInt, HalfLike, Segment, dual_segment, half, segment_text

class AtomError(ValueError):
    pass


class Sign(enum.Enum):
    PLUS = '+'
    MINUS = '-'

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, s: str) -> 'Sign':
        try:
            return cls(s.strip())
        except ValueError:
            raise AtomError(f'sign must be + or -, not {s!r}') from None


class DS3Tag(enum.Enum):
    # sigma^+_{a,b,c}, which is also sigma^+_{b,c,a}
    PLUS = 'plus'
    # the minus piece of d([-b,c]) x| sigma_a
    MINUS_BCA = 'minus_bca'
    # the minus piece of d([-a,b]) x| sigma_c
    MINUS_ABC = 'minus_abc'

    def __str__(self) -> str:
        return self.value


def _on_line(*xs: HalfInt) -> None:
    for x in xs:
        if x.is_integer:
            raise AtomError(f'exponent {x} is not in Z+1/2')


@dataclass(frozen=True)
class Cusp:
    """
    The fixed cuspidal representation sigma, with nu^(1/2) rho x| sigma reducible.
    """
    @property
    def sort_key(self) -> Tuple:
        return (0,)

    def __str__(self) -> str:
        return 'sigma'


SIGMA = Cusp()


@dataclass(frozen=True)
class SignedSeg:
    """
    delta([nu^-c rho, nu^d rho]_sign; sigma), a discrete series (or, when c = d, a
    tempered summand).  SignedSeg(-1/2, a, +) is sigma_a.
    """
    c: HalfInt
    d: HalfInt
    sign: Sign

    def __post_init__(self) -> None:
        _on_line(self.c, self.d)
        if self.d < self.c or self.c < -HALF or self.c + self.d < 0:
            raise AtomError(f'no signed segment with c={self.c}, d={self.d}')
        if self.sign is Sign.MINUS and self.c < HALF:
            raise AtomError(f'd([{-self.c},{self.d}]) x| sigma has no minus piece')

    @property
    def segment(self) -> Segment:
        return Segment(-self.c, self.d)

    @property
    def sort_key(self) -> Tuple:
        return (1, self.c.twice, self.d.twice, self.sign.value)

    def __str__(self) -> str:
        if self.c == -HALF:
            return f'sigma_a{{{self.d}}}'
        return f'ds{{b={self.c},c={self.d},{self.sign}}}'


@dataclass(frozen=True)
class LangSeg:
    """
    The Langlands quotient L(delta([nu^-c rho, nu^d rho]) x| sigma).
    """
    c: HalfInt
    d: HalfInt

    def __post_init__(self) -> None:
        _on_line(self.c, self.d)
        if self.c + self.d < 0:
            raise AtomError(f'[{-self.c},{self.d}] is empty')
        if not (self.c < HALF or self.c < self.d):
            raise AtomError(f'd([{-self.c},{self.d}]) x| sigma has no Langlands quotient of its own')

    @property
    def segment(self) -> Segment:
        return Segment(-self.c, self.d)

    @property
    def sort_key(self) -> Tuple:
        return (2, self.c.twice, self.d.twice)

    def __str__(self) -> str:
        return f'L({self.segment} ; sigma)'


@dataclass(frozen=True)
class DS3:
    a: HalfInt
    b: HalfInt
    c: HalfInt
    tag: DS3Tag

    def __post_init__(self) -> None:
        _on_line(self.a, self.b, self.c)
        if not (HALF <= self.a < self.b < self.c):
            raise AtomError(f'discrete series parameters must satisfy 1/2 <= a < b < c, not {self.a},{self.b},{self.c}')

    @property
    def sort_key(self) -> Tuple:
        return (3, self.a.twice, self.b.twice, self.c.twice, self.tag.value)

    def __str__(self) -> str:
        return f'ds3{{{self.a},{self.b},{self.c},{self.tag}}}'


@dataclass(frozen=True)
class Temp:
    """
    T^sign, one of the two tempered summands of delta([nu^-a rho, nu^a rho]) x| sigma_c.
    """
    a: HalfInt
    c: HalfInt
    sign: Sign

    def __post_init__(self) -> None:
        _on_line(self.a, self.c)
        if not (HALF <= self.a < self.c):
            raise AtomError(f'T needs 1/2 <= a < c, not a={self.a}, c={self.c}')

    @property
    def sort_key(self) -> Tuple:
        return (4, self.a.twice, self.c.twice, self.sign.value)

    def __str__(self) -> str:
        return f'T{{{self.a},{self.c},{self.sign}}}'


Tempered = Union[Cusp, SignedSeg, DS3, Temp]


def _lang_order(s: Segment) -> Tuple[int, int, int]:
    return (-s.e.twice, s.lo.twice, s.hi.twice)


@dataclass(frozen=True)
class Lang:
    """
    The Langlands quotient L(delta_1 x ... x delta_k x| tau).  Segments are listed by
    decreasing central exponent.  Single segments over sigma are LangSeg atoms; use
    make_lang() to get the normalized atom.
    """
    segs: Tuple[Segment, ...]
    tau: 'Tempered'

    def __post_init__(self) -> None:
        if not self.segs:
            raise AtomError('a Langlands quotient needs at least one segment')
        if not is_tempered(self.tau):
            raise AtomError(f'{self.tau} is not tempered')
        for s in self.segs:
            _on_line(s.lo)
            if s.e.twice <= 0:
                raise AtomError(f'{s!r} has non-positive central exponent')
        object.__setattr__(self, 'segs', tuple(sorted(self.segs, key=_lang_order)))

    @property
    def sort_key(self) -> Tuple:
        return (5, tuple((s.lo.twice, s.hi.twice) for s in self.segs), self.tau.sort_key)

    def __str__(self) -> str:
        return f'L({" x ".join(str(s) for s in self.segs)} ; {self.tau})'


ClassAtom = Union[Cusp, SignedSeg, LangSeg, DS3, Temp, Lang]


@dataclass(frozen=True)
class InducedLabel:
    """
    delta(seg_1) x ... x delta(seg_k) x| base, a possibly reducible induced
    representation, known only through its class in R(G).
    """
    segs: Tuple[Segment, ...]
    base: ClassAtom

    def __post_init__(self) -> None:
        object.__setattr__(self, 'segs', tuple(sorted(self.segs)))

    @property
    def sort_key(self) -> Tuple:
        return (6, tuple((s.lo.twice, s.hi.twice) for s in self.segs), self.base.sort_key)

    def __str__(self) -> str:
        if not self.segs:
            return str(self.base)
        return f'{" x ".join(segment_text(s) for s in self.segs)} |x {self.base}'


Label = Union[ClassAtom, InducedLabel]


def is_tempered(x: object) -> bool:
    return isinstance(x, (Cusp, SignedSeg, DS3, Temp))


def has_closed_form(x: object) -> bool:
    """
    Whether mu* of x is given by a formula (as opposed to witness facts).
    """
    return isinstance(x, (Cusp, SignedSeg, LangSeg))


def sigma_a(a: HalfLike) -> SignedSeg:
    return SignedSeg(-HALF, half(a), Sign.PLUS)


def ds3_named(x: HalfLike, y: HalfLike, z: HalfLike, sign: Sign) -> DS3:
    """
    sigma^sign_{x,y,z} with the subscripts read as written: sigma^-_{b,c,a} is the minus
    piece of d([-b,c]) x| sigma_a and sigma^-_{a,b,c} that of d([-a,b]) x| sigma_c.
    """
    x, y, z = half(x), half(y), half(z)
    a, b, c = sorted((x, y, z))
    if sign is Sign.PLUS:
        return DS3(a, b, c, DS3Tag.PLUS)
    if (x, y, z) == (b, c, a):
        return DS3(a, b, c, DS3Tag.MINUS_BCA)
    if (x, y, z) == (a, b, c):
        return DS3(a, b, c, DS3Tag.MINUS_ABC)
    raise AtomError(f'sigma^-_{{{x},{y},{z}}} is not a named discrete series')


def make_lang(segs: Iterable[Segment], tau: Tempered) -> ClassAtom:
    segs = tuple(segs)
    if len(segs) == 1 and isinstance(tau, Cusp):
        return LangSeg(-segs[0].lo, segs[0].hi)
    return Lang(segs, tau)


def canonicalize_induced(label: InducedLabel) -> InducedLabel:
    """
    Replaces every segment with negative central exponent by its dual, which leaves the
    class in R(G) unchanged.
    """
    return InducedLabel(
        tuple(dual_segment(s) if s.e.twice < 0 else s for s in label.segs),  # type: ignore
        label.base
    )


def induced(segs: Iterable[Segment], base: ClassAtom) -> Label:
    """
    Canonical induced label, or base itself when there is nothing to induce.
    """
    segs = tuple(segs)
    if not segs:
        return base
    return canonicalize_induced(InducedLabel(segs, base))


def atom_identify(x: Label, y: Label) -> bool:
    """
    Equality of irreducible labels.  Constructors already normalize the names that
    denote the same representation, so this is plain equality.
    """
    return x == y


def classical_support(x: Label) -> Tuple[HalfInt, ...]:
    """
    The cuspidal support of x on the rho line, as a sorted tuple of absolute exponents.
    """
    exps = []
    if isinstance(x, (SignedSeg, LangSeg)):
        exps.extend(x.segment.support())
    elif isinstance(x, DS3):
        exps.extend(Segment(-x.b, x.c).support())
        exps.extend(Segment(HALF, x.a).support())
    elif isinstance(x, Temp):
        exps.extend(Segment(-x.a, x.a).support())
        exps.extend(Segment(HALF, x.c).support())
    elif isinstance(x, Lang):
        for s in x.segs:
            exps.extend(s.support())
        exps.extend(classical_support(x.tau))
    elif isinstance(x, InducedLabel):
        for s in x.segs:
            exps.extend(s.support())
        exps.extend(classical_support(x.base))
    return tuple(sorted(abs(e) for e in exps))


def rank(x: Label) -> int:
    return len(classical_support(x))


def segment_subquotients(s: Segment) -> 'Combination[ClassAtom]':
    """
    The irreducible subquotients of delta(s) x| sigma, each with multiplicity one.
    Writing the canonical form of s as [-c,d]: for c < -1/2 the representation is
    irreducible, for c = -1/2 it has length two, for c = d it is a sum of two tempered
    pieces and otherwise it has length three.
    """
    if s.e.twice < 0:
        s = Segment(-s.hi, -s.lo)
    c, d = -s.lo, s.hi
    _on_line(c, d)
    if c < -HALF:
        return Combination.of(LangSeg(c, d))
    terms: List[Tuple[ClassAtom, int]] = [(SignedSeg(c, d, Sign.PLUS), 1)]
    if c >= HALF:
        terms.append((SignedSeg(c, d, Sign.MINUS), 1))
    if c != d:
        terms.append((LangSeg(c, d), 1))
    return Combination.from_terms(terms)
