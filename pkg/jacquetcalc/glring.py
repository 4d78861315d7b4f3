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
    'Word', 'LPair', 'GLStandard', 'Delta', 'GLIrr', 'ONE', 'decompose_pair', 'langlands_gl',
    'is_irreducible', 'word_expansion', 'word_count', 'ps_count', 'identifying_word',
    'gl_multiplicity', 'contains_delta_in_standard', 'contains_langlands_pair', 'gl_product',
]

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .formal import Combination
from .log import log
from .segment import HalfInt, MaybeSegment, Segment, SegmentError, segment_relations
from .verdict import MultiplicityVerdict, exact

# A cuspidal exponent word, read left to right.
Word = Tuple[HalfInt, ...]

def _seg_key(s: Segment) -> Tuple[int, int]:
    return (s.lo.twice, s.hi.twice)


@dataclass(frozen=True)
class LPair:
    """
    The Langlands quotient L(d1, d2) of two linked segments, i.e. the unique irreducible
    quotient of d1 x d2 when d1 has the larger central exponent.
    """
    first: Segment
    second: Segment

    def __post_init__(self) -> None:
        if not segment_relations(self.first, self.second).linked:
            raise SegmentError(f'{self.first!r} and {self.second!r} are not linked')
        if self.first.e < self.second.e:
            raise SegmentError(f'L({self.first},{self.second}) must list the larger exponent first')

    @classmethod
    def make(cls, d1: Segment, d2: Segment) -> 'LPair':
        a, b = sorted((d1, d2), key=lambda s: (-s.e.twice, _seg_key(s)))
        return cls(a, b)

    @property
    def segs(self) -> Tuple[Segment, Segment]:
        return (self.first, self.second)

    @property
    def rank(self) -> int:
        return self.first.length + self.second.length

    def support(self) -> Tuple[HalfInt, ...]:
        return tuple(sorted(self.first.support() + self.second.support()))

    def resolution(self) -> 'Combination[GLStandard]':
        rel = segment_relations(self.first, self.second)
        return Combination.from_terms([
            (GLStandard.of(self.first, self.second), 1),
            (GLStandard.of(rel.union, rel.intersection), -1),
        ])

    @property
    def sort_key(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return (_seg_key(self.first), _seg_key(self.second))

    def __str__(self) -> str:
        return f'L({self.first},{self.second})'


@dataclass(frozen=True)
class GLStandard:
    """
    A monomial of R(GL): a product of segment representations, possibly times Langlands
    pairs.  Without pairs this is a standard basis element; the empty product is the
    identity.  Factors are kept sorted, so equal products compare equal.
    """
    segs: Tuple[Segment, ...] = ()
    pairs: Tuple[LPair, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, 'segs', tuple(sorted(self.segs)))
        object.__setattr__(self, 'pairs', tuple(sorted(self.pairs, key=lambda p: p.sort_key)))

    @classmethod
    def of(cls, *segs: MaybeSegment) -> 'GLStandard':
        """
        Product of the given segments, dropping empty ones.
        """
        return cls(tuple(s for s in segs if s is not None))

    def __mul__(self, other: 'GLStandard') -> 'GLStandard':
        return GLStandard(self.segs + other.segs, self.pairs + other.pairs)

    @property
    def rank(self) -> int:
        return sum(s.length for s in self.segs) + sum(p.rank for p in self.pairs)

    @property
    def is_standard(self) -> bool:
        return not self.pairs

    def support(self) -> Tuple[HalfInt, ...]:
        exps: List[HalfInt] = []
        for s in self.segs:
            exps.extend(s.support())
        for p in self.pairs:
            exps.extend(p.support())
        return tuple(sorted(exps))

    def resolve(self) -> 'Combination[GLStandard]':
        """
        Rewrites the Langlands pairs through their resolutions, giving a combination of
        standard elements.
        """
        acc = Combination.of(GLStandard(self.segs))
        for p in self.pairs:
            res = p.resolution()
            acc = acc.expand(lambda m, res=res: res.map_keys(lambda n, m=m: m * n))
        return acc

    @property
    def sort_key(self) -> Tuple[int, Tuple[Tuple[int, int], ...], Tuple]:
        return (self.rank, tuple(_seg_key(s) for s in self.segs), tuple(p.sort_key for p in self.pairs))

    def factors(self) -> List[str]:
        return [str(s) for s in self.segs] + [str(p) for p in self.pairs]

    def __str__(self) -> str:
        return ' x '.join(self.factors()) or '1'


ONE = GLStandard()


@dataclass(frozen=True)
class Delta:
    """
    The essentially square-integrable representation of a single segment, as a target
    for multiplicity questions.
    """
    seg: Segment

    def standard(self) -> GLStandard:
        return GLStandard.of(self.seg)

    def __str__(self) -> str:
        return str(self.seg)


# Irreducible GL targets the engine recognizes.  An unlinked product of segments is
# given as a GLStandard without pairs.
GLIrr = Union[Delta, LPair, GLStandard]

def _as_combination(m: Union[GLIrr, Combination[GLStandard]]) -> Combination[GLStandard]:
    if isinstance(m, Combination):
        return m.expand(lambda g: g.resolve())
    if isinstance(m, Delta):
        return Combination.of(m.standard())
    if isinstance(m, LPair):
        return m.resolution()
    return m.resolve()


def decompose_pair(d1: MaybeSegment, d2: MaybeSegment) -> List[Tuple[GLIrr, Combination[GLStandard]]]:
    """
    Composition factors of d1 x d2 with their expressions in the standard basis.
    """
    if d1 is None or d2 is None:
        raise SegmentError('decompose_pair needs two non-empty segments')
    rel = segment_relations(d1, d2)
    if not rel.linked:
        prod = GLStandard.of(d1, d2)
        return [(prod, Combination.of(prod))]
    merged = GLStandard.of(rel.union, rel.intersection)
    pair = LPair.make(d1, d2)
    return [(merged, Combination.of(merged)), (pair, pair.resolution())]


def langlands_gl(d1: MaybeSegment, d2: MaybeSegment) -> GLStandard:
    """
    The GL factor L(d1, d2) of the Langlands-quotient Jacquet formula: a single segment
    when a slot is empty, the (irreducible) product when the segments are not linked
    and the Langlands pair otherwise.
    """
    if d1 is None or d2 is None:
        return GLStandard.of(d1, d2)
    if not segment_relations(d1, d2).linked:
        return GLStandard.of(d1, d2)
    return GLStandard(pairs=(LPair.make(d1, d2),))


def is_irreducible(m: GLStandard) -> bool:
    if m.pairs:
        return len(m.pairs) == 1 and not m.segs
    return all(
        not segment_relations(x, y).linked for x, y in combinations(m.segs, 2)
    )


def _interleavings(u: Word, v: Word) -> Iterable[Word]:
    n = len(u) + len(v)
    for slots in combinations(range(n), len(v)):
        out: List[HalfInt] = []
        ui = vi = 0
        chosen = set(slots)
        for k in range(n):
            if k in chosen:
                out.append(v[vi])
                vi += 1
            else:
                out.append(u[ui])
                ui += 1
        yield tuple(out)


@lru_cache(maxsize=4096)
def _standard_words(segs: Tuple[Segment, ...]) -> Dict[Word, int]:
    words: Counter = Counter({(): 1})
    for s in segs:
        nxt: Counter = Counter()
        for w, n in words.items():
            for x in _interleavings(w, s.word()):
                nxt[x] += n
        words = nxt
    return dict(words)


def word_expansion(m: Union[GLIrr, Combination[GLStandard]]) -> Dict[Word, int]:
    """
    The multiset of cuspidal words of m: every shuffle of the descending segment words,
    with multiplicity.  Langlands pairs are counted through their resolutions.
    """
    acc: Dict[Word, int] = {}
    for std, coeff in _as_combination(m).items():
        for w, n in _standard_words(std.segs).items():
            acc[w] = acc.get(w, 0) + coeff * n
    return {w: n for w, n in acc.items() if n}


def _count_standard(segs: Tuple[Segment, ...], word: Word) -> int:
    words = [s.word() for s in segs]
    if sum(len(w) for w in words) != len(word):
        return 0

    @lru_cache(maxsize=None)
    def go(pos: Tuple[int, ...]) -> int:
        k = sum(pos)
        if k == len(word):
            return 1
        total = 0
        for i, w in enumerate(words):
            if pos[i] < len(w) and w[pos[i]] == word[k]:
                total += go(pos[:i] + (pos[i] + 1,) + pos[i + 1:])
        return total

    return go(tuple(0 for _ in words))


def word_count(m: Union[GLIrr, Combination[GLStandard]], word: Word) -> int:
    """
    Number of times word occurs in word_expansion(m), computed without enumerating.
    """
    return sum(coeff * _count_standard(std.segs, word) for std, coeff in _as_combination(m).items())


def ps_count(word: Word, signed: bool = False) -> int:
    """
    Number of times word occurs in the Jacquet module of the principal series with the
    same exponents.  For a classical principal series (signed) exponents are grouped by
    absolute value.
    """
    values = Counter(abs(x) if signed else x for x in word)
    return math.prod(math.factorial(n) for n in values.values())


@lru_cache(maxsize=1024)
def identifying_word(target: GLIrr) -> Optional[Word]:
    """
    A word whose whole principal-series count belongs to target, so that counting it
    measures the multiplicity of target exactly.  Returns None if there is none.
    """
    res = _as_combination(target)
    if not res:
        return None
    candidates: List[Word] = [tuple(reversed(res.keys()[0].support()))]
    candidates.extend(sorted(word_expansion(res), key=lambda w: tuple(x.twice for x in w)))
    for u in candidates:
        n = word_count(res, u)
        if n > 0 and n == ps_count(u):
            return u
    return None


def gl_multiplicity(m: Union[GLStandard, Combination[GLStandard]], target: GLIrr) -> MultiplicityVerdict:
    """
    Multiplicity of the irreducible target in m.
    """
    res_m = _as_combination(m)
    res_t = _as_combination(target)
    if not res_m or not res_t:
        return exact(0)
    t_support = res_t.keys()[0].support()
    if all(std.support() != t_support for std in res_m.keys()):
        return exact(0)
    u = identifying_word(target)
    if u is not None:
        n, rem = divmod(word_count(res_m, u), word_count(res_t, u))
        if rem == 0 and n >= 0:
            return exact(n)
        log.warning('word %s does not divide evenly between %s and %s', u, m, target)
    # Only bounds from the words of the target
    upper = min(
        word_count(res_m, w) // n for w, n in word_expansion(res_t).items() if n > 0
    )
    return MultiplicityVerdict(0, max(upper, 0), witness='words')


def contains_delta_in_standard(m: GLStandard, delta: Segment) -> int:
    """
    1 if the segments of m are pairwise disjoint and tile delta, else 0.
    """
    if m.pairs:
        raise SegmentError('contains_delta_in_standard needs a standard element')
    return 1 if m.support() == delta.support() else 0


def contains_langlands_pair(m: GLStandard, t: LPair) -> MultiplicityVerdict:
    return gl_multiplicity(m, t)


def gl_product(x: Combination[GLStandard], y: Combination[GLStandard]) -> Combination[GLStandard]:
    """
    Product in R(GL) of two combinations of monomials.
    """
    return x.expand(lambda m: y.map_keys(lambda n: m * n))
