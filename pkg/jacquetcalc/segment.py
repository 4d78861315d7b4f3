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
    'SegmentError', 'HalfInt', 'half', 'HALF', 'Segment', 'MaybeSegment', 'SegmentRelation',
    'mk_segment', 'seg', 'e_center', 'dual_segment', 'segment_relations', 'segment_text',
]

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Optional, Tuple, Union

from .utils import recache

class SegmentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HalfInt:
    """
    An element of (1/2)Z, stored as twice its value so arithmetic stays exact.
    Compares and hashes as the number it denotes, so HalfInt(1) == Fraction(1, 2)
    and HalfInt(2) == 1.
    """
    twice: int

    @classmethod
    def parse(cls, s: str) -> 'HalfInt':
        """
        Parses "3", "-3", "3/2" or "-3/2".  Any other denominator is rejected.
        """
        m = recache(r'^\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*$').match(s)
        if not m:
            raise SegmentError(f'not a half-integer: {s!r}')
        sign = -1 if m.group(1) == '-' else 1
        num = int(m.group(2))
        den = int(m.group(3)) if m.group(3) else 1
        if den == 1:
            return cls(sign * 2 * num)
        if den == 2:
            return cls(sign * num)
        raise SegmentError(f'not a half-integer: {s!r}')

    @classmethod
    def of(cls, value: Union['HalfInt', int, str, Fraction]) -> 'HalfInt':
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError('bool is not a half-integer')
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise SegmentError(f'not a half-integer: {value}')
            return cls(int(doubled))
        raise TypeError(f'cannot convert {type(value).__name__} to HalfInt')

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: Union['HalfInt', int]) -> 'HalfInt':
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: Union['HalfInt', int]) -> 'HalfInt':
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: Union['HalfInt', int]) -> 'HalfInt':
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> 'HalfInt':
        return HalfInt(-self.twice)

    def __abs__(self) -> 'HalfInt':
        return HalfInt(abs(self.twice))

    def _diff(self, other: Any) -> Union[int, Fraction, None]:
        """
        Something with the sign of self - other, or None for non-numbers.
        """
        if isinstance(other, HalfInt):
            return self.twice - other.twice
        if isinstance(other, bool):
            return None
        if isinstance(other, (int, Fraction)):
            return self.twice - 2 * other
        return None

    def __eq__(self, other: Any) -> bool:
        d = self._diff(other)
        return NotImplemented if d is None else d == 0

    def __hash__(self) -> int:
        # Equal to hash() of the equal int or Fraction; twice / 2 is exact as a float.
        return hash(self.twice / 2)

    def __lt__(self, other: Any) -> bool:
        d = self._diff(other)
        return NotImplemented if d is None else d < 0

    def __le__(self, other: Any) -> bool:
        d = self._diff(other)
        return NotImplemented if d is None else d <= 0

    def __gt__(self, other: Any) -> bool:
        d = self._diff(other)
        return NotImplemented if d is None else d > 0

    def __ge__(self, other: Any) -> bool:
        d = self._diff(other)
        return NotImplemented if d is None else d >= 0

    def steps_to(self, other: 'HalfInt') -> int:
        """
        Returns other - self as an int, failing when the difference is not integral.
        """
        diff = other.twice - self.twice
        if diff % 2:
            raise SegmentError(f'{other} - {self} is not an integer')
        return diff // 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f'{self.twice}/2'

    def __repr__(self) -> str:
        return f'HalfInt({self})'


HalfLike = Union[HalfInt, int, str, Fraction]

def half(value: HalfLike) -> HalfInt:
    return HalfInt.of(value)


# The reducibility point of nu^(1/2) rho x| sigma.
HALF = HalfInt(1)


@dataclass(frozen=True, order=True)
class Segment:
    """
    A non-empty segment [lo, hi] of exponents on the cuspidal line.  The empty segment
    is represented by None throughout the package (see MaybeSegment).
    """
    lo: HalfInt
    hi: HalfInt

    def __post_init__(self) -> None:
        if self.lo.steps_to(self.hi) < 0:
            raise SegmentError(f'[{self.lo},{self.hi}] is not a non-empty segment')

    @property
    def length(self) -> int:
        return self.lo.steps_to(self.hi) + 1

    @property
    def twice_length(self) -> int:
        return 2 * self.length

    @property
    def e(self) -> HalfInt:
        return e_center(self)

    def support(self) -> Tuple[HalfInt, ...]:
        """
        Exponents in increasing order.
        """
        return tuple(HalfInt(self.lo.twice + 2 * k) for k in range(self.length))

    def word(self) -> Tuple[HalfInt, ...]:
        """
        The descending cuspidal word (hi, hi-1, ..., lo).
        """
        return tuple(reversed(self.support()))

    def __contains__(self, x: object) -> bool:
        if not isinstance(x, HalfInt):
            return False
        return self.lo <= x <= self.hi and (x.twice - self.lo.twice) % 2 == 0

    def __str__(self) -> str:
        return f'd({self.lo},{self.hi})'

    def __repr__(self) -> str:
        return f'[{self.lo},{self.hi}]'


MaybeSegment = Optional[Segment]


class SegmentRelation(NamedTuple):
    linked: bool
    # None when the union is not a segment
    union: MaybeSegment
    # None when the segments are disjoint
    intersection: MaybeSegment


def mk_segment(x: HalfLike, y: HalfLike) -> MaybeSegment:
    """
    Builds the segment [x,y].  Returns None (the empty segment) when y - x = -1.

    Raises SegmentError when y - x is not an integer or is smaller than -1; such
    values only arise from a malformed formula index.
    """
    x, y = half(x), half(y)
    steps = x.steps_to(y)
    if steps == -1:
        return None
    if steps < -1:
        raise SegmentError(f'[{x},{y}] has length {steps + 1}')
    return Segment(x, y)


def seg(x: HalfLike, y: HalfLike) -> Segment:
    """
    Like mk_segment() but requires a non-empty result.
    """
    s = mk_segment(x, y)
    if s is None:
        raise SegmentError(f'[{x},{y}] is empty')
    return s


def e_center(delta: MaybeSegment) -> HalfInt:
    if delta is None:
        raise SegmentError('the empty segment has no center')
    return HalfInt((delta.lo.twice + delta.hi.twice) // 2)


def dual_segment(delta: MaybeSegment) -> MaybeSegment:
    if delta is None:
        return None
    return Segment(-delta.hi, -delta.lo)


def segment_relations(d1: MaybeSegment, d2: MaybeSegment) -> SegmentRelation:
    if d1 is None or d2 is None:
        raise SegmentError('segment relations need non-empty segments')
    if (d1.lo.twice - d2.lo.twice) % 2:
        # Different cuspidal lines inside one: exponents never meet
        return SegmentRelation(False, None, None)
    lo, hi = max(d1.lo, d2.lo), min(d1.hi, d2.hi)
    intersection = Segment(lo, hi) if lo <= hi else None
    if lo.steps_to(hi) >= -1:
        union: MaybeSegment = Segment(min(d1.lo, d2.lo), max(d1.hi, d2.hi))
    else:
        union = None
    linked = union is not None and union != d1 and union != d2
    return SegmentRelation(linked, union, intersection)


def segment_text(delta: MaybeSegment) -> str:
    """
    Textual form: "d(x,y)", or "1" for the empty segment.
    """
    return '1' if delta is None else str(delta)
