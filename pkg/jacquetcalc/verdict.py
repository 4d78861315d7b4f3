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

__all__ = ['MultiplicityVerdict', 'exact', 'at_least', 'total', 'UNKNOWN']

from dataclasses import dataclass, replace
from typing import Any, Dict, Iterable, Optional, Tuple

@dataclass(frozen=True)
class MultiplicityVerdict:
    """
    What the engine knows about a multiplicity: a lower bound, an optional upper bound
    (None means unbounded), the witness term that produced the upper bound if any, and
    free-form notes collected along the way.
    """
    lower: int = 0
    upper: Optional[int] = None
    witness: Optional[str] = None
    notes: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.lower < 0:
            raise ValueError(f'negative lower bound {self.lower}')
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f'inconsistent bounds {self.lower}..{self.upper}')

    @property
    def kind(self) -> str:
        if self.upper is not None and self.upper == self.lower:
            return 'exact'
        if self.upper is None:
            return 'at_least' if self.lower > 0 else 'unknown'
        return 'at_most' if self.lower == 0 else 'range'

    @property
    def is_exact(self) -> bool:
        return self.kind == 'exact'

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.is_exact else None

    def __add__(self, other: 'MultiplicityVerdict') -> 'MultiplicityVerdict':
        upper = None if self.upper is None or other.upper is None else self.upper + other.upper
        return MultiplicityVerdict(
            self.lower + other.lower, upper, self.witness or other.witness,
            self.notes + other.notes
        )

    def scale(self, k: int) -> 'MultiplicityVerdict':
        if k < 0:
            raise ValueError('verdicts scale by nonnegative integers only')
        if k == 0:
            return exact(0)
        upper = None if self.upper is None else k * self.upper
        return replace(self, lower=k * self.lower, upper=upper)

    def times(self, other: 'MultiplicityVerdict') -> 'MultiplicityVerdict':
        """
        Product of two independent multiplicities, as in a GL factor count times a
        classical factor count.
        """
        if self.upper == 0 or other.upper == 0:
            return exact(0)
        upper = None if self.upper is None or other.upper is None else self.upper * other.upper
        return MultiplicityVerdict(
            self.lower * other.lower, upper, self.witness or other.witness,
            self.notes + other.notes
        )

    def intersect(self, other: 'MultiplicityVerdict') -> 'MultiplicityVerdict':
        """
        Combines two independent sets of bounds on the same multiplicity.  When they
        contradict each other the larger lower bound wins and a note records the clash.
        """
        lower = max(self.lower, other.lower)
        uppers = [u for u in (self.upper, other.upper) if u is not None]
        upper = min(uppers) if uppers else None
        notes = self.notes + tuple(n for n in other.notes if n not in self.notes)
        witness = other.witness if other.upper is not None and other.upper == upper else self.witness
        if upper is not None and upper < lower:
            notes += (f'upper bound {upper} from {witness or "bound"} is below lower bound {lower}',)
            upper = None
        return MultiplicityVerdict(lower, upper, witness, notes)

    def with_note(self, note: str) -> 'MultiplicityVerdict':
        if note in self.notes:
            return self
        return replace(self, notes=self.notes + (note,))

    def to_json(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'lower': self.lower,
            'upper': self.upper,
            'witness': self.witness,
            'notes': list(self.notes),
        }

    def __str__(self) -> str:
        kind = self.kind
        if kind == 'exact':
            return f'exactly {self.lower}'
        if kind == 'at_least':
            return f'at least {self.lower}'
        if kind == 'at_most':
            return f'at most {self.upper}'
        if kind == 'range':
            return f'between {self.lower} and {self.upper}'
        return 'unknown'


def exact(n: int, note: Optional[str] = None) -> MultiplicityVerdict:
    return MultiplicityVerdict(n, n, notes=(note,) if note else ())


def at_least(n: int) -> MultiplicityVerdict:
    return MultiplicityVerdict(n, None)


def total(verdicts: Iterable[MultiplicityVerdict]) -> MultiplicityVerdict:
    acc = exact(0)
    for v in verdicts:
        acc = acc + v
    return acc


UNKNOWN = MultiplicityVerdict()
