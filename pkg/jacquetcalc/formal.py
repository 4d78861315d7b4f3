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

__all__ = ['Combination']

from collections import defaultdict
from typing import Any, Callable, Dict, Generic, Iterable, Iterator, List, Mapping, Optional, Tuple, TypeVar

K = TypeVar('K')
J = TypeVar('J')

def order_key(key: Any) -> Any:
    """
    Canonical ordering key for a combination's basis element.  Basis types that are
    not naturally comparable with each other expose a ``sort_key`` property.
    """
    return getattr(key, 'sort_key', key)


class Combination(Generic[K]):
    """
    A finite integer-linear combination of basis elements, i.e. an element of the free
    abelian group on K.  Zero coefficients are never stored, so two combinations are
    equal exactly when they have the same nonzero coefficients.

    Instances are treated as immutable: every operation returns a new object.
    """
    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[K, int]] = None):
        self._terms: Dict[K, int] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def of(cls, key: K, coeff: int = 1) -> 'Combination[K]':
        return cls({key: coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[K, int]]) -> 'Combination[K]':
        """
        Builds a combination from (key, coeff) pairs, merging repeated keys.
        """
        acc: Dict[K, int] = defaultdict(int)
        for key, coeff in pairs:
            acc[key] += coeff
        return cls(acc)

    @classmethod
    def sum(cls, combos: Iterable['Combination[K]']) -> 'Combination[K]':
        return cls.from_terms(pair for combo in combos for pair in combo._terms.items())

    def __getitem__(self, key: K) -> int:
        return self._terms.get(key, 0)

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[K]:
        return iter(self.keys())

    def keys(self) -> List[K]:
        return sorted(self._terms, key=order_key)

    def items(self) -> List[Tuple[K, int]]:
        return [(k, self._terms[k]) for k in self.keys()]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Combination):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None  # type: ignore

    def __add__(self, other: 'Combination[K]') -> 'Combination[K]':
        return Combination.from_terms(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: 'Combination[K]') -> 'Combination[K]':
        return self + (-1) * other

    def __neg__(self) -> 'Combination[K]':
        return (-1) * self

    def __mul__(self, alpha: int) -> 'Combination[K]':
        if not isinstance(alpha, int):
            return NotImplemented
        return Combination({k: alpha * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, fn: Callable[[K], J]) -> 'Combination[J]':
        """
        Applies fn to every basis element, merging coefficients of keys that collide.
        """
        return Combination.from_terms((fn(k), v) for k, v in self._terms.items())

    def expand(self, fn: Callable[[K], 'Combination[J]']) -> 'Combination[J]':
        """
        Linear extension of fn, which maps a basis element to a combination.
        """
        return Combination.from_terms(
            (j, v * w) for k, v in self._terms.items() for j, w in fn(k)._terms.items()
        )

    def filter(self, pred: Callable[[K], bool]) -> 'Combination[K]':
        return Combination({k: v for k, v in self._terms.items() if pred(k)})

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self._terms.values())

    def total(self) -> int:
        return sum(self._terms.values())

    def __repr__(self) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(
            f'{k}' if v == 1 else f'-{k}' if v == -1 else f'{v}*{k}'
            for k, v in self.items()
        )
