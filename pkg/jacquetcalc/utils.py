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

__all__ = ['Sentinel', 'recache', 'glob_match']

import enum
import fnmatch
import re
from functools import lru_cache
from typing import Pattern

class Sentinel(enum.Enum):
    # Used for a value that has not been computed yet
    UNDEF = object()
    # No catalog fact or rule applies; distinct from a zero multiplicity
    NO_FACT = object()


@lru_cache(maxsize=None)
def recache(pattern: str, flags: int = 0) -> Pattern[str]:
    """
    Returns a compiled regexp pattern, caching the result for subsequent invocations.
    """
    return re.compile(pattern, flags)


def glob_match(pattern: str, name: str) -> bool:
    """
    Case-sensitive shell glob match, used for claim id filters.  A comma separated
    pattern matches if any of its alternatives does.
    """
    return any(fnmatch.fnmatchcase(name, p.strip()) for p in pattern.split(',') if p.strip())
