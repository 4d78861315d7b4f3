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

__all__ = ['Renderer']

import os
import sys
from typing import Any, Dict, Optional

from ..log import log

class Renderer:
    """
    Base class for renderers.  A document is a JSON-ready dict with a "kind" key
    (SuiteReport, Expansion or Candidates).
    """
    def generate(self, doc: Dict[str, Any]) -> str: # pyright: ignore
        """
        Returns the rendered document.
        """
        raise NotImplementedError

    def render(self, doc: Dict[str, Any], dst: Optional[str] = None) -> None:
        """
        Writes the document to dst, or to stdout if dst is None or "-".
        """
        text = self.generate(doc)
        if not dst or dst == '-':
            sys.stdout.write(text)
            return
        dirname = os.path.dirname(dst)
        if dirname and not os.path.exists(dirname):
            os.makedirs(dirname, exist_ok=True)
        log.info('writing report to %s', dst)
        with open(dst, 'w') as f:
            f.write(text)
