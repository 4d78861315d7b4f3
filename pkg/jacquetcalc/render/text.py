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

__all__ = ['TextRenderer']

import json
from typing import Any, Dict, List

from .base import Renderer

def _compact(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False)


class TextRenderer(Renderer):
    """
    Plain text for terminals.
    """
    def generate(self, doc: Dict[str, Any]) -> str:
        kind = doc.get('kind')
        if kind == 'SuiteReport':
            lines = self._suite(doc)
        elif kind == 'Expansion':
            lines = self._expansion(doc)
        elif kind == 'Candidates':
            lines = self._candidates(doc)
        else:
            lines = [_compact(doc)]
        return '\n'.join(lines) + '\n'

    def _suite(self, doc: Dict[str, Any]) -> List[str]:
        lines = []
        for r in doc['reports']:
            params = ', '.join(r['params'])
            head = f'{r["verdict"].upper():<13} {r["claimId"]} ({params})'
            if 'elapsedMs' in r:
                head += f' {r["elapsedMs"]:.0f}ms'
            lines.append(head)
            if r.get('error'):
                lines.append(f'    error: {r["error"]}')
            if r['verdict'] != 'pass':
                lines.append(f'    computed: {_compact(r["computed"])}')
                lines.append(f'    expected: {_compact(r["expected"])}')
            for note in r['notes']:
                lines.append(f'    note: {note}')
        s = doc['summary']
        lines.append(
            f'{s["pass"]} passed, {s["fail"]} failed, {s["inconclusive"]} inconclusive '
            f'({s["total"]} total)'
        )
        return lines

    def _expansion(self, doc: Dict[str, Any]) -> List[str]:
        lines = [doc['expr']]
        decomposition = doc.get('decomposition')
        if decomposition is None:
            lines.append('  = no fact')
        else:
            lines.append('  = ' + (' + '.join(
                t['atom'] if t['coeff'] == 1 else f'{t["coeff"]}*{t["atom"]}' for t in decomposition
            ) or '0'))
        if 'words' in doc:
            lines.append(f'cuspidal words ({len(doc["words"])} distinct):')
            for w in doc['words']:
                lines.append(f'  {w["count"]:>4}  ({", ".join(w["word"])})')
        if 'muStar' in doc:
            lines.append(f'mu* ({len(doc["muStar"])} terms):')
            for t in doc['muStar']:
                gl = ' x '.join(t['gl']) or '1'
                lines.append(f'  {t["coeff"]:>4}  {gl} (x) {t["cl"]}')
        return lines

    def _candidates(self, doc: Dict[str, Any]) -> List[str]:
        a, b, c, sign = doc['params']
        lines = [f'non-tempered candidates in d(1/2,{c}) |x ds{{b={a},c={b},{sign}}}:']
        lines.extend(f'  {x}' for x in doc['candidates'])
        for flag in doc['flags']:
            lines.append(f'flagged: {flag}')
        return lines
