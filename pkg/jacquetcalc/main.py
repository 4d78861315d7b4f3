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

__all__ = ['main']

import sys

# First order of business is to ensure we are running a compatible version of Python.
if sys.hexversion < 0x03080000:
    print('FATAL: Python 3.8 or later is required.')
    sys.exit(1)

import argparse
import os
from configparser import ConfigParser
from typing import Any, Dict, List, Optional

from .atoms import AtomError, Sign
from .candidates import analyze_candidates
from .claims import DEFAULT_GRID, ClaimError, parse_triple, run_suite
from .expr import ParseError, SemanticError, format_label, parse_expression
from .log import log, setup_logging
from .mustar import FormulaError, cuspidal_words
from .render import RENDERERS
from .rulebase import Engine
from .segment import SegmentError
from .utils import Sentinel
from .version import __version__

class FullHelpParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        sys.stderr.write('error: %s\n' % message)
        self.print_help()
        sys.exit(2)


def get_config(args: argparse.Namespace) -> ConfigParser:
    """
    Consolidates command line arguments and the grid file, returning a ConfigParser
    instance that has the reconciled configuration such that command line arguments
    take precedence
    """
    config = ConfigParser(inline_comment_prefixes='#')
    config.add_section('verify')
    config.add_section('engine')
    if args.grid:
        if not os.path.exists(args.grid):
            log.fatal('config file "%s" does not exist', args.grid)
            sys.exit(1)
        with open(args.grid) as f:
            config.read_file(f)
    if args.triple:
        config.set('verify', 'triples', '\n'.join(args.triple))
    if args.pair:
        config.set('verify', 'pairs', '\n'.join(args.pair))
    for prop in ('claims', 'format'):
        if getattr(args, prop):
            config.set('verify', prop, getattr(args, prop))
    if args.jobs is not None:
        config.set('engine', 'jobs', str(args.jobs))
    if args.lax:
        config.set('engine', 'row2_inequality', 'lax')
    return config


def _lines(config: ConfigParser, option: str) -> Optional[List[str]]:
    if not config.has_option('verify', option):
        return None
    return [line.strip() for line in config.get('verify', option).splitlines() if line.strip()]


def get_engine(p: argparse.ArgumentParser, config: ConfigParser) -> Engine:
    inequality = config.get('engine', 'row2_inequality', fallback='strict').strip().lower()
    if inequality not in ('strict', 'lax'):
        p.error(f'row2_inequality must be strict or lax, not "{inequality}"')
    return Engine(strict=inequality == 'strict')


def get_renderer(p: argparse.ArgumentParser, name: str):
    try:
        return RENDERERS[name]()
    except KeyError:
        p.error(f'unknown format "{name}", valid types are: {", ".join(RENDERERS)}')


def cmd_verify(p: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    config = get_config(args)
    renderer = get_renderer(p, config.get('verify', 'format', fallback='json').strip())
    try:
        jobs = config.getint('engine', 'jobs', fallback=1)
    except ValueError:
        p.error('jobs must be an integer')
    triples = _lines(config, 'triples')
    if triples is None:
        triples = list(DEFAULT_GRID)
    suite = run_suite(
        triples,
        claims=config.get('verify', 'claims', fallback='*').strip() or '*',
        jobs=max(1, jobs),
        engine=get_engine(p, config),
        pairs=_lines(config, 'pairs'),
    )
    renderer.render(suite.to_json(args.timings), args.out)
    s = suite.summary
    log.info('%d claims checked: %d passed, %d failed, %d inconclusive',
             s['total'], s['pass'], s['fail'], s['inconclusive'])
    return 0 if suite.ok else 1


def _decomposition_json(d: Any) -> Optional[List[Dict[str, Any]]]:
    if d is Sentinel.NO_FACT:
        return None
    return [{'atom': str(x), 'coeff': n} for x, n in d.items()]


def cmd_expand(p: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    renderer = get_renderer(p, args.format)
    engine = Engine(strict=not args.lax)
    try:
        label = parse_expression(args.expr)
    except (ParseError, SemanticError) as e:
        log.error('invalid expression "%s": %s', args.expr, e)
        return 2
    doc: Dict[str, Any] = {
        'apiVersion': 'v1alpha1',
        'kind': 'Expansion',
        'expr': format_label(label),
        'decomposition': _decomposition_json(engine.decompose(label)),
    }
    try:
        mu = engine.mu_star(label)
    except FormulaError as e:
        log.warning('no Jacquet module for %s: %s', doc['expr'], e)
    else:
        if args.to_words:
            words = cuspidal_words(mu)
            doc['words'] = [
                {'word': [str(x) for x in w], 'count': n}
                for w, n in sorted(words.items(), reverse=True) if n
            ]
        else:
            doc['muStar'] = mu.to_json()
    renderer.render(doc, args.out)
    return 0


def cmd_candidates(p: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    renderer = get_renderer(p, args.format)
    try:
        a, b, c = parse_triple(args.triple)
        sign = Sign.parse(args.sign)
    except (ClaimError, AtomError) as e:
        log.error('%s', e)
        return 2
    analysis = analyze_candidates(a, b, c, sign, Engine(strict=not args.lax))
    doc = {'apiVersion': 'v1alpha1', 'kind': 'Candidates'}
    doc.update(analysis.to_json())
    renderer.render(doc, args.out)
    return 0


COMMANDS = {
    'verify': cmd_verify,
    'expand': cmd_expand,
    'candidates': cmd_candidates,
}

def main():
    formats = ', '.join(RENDERERS)
    p = FullHelpParser(prog='jacquetcalc')
    p.add_argument('-v', '--verbose', action='count', default=0,
                   help='Log progress (twice for debug output)')
    p.add_argument('-q', '--quiet', action='store_true',
                   help='Only log errors')
    p.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = p.add_subparsers(dest='command', metavar='COMMAND')

    common = FullHelpParser(add_help=False)
    common.add_argument('-f', '--format', action='store', type=str, metavar='TYPE',
                        help=f'Output format: {formats} (default: json)')
    common.add_argument('-o', '--out', action='store', type=str, metavar='FILE',
                        help='Write the report to FILE instead of stdout')
    common.add_argument('--lax', action='store_true',
                        help='Use the lax row-two inequality of the signed segment formula')

    v = sub.add_parser('verify', parents=[common], help='Check catalog claims over a parameter grid')
    v.add_argument('--claims', action='store', type=str, metavar='GLOB',
                   help='Claim ids to run, comma separated globs allowed (default: *)')
    v.add_argument('-t', '--triple', action='append', type=str, metavar='A,B,C',
                   help='Grid point with 1/2 <= a < b < c, may be repeated '
                   '(default: the built-in grid)')
    v.add_argument('--pair', action='append', type=str, metavar='C,D',
                   help='Grid point for claims over (c,d), may be repeated')
    v.add_argument('-g', '--grid', action='store', type=str, metavar='FILE',
                   help='Grid and engine configuration file')
    v.add_argument('-j', '--jobs', action='store', type=int, metavar='N',
                   help='Number of claims evaluated concurrently (default: 1)')
    v.add_argument('--timings', action='store_true',
                   help='Include elapsed time per claim in the report')

    e = sub.add_parser('expand', parents=[common], help='Decompose an expression and expand its Jacquet module')
    e.add_argument('-e', '--expr', action='store', type=str, metavar='EXPR', required=True,
                   help='Expression such as "d(1/2,5/2) x d(-1/2,3/2) |x sigma"')
    e.add_argument('--to-words', action='store_true',
                   help='Print the cuspidal word multiset instead of the full expansion')

    c = sub.add_parser('candidates', parents=[common], help='Enumerate non-tempered candidates')
    c.add_argument('-t', '--triple', action='store', type=str, metavar='A,B,C', required=True,
                   help='Parameters with 1/2 <= a < b < c')
    c.add_argument('-s', '--sign', action='store', type=str, metavar='SIGN', required=True,
                   help='Sign of the discrete series, + or -')

    args = p.parse_args()
    if not args.command:
        p.error('a command is required')
    if args.command != 'verify':
        args.format = args.format or 'json'
    setup_logging(-1 if args.quiet else args.verbose)

    try:
        status = COMMANDS[args.command](p, args)
    except (SegmentError, AtomError) as e:
        log.error('%s', e)
        sys.exit(2)
    except Exception as e:
        log.exception('unhandled error running %s: %s', args.command, e)
        sys.exit(1)
    sys.exit(status)
