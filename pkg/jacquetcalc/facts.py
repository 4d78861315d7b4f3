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
    'CatalogError', 'Citation', 'Fact', 'FactCatalog', 'WitnessTerm', 'FACT_KINDS',
    'match_template', 'sample_env', 'default_catalog',
]

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .assets import assets
from .atoms import (
    SIGMA, ClassAtom, Cusp, DS3, InducedLabel, Label, Lang, LangSeg, SignedSeg, Temp,
    classical_support,
)
from .expr import (
    Constraint, Env, Linear, ParseError, SemanticError, TAtom, TInduced, TSeg, Template,
    instantiate, instantiate_segments, parse_constraint, parse_factors, parse_template,
)
from .formal import Combination
from .glring import GLStandard
from .log import log
from .segment import HALF, HalfInt, Segment

FACT_KINDS = ('decomposition', 'multiplicity', 'witness', 'kernel')

class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Citation:
    claim: str
    quote: str

    def to_json(self) -> Dict[str, str]:
        return {'claim': self.claim, 'quote': self.quote}


class WitnessTerm(tuple):
    """
    (gl, cl, coeff): mu* of some atom contains coeff copies of gl (x) cl.
    """
    def __new__(cls, gl: GLStandard, cl: ClassAtom, coeff: int) -> 'WitnessTerm':
        return super().__new__(cls, (gl, cl, coeff))

    @property
    def gl(self) -> GLStandard:
        return self[0]

    @property
    def cl(self) -> ClassAtom:
        return self[1]

    @property
    def coeff(self) -> int:
        return self[2]

    def __str__(self) -> str:
        return f'{self.gl} (x) {self.cl}'


@dataclass(frozen=True)
class Fact:
    """
    One catalog record.  Which template fields are set depends on kind:
    decomposition uses pattern and layers, multiplicity uses pattern and
    multiplicities, witness uses atom, gl, cl and coeff, and kernel uses pattern,
    kernels and quotient.
    """
    id: str
    kind: str
    citation: Citation
    constraints: Tuple[Constraint, ...] = ()
    pattern: Optional[Template] = None
    layers: Tuple[Tuple[Template, ...], ...] = ()
    layered: bool = False
    multiplicities: Tuple[Tuple[Template, int], ...] = ()
    atom: Optional[Template] = None
    gl: Tuple[TSeg, ...] = ()
    cl: Optional[Template] = None
    coeff: int = 1
    kernels: Tuple[Tuple[Template, ...], ...] = ()
    quotient: Optional[Template] = None

    @property
    def subject(self) -> Template:
        """
        The template a label is matched against.
        """
        subject = self.atom if self.kind == 'witness' else self.pattern
        assert subject is not None
        return subject

    def holds(self, env: Env) -> bool:
        try:
            return all(c.holds(env) for c in self.constraints)
        except KeyError:
            return False

    def match(self, label: Label) -> Optional[Dict[str, HalfInt]]:
        return match_template(self.subject, label, self.constraints)

    def layer_sums(self, env: Env) -> List[Combination[ClassAtom]]:
        return [
            Combination.from_terms((instantiate(t, env), 1) for t in layer)  # type: ignore
            for layer in self.layers
        ]

    def expansion(self, env: Env) -> Combination[ClassAtom]:
        return Combination.sum(self.layer_sums(env))

    def multiplicity_table(self, env: Env) -> Dict[ClassAtom, int]:
        return {instantiate(t, env): n for t, n in self.multiplicities}  # type: ignore

    def witness_term(self, env: Env) -> WitnessTerm:
        assert self.cl is not None
        return WitnessTerm(
            GLStandard.of(*instantiate_segments(self.gl, env)),
            instantiate(self.cl, env),  # type: ignore
            self.coeff
        )

    def kernel_labels(self, env: Env) -> List[List[Label]]:
        return [[instantiate(t, env) for t in k] for k in self.kernels]

    def quotient_atom(self, env: Env) -> Optional[ClassAtom]:
        return instantiate(self.quotient, env) if self.quotient else None  # type: ignore

    def __str__(self) -> str:
        where = ', '.join(str(c) for c in self.constraints)
        return f'{self.id} [{self.kind}] {self.subject}' + (f' where {where}' if where else '')


def _bind(t: Linear, value: HalfInt, env: Dict[str, HalfInt]) -> bool:
    if t.var is None:
        return t.const == value
    if t.var in env:
        return t.evaluate(env) == value
    env[t.var] = t.solve(value)
    return True


def _match_segments(ts: Sequence[TSeg], segs: Sequence[Segment], env: Dict[str, HalfInt]) -> Iterator[Dict[str, HalfInt]]:
    if len(ts) != len(segs):
        return
    seen = set()
    for perm in itertools.permutations(segs):
        if perm in seen:
            continue
        seen.add(perm)
        trial = dict(env)
        if all(_bind(t.lo, s.lo, trial) and _bind(t.hi, s.hi, trial) for t, s in zip(ts, perm)):
            yield trial


def _match_args(t: TAtom, values: Sequence[HalfInt], env: Dict[str, HalfInt]) -> Iterator[Dict[str, HalfInt]]:
    trial = dict(env)
    if all(_bind(a, v, trial) for a, v in zip(t.args, values)):
        yield trial


def _match_atom(t: TAtom, x: Label, env: Dict[str, HalfInt]) -> Iterator[Dict[str, HalfInt]]:
    if t.kind == 'sigma':
        if isinstance(x, Cusp):
            yield env
    elif t.kind == 'sigma_a':
        if isinstance(x, SignedSeg) and x.c == -HALF:
            yield from _match_args(t, (x.d,), env)
    elif t.kind == 'ds':
        if isinstance(x, SignedSeg) and str(x.sign) == t.tag:
            yield from _match_args(t, (x.c, x.d), env)
    elif t.kind == 'ds3':
        if isinstance(x, DS3) and str(x.tag) == t.tag:
            yield from _match_args(t, (x.a, x.b, x.c), env)
    elif t.kind == 'T':
        if isinstance(x, Temp) and str(x.sign) == t.tag:
            yield from _match_args(t, (x.a, x.c), env)
    elif t.kind == 'L':
        assert t.tau is not None
        if isinstance(x, LangSeg):
            segs: Tuple[Segment, ...] = (x.segment,)
            tau: ClassAtom = SIGMA
        elif isinstance(x, Lang):
            segs, tau = x.segs, x.tau
        else:
            return
        for partial in _match_segments(t.segs, segs, env):
            yield from _match_atom(t.tau, tau, partial)


def _match(t: Template, x: Label) -> Iterator[Dict[str, HalfInt]]:
    if isinstance(t, TInduced):
        if isinstance(x, InducedLabel):
            for partial in _match_segments(t.segs, x.segs, {}):
                yield from _match_atom(t.base, x.base, partial)
    elif not isinstance(x, InducedLabel):
        yield from _match_atom(t, x, {})


def match_template(t: Template, x: Label, constraints: Sequence[Constraint] = ()) -> Optional[Dict[str, HalfInt]]:
    """
    Variable values under which t instantiates to x and every constraint holds, or
    None.  Segment products are matched up to order.
    """
    for env in _match(t, x):
        try:
            if not all(c.holds(env) for c in constraints):
                continue
            if instantiate(t, env) == x:
                return env
        except (KeyError, SemanticError):
            continue
    return None


def sample_env(constraints: Sequence[Constraint]) -> Dict[str, HalfInt]:
    """
    An instance of the constraint chains with gaps of 2 between strictly ordered
    variables, e.g. a=1/2, b=5/2, c=9/2 for "1/2 <= a < b < c".
    """
    env: Dict[str, HalfInt] = {}
    for chain in constraints:
        cur: Optional[HalfInt] = None
        ops = ('',) + chain.ops
        for op, term in zip(ops, chain.terms):
            if term.var is not None and term.var not in env:
                if cur is None:
                    value = HALF
                elif op == '<=':
                    value = cur
                else:
                    value = cur + 2
                env[term.var] = term.solve(value)
            cur = term.evaluate(env)
    return env


def _need(record: Mapping[str, Any], key: str, fid: str) -> Any:
    if key not in record:
        raise CatalogError(f'fact {fid}: missing "{key}"')
    return record[key]


def _citation(record: Mapping[str, Any], fid: str) -> Citation:
    cite = record.get('citation')
    if not isinstance(cite, dict) or not cite.get('claim') or not cite.get('quote'):
        raise CatalogError(f'fact {fid}: missing citation (claim and quote are required)')
    return Citation(str(cite['claim']), str(cite['quote']))


def _parse_fact(record: Mapping[str, Any]) -> Fact:
    fid = str(record.get('id') or '<unnamed>')
    kind = _need(record, 'kind', fid)
    if kind not in FACT_KINDS:
        raise CatalogError(f'fact {fid}: unknown kind "{kind}"')
    citation = _citation(record, fid)
    try:
        constraints = tuple(parse_constraint(str(c)) for c in record.get('where') or ())
        args: Dict[str, Any] = {}
        if kind in ('decomposition', 'multiplicity', 'kernel'):
            args['pattern'] = parse_template(_need(record, 'pattern', fid))
        if kind == 'decomposition':
            if 'layers' in record:
                layers = record['layers']
                args['layered'] = True
            else:
                layers = [_need(record, 'expansion', fid)]
            args['layers'] = tuple(tuple(parse_template(t) for t in layer) for layer in layers)
        elif kind == 'multiplicity':
            table = _need(record, 'multiplicities', fid)
            args['multiplicities'] = tuple((parse_template(t), int(n)) for t, n in table.items())
        elif kind == 'witness':
            args['atom'] = parse_template(_need(record, 'atom', fid))
            args['gl'] = tuple(s for text in _need(record, 'gl', fid) for s in parse_factors(text))
            args['cl'] = parse_template(_need(record, 'cl', fid))
            args['coeff'] = int(record.get('coeff', 1))
        else:
            args['kernels'] = tuple(tuple(parse_template(t) for t in k) for k in _need(record, 'kernels', fid))
            args['quotient'] = parse_template(_need(record, 'quotient', fid))
    except ParseError as e:
        raise CatalogError(f'fact {fid}: {e}') from None
    return Fact(fid, kind, citation, constraints, **args)


def _check_conservation(fact: Fact) -> None:
    """
    Instantiates the fact at a sample point and checks that every side has the same
    cuspidal support (and therefore the same rank).
    """
    env = sample_env(fact.constraints)
    if not fact.holds(env):
        raise CatalogError(f'fact {fact.id}: no sample instance for {fact.constraints}')
    try:
        subject = instantiate(fact.subject, env)
        want = classical_support(subject)
        sides: List[Tuple[str, Tuple[HalfInt, ...]]] = []
        if fact.kind == 'decomposition':
            sides = [(str(a), classical_support(a)) for a in fact.expansion(env).keys()]
        elif fact.kind == 'multiplicity':
            table = fact.multiplicity_table(env)
            if any(n <= 0 for n in table.values()):
                raise CatalogError(f'fact {fact.id}: multiplicities must be positive')
            sides = [(str(a), classical_support(a)) for a in table]
        elif fact.kind == 'witness':
            if fact.coeff <= 0:
                raise CatalogError(f'fact {fact.id}: coeff must be positive')
            w = fact.witness_term(env)
            sides = [(str(w), tuple(sorted(tuple(abs(x) for x in w.gl.support()) + classical_support(w.cl))))]
        else:
            labels = [x for k in fact.kernel_labels(env) for x in k]
            quotient = fact.quotient_atom(env)
            sides = [(str(x), classical_support(x)) for x in labels + ([quotient] if quotient else [])]
    except SemanticError as e:
        raise CatalogError(f'fact {fact.id}: sample instance {_env_text(env)} is invalid: {e}') from None
    for text, support in sides:
        if support != want:
            raise CatalogError(
                f'fact {fact.id}: {text} does not have the cuspidal support of {subject} '
                f'at {_env_text(env)}'
            )


def _env_text(env: Env) -> str:
    return ', '.join(f'{k}={v}' for k, v in sorted(env.items()))


class FactCatalog:
    """
    The read-only set of known facts, indexed by kind.
    """
    def __init__(self, facts: Sequence[Fact] = (), check: bool = True) -> None:
        self.facts: List[Fact] = []
        self.by_id: Dict[str, Fact] = {}
        self.by_kind: Dict[str, List[Fact]] = {k: [] for k in FACT_KINDS}
        for fact in facts:
            if fact.id in self.by_id:
                raise CatalogError(f'duplicate fact id {fact.id}')
            if check:
                _check_conservation(fact)
            self.facts.append(fact)
            self.by_id[fact.id] = fact
            self.by_kind[fact.kind].append(fact)

    @classmethod
    def from_records(cls, records: Sequence[Mapping[str, Any]]) -> 'FactCatalog':
        return cls([_parse_fact(r) for r in records])

    @classmethod
    def load(cls, fname: str = 'facts.yaml') -> 'FactCatalog':
        doc = assets.load_yaml(fname)
        if not isinstance(doc, dict) or doc.get('kind') != 'FactCatalog':
            raise CatalogError(f'{fname} is not a fact catalog')
        catalog = cls.from_records(doc.get('facts') or [])
        log.info(
            'loaded %d facts from %s (%s)', len(catalog), fname,
            ', '.join(f'{len(v)} {k}' for k, v in catalog.by_kind.items())
        )
        return catalog

    def __len__(self) -> int:
        return len(self.facts)

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.facts)

    def get(self, fid: str) -> Fact:
        try:
            return self.by_id[fid]
        except KeyError:
            raise CatalogError(f'unknown fact {fid}') from None

    def find(self, kind: str, label: Label) -> Optional[Tuple[Fact, Dict[str, HalfInt]]]:
        for fact in self.by_kind[kind]:
            env = fact.match(label)
            if env is not None:
                log.debug('%s matches fact %s at %s', label, fact.id, _env_text(env))
                return fact, env
        return None

    def decomposition(self, label: Label) -> Optional[Tuple[Fact, Combination[ClassAtom]]]:
        found = self.find('decomposition', label)
        if found is None:
            return None
        fact, env = found
        return fact, fact.expansion(env)

    def layers(self, label: Label) -> Optional[List[Combination[ClassAtom]]]:
        found = self.find('decomposition', label)
        if found is None or not found[0].layered:
            return None
        return found[0].layer_sums(found[1])

    def multiplicity(self, label: Label, atom: ClassAtom) -> Optional[Tuple[Fact, int]]:
        for fact in self.by_kind['multiplicity']:
            env = fact.match(label)
            if env is not None:
                table = fact.multiplicity_table(env)
                if atom in table:
                    return fact, table[atom]
        return None

    def witnesses(self, atom: ClassAtom) -> List[Tuple[Fact, WitnessTerm]]:
        out = []
        for fact in self.by_kind['witness']:
            env = fact.match(atom)
            if env is not None:
                out.append((fact, fact.witness_term(env)))
        return out

    def kernel(self, label: Label) -> Optional[Tuple[Fact, List[List[Label]], Optional[ClassAtom]]]:
        found = self.find('kernel', label)
        if found is None:
            return None
        fact, env = found
        return fact, fact.kernel_labels(env), fact.quotient_atom(env)


@lru_cache(maxsize=None)
def default_catalog() -> FactCatalog:
    """
    The catalog shipped with the package, loaded once.
    """
    return FactCatalog.load()
