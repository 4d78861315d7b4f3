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
    'Engine', 'Decomposition', 'MultiplicityVerdict', 'WitnessTerm',
    'decompose_induced_over_cuspidal', 'decompose_induced_over_atom', 'multiplicity_verdict',
    'sign_classifier', 'standard_quotient', 'default_engine',
]

import itertools
import threading
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar, Union

from .atoms import (
    SIGMA, AtomError, ClassAtom, Cusp, InducedLabel, Label, Lang, SignedSeg, Sign,
    classical_support, has_closed_form, induced, is_tempered, make_lang, segment_subquotients,
)
from .facts import FactCatalog, WitnessTerm, default_catalog
from .formal import Combination
from .glring import (
    GLIrr, GLStandard, Delta, Word, gl_multiplicity, gl_product, is_irreducible,
    ps_count, word_count, word_expansion,
)
from .log import log
from .mustar import FormulaError, RGTensor, mu_star_induced, sigma_part
from .segment import HalfInt, dual_segment, segment_relations
from .utils import Sentinel
from .verdict import MultiplicityVerdict, exact

# Either the exact atom decomposition of a label or Sentinel.NO_FACT.
Decomposition = Union[Combination[ClassAtom], Sentinel]

# Upper bounds come from at most this many witness terms per target.
MAX_WITNESSES = 6

T = TypeVar('T')

def decompose_induced_over_cuspidal(label: InducedLabel) -> Combination[ClassAtom]:
    """
    The subquotients of delta([-c,d]) x| sigma by the trichotomy on c.
    """
    if not isinstance(label, InducedLabel) or len(label.segs) != 1 or not isinstance(label.base, Cusp):
        raise AtomError(f'{label} is not a single segment induced from sigma')
    if label.segs[0].e.twice < 0:
        raise AtomError(f'{label} is not canonical')
    return segment_subquotients(label.segs[0])


def decompose_induced_over_atom(label: InducedLabel, catalog: Optional[FactCatalog] = None) -> Decomposition:
    """
    The cited decomposition of label when a catalog fact matches it, otherwise
    Sentinel.NO_FACT.
    """
    found = (catalog or default_catalog()).decomposition(label)
    return Sentinel.NO_FACT if found is None else found[1]


def standard_quotient(label: Label) -> Optional[ClassAtom]:
    """
    The Langlands quotient when label is a standard module (every segment has positive
    central exponent and the base is tempered), else None.
    """
    if not isinstance(label, InducedLabel) or not is_tempered(label.base):
        return None
    if any(s.e.twice <= 0 for s in label.segs):
        return None
    return make_lang(label.segs, label.base)  # type: ignore


def _gl_support(g: GLIrr) -> Tuple[HalfInt, ...]:
    if isinstance(g, Delta):
        return g.seg.support()
    return tuple(sorted(g.support()))


def sign_classifier(expansion: RGTensor) -> bool:
    """
    Whether the cuspidal closure of expansion has a word with all exponents
    nonnegative.  Terms whose classical part has no closed form are skipped.
    """
    closed: Combination[GLStandard] = Combination()
    for term, coeff in expansion.items():
        try:
            part = sigma_part(term.cl)
        except FormulaError:
            log.debug('sign_classifier: skipping %s', term)
            continue
        closed = closed + gl_product(Combination.of(term.gl), part) * coeff
    nonneg = closed.expand(lambda g: g.resolve()).filter(
        lambda g: all(x.twice >= 0 for x in g.support())
    )
    return any(n > 0 for n in word_expansion(nonneg).values())


class Engine:
    """
    Multiplicity engine over the fact catalog.  Results are memoized per instance, so
    an engine is meant to be shared by every claim of a suite run, including from
    several worker threads.

    strict selects the row-two inequality of the signed segment formula.
    """
    def __init__(self, catalog: Optional[FactCatalog] = None, strict: bool = True) -> None:
        self.catalog = catalog or default_catalog()
        self.strict = strict
        self._lock = threading.RLock()
        self._decompositions: Dict[Label, Decomposition] = {}
        self._lower: Dict[Tuple[Label, bool], Combination[ClassAtom]] = {}
        self._mult: Dict[Tuple[Label, ClassAtom], MultiplicityVerdict] = {}
        self._words: Dict[ClassAtom, Optional[Word]] = {}
        self._witnesses: Dict[ClassAtom, List[WitnessTerm]] = {}

    def _memo(self, cache: Dict[Any, T], key: Any, compute: Callable[[], T]) -> T:
        """
        Looks key up in cache, computing and storing it on a miss.  The lock covers
        only the cache itself; when two threads race on a key the first stored result
        wins.
        """
        with self._lock:
            if key in cache:
                return cache[key]
        value = compute()
        with self._lock:
            return cache.setdefault(key, value)

    def mu_star(self, label: Label) -> RGTensor:
        return mu_star_induced(label, strict=self.strict)

    # Decomposition

    def decompose(self, label: Label) -> Decomposition:
        """
        The exact decomposition of label into atoms, or Sentinel.NO_FACT.
        """
        if not isinstance(label, InducedLabel):
            return Combination.of(label)
        return self._memo(self._decompositions, label, lambda: self._decompose(label))

    def _decompose(self, label: InducedLabel) -> Decomposition:
        if len(label.segs) == 1 and isinstance(label.base, Cusp):
            return segment_subquotients(label.segs[0])
        found = self.catalog.decomposition(label)
        if found is not None:
            return found[1]
        if len(label.segs) < 2:
            return Sentinel.NO_FACT
        # Split off one segment: delta_j x| base is a sum of atoms tau0, and the
        # remaining segments induced from each tau0 must resolve in turn.
        for j, s in enumerate(label.segs):
            inner = self.decompose(induced([s], label.base))
            if inner is Sentinel.NO_FACT:
                continue
            others = label.segs[:j] + label.segs[j + 1:]
            pieces = []
            for tau0, n in inner.items():  # type: ignore
                piece = self.decompose(induced(others, tau0))
                if piece is Sentinel.NO_FACT:
                    break
                pieces.append(piece * n)  # type: ignore
            else:
                return Combination.sum(pieces)
        return Sentinel.NO_FACT

    def layers(self, label: Label) -> Optional[List[Combination[ClassAtom]]]:
        return self.catalog.layers(label)

    # Bounds on whole labels

    def lower_bounds(self, label: Label, merges: bool = True) -> Combination[ClassAtom]:
        """
        Atoms known to occur in label, each with a guaranteed minimum multiplicity.
        """
        d = self.decompose(label)
        if d is not Sentinel.NO_FACT:
            return d  # type: ignore
        return self._memo(
            self._lower, (label, merges),
            lambda: self._lower_bounds(label, merges)  # type: ignore
        )

    def _lower_bounds(self, label: InducedLabel, merges: bool) -> Combination[ClassAtom]:
        best: Dict[ClassAtom, int] = {}

        def take(c: Combination[ClassAtom]) -> None:
            for atom, n in c.items():
                if n > best.get(atom, 0):
                    best[atom] = n

        quotient = standard_quotient(label)
        if quotient is not None:
            take(Combination.of(quotient))

        for j, s in enumerate(label.segs):
            inner = self.decompose(induced([s], label.base))
            if inner is Sentinel.NO_FACT:
                continue
            others = label.segs[:j] + label.segs[j + 1:]
            take(Combination.sum(
                self.lower_bounds(induced(others, tau0), merges=False) * n
                for tau0, n in inner.items()  # type: ignore
            ))

        if merges:
            for i, j in itertools.combinations(range(len(label.segs)), 2):
                rest = [s for k, s in enumerate(label.segs) if k not in (i, j)]
                for t in (label.segs[j], dual_segment(label.segs[j])):
                    rel = segment_relations(label.segs[i], t)
                    if not rel.linked:
                        continue
                    merged = rest + [x for x in (rel.union, rel.intersection) if x is not None]
                    take(self.lower_bounds(induced(merged, label.base), merges=False))

        found = self.catalog.kernel(label)
        if found is not None:
            for kernel in found[1]:
                take(Combination.sum(self.lower_bounds(k, merges=False) for k in kernel))

        return Combination(best)

    def upper_cap(self, label: Label) -> Optional[Combination[ClassAtom]]:
        """
        The sum of the intertwining kernels and the Langlands quotient, when label has
        a kernel fact and every kernel resolves exactly.
        """
        found = self.catalog.kernel(label)
        if found is None:
            return None
        _, kernels, quotient = found
        acc: Combination[ClassAtom] = Combination.of(quotient) if quotient else Combination()
        for k in itertools.chain.from_iterable(kernels):
            d = self.decompose(k)
            if d is Sentinel.NO_FACT:
                return None
            acc = acc + d  # type: ignore
        return acc

    # Multiplicities

    def classical_multiplicity(self, label: Label, tau: ClassAtom) -> MultiplicityVerdict:
        """
        [label : tau] for an irreducible tau.
        """
        if not isinstance(label, InducedLabel):
            return exact(int(label == tau))
        return self._memo(self._mult, (label, tau), lambda: self._classical_multiplicity(label, tau))

    def _classical_multiplicity(self, label: InducedLabel, tau: ClassAtom) -> MultiplicityVerdict:
        if classical_support(label) != classical_support(tau):
            return exact(0)
        d = self.decompose(label)
        if d is not Sentinel.NO_FACT:
            return exact(d[tau])  # type: ignore
        found = self.catalog.multiplicity(label, tau)
        if found is not None:
            return exact(found[1], f'from fact {found[0].id}')
        if standard_quotient(label) == tau:
            return exact(1, 'Langlands quotient of a standard module')
        verdict = self._word_verdict(label, tau)
        if verdict is not None:
            return verdict

        verdict = MultiplicityVerdict(self.lower_bounds(label)[tau], None)
        cap = self.upper_cap(label)
        if cap is not None:
            verdict = verdict.intersect(MultiplicityVerdict(0, cap[tau], witness='kernel bound'))
        if verdict.is_exact:
            return verdict
        return self._witness_bounds(label, tau, verdict)

    def classical_word(self, tau: ClassAtom) -> Optional[Word]:
        """
        A cuspidal word whose entire principal-series count belongs to tau, or None.
        Only atoms with a closed-form mu* are considered.
        """
        return self._memo(self._words, tau, lambda: self._classical_word(tau))

    def _classical_word(self, tau: ClassAtom) -> Optional[Word]:
        word = None
        if has_closed_form(tau):
            part = sigma_part(tau)
            descending = tuple(sorted(classical_support(tau), reverse=True))
            candidates = [descending] + sorted(
                (w for w, n in word_expansion(part).items() if n > 0),
                key=lambda w: tuple(-x.twice for x in w)
            )
            for u in candidates:
                n = word_count(part, u)
                if n > 0 and n == ps_count(u, signed=True):
                    word = u
                    break
        log.debug('identifying word for %s: %s', tau, word)
        return word

    def _word_verdict(self, label: InducedLabel, tau: ClassAtom) -> Optional[MultiplicityVerdict]:
        if not has_closed_form(label.base):
            return None
        u = self.classical_word(tau)
        if u is None:
            return None
        n, rem = divmod(word_count(sigma_part(label), u), word_count(sigma_part(tau), u))
        if rem:
            log.warning('word %s does not divide evenly between %s and %s', u, label, tau)
            return None
        return exact(n)

    # Jacquet modules

    def jacquet_multiplicity(self, source: Union[Label, RGTensor], g: GLIrr, cl: ClassAtom) -> MultiplicityVerdict:
        """
        Multiplicity of g (x) cl in mu*(source), source being a label with a
        closed-form base or an expansion.
        """
        if cl == SIGMA:
            part = source.sigma_terms() if isinstance(source, RGTensor) else sigma_part(source)
            return gl_multiplicity(part, g)
        expansion = source if isinstance(source, RGTensor) else self.mu_star(source)
        g_support = _gl_support(g)
        cl_support = classical_support(cl)
        acc = exact(0)
        for term, coeff in expansion.items():
            if tuple(sorted(term.gl.support())) != g_support:
                continue
            if classical_support(term.cl) != cl_support:
                continue
            gm = gl_multiplicity(term.gl, g)
            if gm.upper == 0:
                continue
            acc = acc + gm.times(self.classical_multiplicity(term.cl, cl)).scale(coeff)
        return acc

    def jacquet_slice(self, label: Label, g: GLIrr) -> Optional[Combination[ClassAtom]]:
        """
        The classical parts paired with g in mu*(label), as a combination of atoms, or
        None if some part does not resolve.
        """
        g_support = _gl_support(g)
        acc: Combination[ClassAtom] = Combination()
        for term, coeff in self.mu_star(label).items():
            if tuple(sorted(term.gl.support())) != g_support:
                continue
            gm = gl_multiplicity(term.gl, g)
            if not gm.is_exact:
                return None
            if gm.lower == 0:
                continue
            d = self.decompose(term.cl)
            if d is Sentinel.NO_FACT:
                return None
            acc = acc + d * (coeff * gm.lower)  # type: ignore
        return acc

    def witnesses(self, tau: ClassAtom) -> List[WitnessTerm]:
        """
        Terms g (x) tau' known to occur in mu*(tau), with a lower bound on how often.
        For closed-form atoms they are read off mu*(tau), terms with classical part
        sigma first and terms missing from the opposite sign next; otherwise they come
        from the catalog and the Langlands embedding.
        """
        return self._memo(self._witnesses, tau, lambda: self._find_witnesses(tau))

    def _find_witnesses(self, tau: ClassAtom) -> List[WitnessTerm]:
        out: List[WitnessTerm] = []
        if has_closed_form(tau):
            expansion = self.mu_star(tau)
            seen = set()
            for term, _ in expansion.items():
                if isinstance(term.cl, InducedLabel) or not is_irreducible(term.gl):
                    continue
                if (term.gl, term.cl) in seen:
                    continue
                seen.add((term.gl, term.cl))
                m = self.jacquet_multiplicity(expansion, term.gl, term.cl)
                if m.is_exact and m.lower > 0:
                    out.append(WitnessTerm(term.gl, term.cl, m.lower))
            partner = self._sign_partner(tau)
            out.sort(key=lambda w: (
                w.cl != SIGMA,
                partner is not None and self.jacquet_multiplicity(partner, w.gl, w.cl).lower > 0,
            ))
        else:
            out.extend(w for _, w in self.catalog.witnesses(tau))
            if isinstance(tau, Lang) and len(tau.segs) == 1:
                out.append(WitnessTerm(GLStandard.of(dual_segment(tau.segs[0])), tau.tau, 1))
        out = out[:MAX_WITNESSES]
        log.debug('witnesses for %s: %s', tau, ', '.join(str(w) for w in out) or 'none')
        return out

    def _sign_partner(self, tau: ClassAtom) -> Optional[Label]:
        if isinstance(tau, SignedSeg) and tau.c.twice > 0:
            sign = Sign.MINUS if tau.sign is Sign.PLUS else Sign.PLUS
            return SignedSeg(tau.c, tau.d, sign)
        return None

    def witness_lower(self, atom: ClassAtom, w: WitnessTerm) -> int:
        """
        A lower bound for the multiplicity of w's term in mu*(atom).
        """
        if has_closed_form(atom):
            return self.jacquet_multiplicity(atom, w.gl, w.cl).lower
        return sum(x.coeff for x in self.witnesses(atom) if (x.gl, x.cl) == (w.gl, w.cl))

    def _witness_bounds(self, label: InducedLabel, tau: ClassAtom, verdict: MultiplicityVerdict) -> MultiplicityVerdict:
        if not has_closed_form(label.base):
            return verdict
        lower = self.lower_bounds(label)
        for w in self.witnesses(tau):
            if verdict.upper is not None and verdict.upper <= verdict.lower:
                break
            count = self.jacquet_multiplicity(label, w.gl, w.cl)
            if count.upper is None:
                continue
            others = sum(
                n * self.witness_lower(other, w) for other, n in lower.items()
                if other != tau and n > 0
            )
            bound = max((count.upper - others) // w.coeff, 0)
            log.debug('[%s : %s] <= %d by %s', label, tau, bound, w)
            verdict = verdict.intersect(MultiplicityVerdict(0, bound, witness=str(w)))
        return verdict

    def cross_check(self, label: Label, tau: ClassAtom) -> Optional[str]:
        """
        Compares an exact multiplicity with the witness upper bounds computed without
        the catalog fact behind it.  Returns a note describing any disagreement.
        """
        if not isinstance(label, InducedLabel):
            return None
        value = self.classical_multiplicity(label, tau)
        if not value.is_exact:
            return None
        bounds = self._witness_bounds(label, tau, MultiplicityVerdict())
        if bounds.upper is None or value.lower <= bounds.upper:
            return None
        note = (
            f'[{label} : {tau}] is {value.lower} by the catalog but {bounds.upper} '
            f'by witness {bounds.witness}'
        )
        log.warning('%s', note)
        return note


def multiplicity_verdict(target: Tuple[GLIrr, ClassAtom], expansion: RGTensor, engine: Optional['Engine'] = None) -> MultiplicityVerdict:
    """
    Multiplicity of target = g (x) tau in expansion.
    """
    g, tau = target
    return (engine or default_engine()).jacquet_multiplicity(expansion, g, tau)


@lru_cache(maxsize=None)
def default_engine() -> Engine:
    return Engine()
