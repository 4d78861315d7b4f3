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
    'ParseError', 'SemanticError', 'Linear', 'TSeg', 'TAtom', 'TInduced', 'Template',
    'Constraint', 'ExprParser', 'parse_expression', 'parse_template', 'parse_constraint',
    'instantiate', 'instantiate_segments', 'parse_factors', 'format_label',
]

import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Pattern, Tuple, Union

from .atoms import (
    SIGMA, AtomError, DS3, DS3Tag, Label, Sign, SignedSeg, Temp, canonicalize_induced,
    InducedLabel, induced, is_tempered, make_lang, sigma_a,
)
from .segment import HalfInt, Segment, SegmentError, mk_segment

Env = Mapping[str, HalfInt]

class ParseError(ValueError):
    """
    The text does not follow the expression grammar.
    """
    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f'{msg} (at position {pos})')
        self.pos = pos


class SemanticError(ValueError):
    """
    The text is well formed but names no valid object, such as a segment of
    non-integral length.
    """
    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f'{msg} (at position {pos})')
        self.pos = pos


@dataclass(frozen=True)
class Linear:
    """
    A half-integer expression const + coeff*var with at most one variable.
    """
    const: HalfInt
    coeff: int = 0
    var: Optional[str] = None

    def evaluate(self, env: Env) -> HalfInt:
        if self.var is None:
            return self.const
        if self.var not in env:
            raise KeyError(self.var)
        value = env[self.var]
        return self.const + (value if self.coeff == 1 else -value)

    def solve(self, value: HalfInt) -> HalfInt:
        """
        The value of var that makes this expression equal to value.
        """
        diff = value - self.const
        return diff if self.coeff == 1 else -diff

    def __str__(self) -> str:
        if self.var is None:
            return str(self.const)
        head = self.var if self.coeff == 1 else f'-{self.var}'
        if self.const.twice == 0:
            return head
        if self.const.twice < 0:
            return f'{head}-{-self.const}'
        return f'{head}+{self.const}'


@dataclass(frozen=True)
class TSeg:
    lo: Linear
    hi: Linear
    pos: int = 0

    def __str__(self) -> str:
        return f'd({self.lo},{self.hi})'


@dataclass(frozen=True)
class TAtom:
    """
    An atom as written: kind is one of sigma, sigma_a, ds, ds3, T and L.
    """
    kind: str
    args: Tuple[Linear, ...] = ()
    tag: Optional[str] = None
    segs: Tuple[TSeg, ...] = ()
    tau: Optional['TAtom'] = None
    pos: int = 0

    def __str__(self) -> str:
        if self.kind == 'sigma':
            return 'sigma'
        if self.kind == 'sigma_a':
            return f'sigma_a{{{self.args[0]}}}'
        if self.kind == 'ds':
            return f'ds{{b={self.args[0]},c={self.args[1]},{self.tag}}}'
        if self.kind == 'L':
            return f'L({" x ".join(str(s) for s in self.segs)} ; {self.tau})'
        return f'{self.kind}{{{",".join(str(a) for a in self.args)},{self.tag}}}'


@dataclass(frozen=True)
class TInduced:
    segs: Tuple[TSeg, ...]
    base: TAtom
    pos: int = 0

    def __str__(self) -> str:
        return f'{" x ".join(str(s) for s in self.segs)} |x {self.base}'


Template = Union[TAtom, TInduced]


@dataclass(frozen=True)
class Constraint:
    """
    A chain such as "1/2 <= a < b < c".  ops[i] relates terms[i] and terms[i+1].
    """
    terms: Tuple[Linear, ...]
    ops: Tuple[str, ...]

    @property
    def variables(self) -> List[str]:
        return [t.var for t in self.terms if t.var]

    def holds(self, env: Env) -> bool:
        values = [t.evaluate(env) for t in self.terms]
        for op, x, y in zip(self.ops, values, values[1:]):
            if op == '<' and not x < y:
                return False
            if op == '<=' and not x <= y:
                return False
        return True

    def __str__(self) -> str:
        out = [str(self.terms[0])]
        for op, t in zip(self.ops, self.terms[1:]):
            out.extend([op, str(t)])
        return ' '.join(out)


class ExprParser:
    """
    Recursive descent parser for the expression grammar:

        expr   := factor (" x " factor)* " |x " atom  |  atom
        factor := "d(" half "," half ")"
        atom   := "sigma" | "sigma_a{" half "}" | "ds{" ["b="] half "," ["c="] half "," sign "}"
                | "ds3{" half "," half "," half "," tag "}" | "T{" half "," half "," sign "}"
                | "L(" factor (" x " factor)* " ; " atom ")"

    A half is ["-"] int ["/2"].  When variables are allowed (fact catalog patterns) a
    half may also be a sum of one variable and constants, like "-a" or "b+1".
    """
    RE_WS: Pattern[str] = re.compile(r'\s*')
    RE_NUMBER: Pattern[str] = re.compile(r'(\d+)(?:/(\d+))?')
    RE_VAR: Pattern[str] = re.compile(r'[a-z](?![a-z0-9_{(])')
    RE_TAG: Pattern[str] = re.compile(r'plus|minus_bca|minus_abc')

    # Atom keywords, longest first so that "sigma_a{" wins over "sigma".
    ATOMS: Tuple[Tuple[str, str], ...] = (
        ('sigma_a{', '_atom_sigma_a'),
        ('sigma', '_atom_sigma'),
        ('ds3{', '_atom_ds3'),
        ('ds{', '_atom_ds'),
        ('T{', '_atom_temp'),
        ('L(', '_atom_lang'),
    )

    def __init__(self, text: str, allow_vars: bool = False) -> None:
        self.text = text
        self.pos = 0
        self.allow_vars = allow_vars

    def error(self, msg: str, pos: Optional[int] = None) -> ParseError:
        return ParseError(msg, self.pos if pos is None else pos)

    def _ws(self) -> None:
        m = self.RE_WS.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def _at(self, s: str) -> bool:
        self._ws()
        return self.text.startswith(s, self.pos)

    def _accept(self, s: str) -> bool:
        if self._at(s):
            self.pos += len(s)
            return True
        return False

    def _expect(self, s: str) -> None:
        if not self._accept(s):
            found = self.text[self.pos:self.pos + 8] or 'end of input'
            raise self.error(f'expected "{s}" but found "{found}"')

    def _at_product(self) -> bool:
        """
        True if the next token is the product operator "x" (as opposed to "|x").
        """
        self._ws()
        return (
            self.text.startswith('x', self.pos) and
            not self.text[self.pos + 1:self.pos + 2].isalnum()
        )

    def _end(self) -> None:
        self._ws()
        if self.pos != len(self.text):
            raise self.error(f'unexpected trailing text "{self.text[self.pos:]}"')

    def parse(self) -> Template:
        self._ws()
        start = self.pos
        if self._at('d('):
            segs = self._factors()
            self._expect('|x')
            base = self._atom()
            self._end()
            return TInduced(segs, base, start)
        atom = self._atom()
        self._end()
        return atom

    def parse_constraint(self) -> Constraint:
        terms = [self._linear()]
        ops: List[str] = []
        while True:
            if self._accept('<='):
                ops.append('<=')
            elif self._accept('<'):
                ops.append('<')
            else:
                break
            terms.append(self._linear())
        self._end()
        if not ops:
            raise self.error('a constraint needs at least one comparison')
        return Constraint(tuple(terms), tuple(ops))

    def _factors(self) -> Tuple[TSeg, ...]:
        segs = [self._factor()]
        while self._at_product():
            self.pos += 1
            segs.append(self._factor())
        return tuple(segs)

    def _factor(self) -> TSeg:
        self._ws()
        start = self.pos
        self._expect('d(')
        lo = self._linear()
        self._expect(',')
        hi = self._linear()
        self._expect(')')
        return TSeg(lo, hi, start)

    def _number(self) -> HalfInt:
        self._ws()
        m = self.RE_NUMBER.match(self.text, self.pos)
        if not m:
            raise self.error('expected a number')
        if m.group(2) is not None and m.group(2) != '2':
            raise self.error(f'denominator must be 2, not {m.group(2)}', m.start(2))
        self.pos = m.end()
        n = int(m.group(1))
        return HalfInt(n if m.group(2) else 2 * n)

    def _linear(self) -> Linear:
        self._ws()
        start = self.pos
        const = HalfInt(0)
        coeffs: Dict[str, int] = {}
        sign = -1 if self._accept('-') else 1
        while True:
            self._ws()
            m = self.RE_VAR.match(self.text, self.pos)
            if m:
                if not self.allow_vars:
                    raise self.error(f'variable "{m.group(0)}" is not allowed here')
                coeffs[m.group(0)] = coeffs.get(m.group(0), 0) + sign
                self.pos = m.end()
            else:
                n = self._number()
                const = const + (n if sign > 0 else -n)
            if self._accept('+'):
                sign = 1
            elif self._accept('-'):
                sign = -1
            else:
                break
        used = {v: c for v, c in coeffs.items() if c}
        if len(used) > 1 or any(abs(c) != 1 for c in used.values()):
            raise self.error('expected at most one variable with coefficient 1 or -1', start)
        if not used:
            return Linear(const)
        (var, coeff), = used.items()
        return Linear(const, coeff, var)

    def _sign(self) -> str:
        for s in ('+', '-'):
            if self._accept(s):
                return s
        raise self.error('expected a sign (+ or -)')

    def _atom(self) -> TAtom:
        self._ws()
        start = self.pos
        for keyword, handler in self.ATOMS:
            if self.text.startswith(keyword, self.pos):
                self.pos += len(keyword)
                return getattr(self, handler)(start)
        raise self.error('expected an atom (sigma, sigma_a{..}, ds{..}, ds3{..}, T{..} or L(..))')

    def _atom_sigma(self, start: int) -> TAtom:
        return TAtom('sigma', pos=start)

    def _atom_sigma_a(self, start: int) -> TAtom:
        a = self._linear()
        self._expect('}')
        return TAtom('sigma_a', (a,), pos=start)

    def _atom_ds(self, start: int) -> TAtom:
        self._accept('b=')
        b = self._linear()
        self._expect(',')
        self._accept('c=')
        c = self._linear()
        self._expect(',')
        sign = self._sign()
        self._expect('}')
        return TAtom('ds', (b, c), sign, pos=start)

    def _atom_ds3(self, start: int) -> TAtom:
        args = []
        for _ in range(3):
            args.append(self._linear())
            self._expect(',')
        self._ws()
        m = self.RE_TAG.match(self.text, self.pos)
        if not m:
            raise self.error('expected plus, minus_bca or minus_abc')
        self.pos = m.end()
        self._expect('}')
        return TAtom('ds3', tuple(args), m.group(0), pos=start)

    def _atom_temp(self, start: int) -> TAtom:
        a = self._linear()
        self._expect(',')
        c = self._linear()
        self._expect(',')
        sign = self._sign()
        self._expect('}')
        return TAtom('T', (a, c), sign, pos=start)

    def _atom_lang(self, start: int) -> TAtom:
        segs = self._factors()
        self._expect(';')
        tau = self._atom()
        self._expect(')')
        return TAtom('L', segs=segs, tau=tau, pos=start)


def _segment(t: TSeg, env: Env) -> Segment:
    try:
        s = mk_segment(t.lo.evaluate(env), t.hi.evaluate(env))
    except SegmentError as e:
        raise SemanticError(str(e), t.pos) from None
    if s is None:
        raise SemanticError(f'{t} is empty', t.pos)
    return s


def _instantiate_atom(t: TAtom, env: Env) -> Label:
    args = [a.evaluate(env) for a in t.args]
    try:
        if t.kind == 'sigma':
            return SIGMA
        if t.kind == 'sigma_a':
            return sigma_a(args[0])
        if t.kind == 'ds':
            return SignedSeg(args[0], args[1], Sign.parse(t.tag or ''))
        if t.kind == 'ds3':
            return DS3(args[0], args[1], args[2], DS3Tag(t.tag))
        if t.kind == 'T':
            return Temp(args[0], args[1], Sign.parse(t.tag or ''))
        assert t.tau is not None
        tau = _instantiate_atom(t.tau, env)
        if not is_tempered(tau):
            raise AtomError(f'{tau} is not tempered')
        return make_lang([_segment(s, env) for s in t.segs], tau)  # type: ignore
    except (AtomError, SegmentError) as e:
        raise SemanticError(str(e), t.pos) from None


def instantiate(t: Template, env: Optional[Env] = None) -> Label:
    """
    Evaluates a template at the given variable values, returning a canonical label.
    Raises SemanticError if the result is not a valid object and KeyError if a
    variable is unbound.
    """
    env = env or {}
    if isinstance(t, TInduced):
        base = _instantiate_atom(t.base, env)
        if isinstance(base, InducedLabel):
            raise SemanticError('cannot induce from an induced representation', t.base.pos)
        return induced([_segment(s, env) for s in t.segs], base)
    return _instantiate_atom(t, env)


def instantiate_segments(ts: Tuple[TSeg, ...], env: Env) -> List[Segment]:
    return [_segment(t, env) for t in ts]


def parse_template(text: str) -> Template:
    return ExprParser(text, allow_vars=True).parse()


def parse_factors(text: str) -> Tuple[TSeg, ...]:
    """
    Parses a product of segments such as "d(1/2,a) x d(-b,c)".
    """
    p = ExprParser(text, allow_vars=True)
    segs = p._factors()
    p._end()
    return segs


def parse_constraint(text: str) -> Constraint:
    return ExprParser(text, allow_vars=True).parse_constraint()


def parse_expression(text: str) -> Label:
    """
    Parses concrete expression text into a canonical label.
    """
    return instantiate(ExprParser(text).parse())


def format_label(label: Label) -> str:
    """
    Text that parse_expression() reads back as the same label.
    """
    if isinstance(label, InducedLabel):
        return str(canonicalize_induced(label))
    return str(label)
