"""Parser for the model-description language.

::

    # finite homotopy, non-Noetherian cohomology
    algebra X
    gen v 2
    gen x 3
    gen w 4
    d w = v*x

``gen NAME CODEGREE`` declares a generator, ``d NAME = poly`` its differential
(omitted means zero).  Polynomials are sums of terms ``[RATIONAL *] factor (* factor)*``
with ``factor := NAME [^ INT]``; products are read in the written order, so
``y*x`` means ``-x*y`` for odd ``x < y``.  Names may end in primes (``y'``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from .errors import ParseError, SullivanError
from .gca import Generator, GeneratorSet, Poly

KEYWORDS = {"algebra", "gen", "d"}

_TOKEN = re.compile(
    r"(?P<ws>[ \t]+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*/^=])"
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize_line(text: str, line: int = 1, col0: int = 1) -> List[Token]:
    text = text.split("#", 1)[0]
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), line, col0 + pos))
        pos = m.end()
    return out


class _PolyParser:
    def __init__(self, tokens: List[Token], gens: GeneratorSet, line: int, end_col: int):
        self.toks = tokens
        self.i = 0
        self.gens = gens
        self.line = line
        self.end_col = end_col

    def peek(self) -> Optional[Token]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind=None, text=None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line, self.end_col)
        if (kind and tok.kind != kind) or (text and tok.text != text):
            want = text or kind
            raise ParseError(f"expected {want}, found {tok.text!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def parse(self) -> Poly:
        total = Poly.zero(self.gens)
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text in "+-":
            self.i += 1
            sign = -1 if tok.text == "-" else 1
        total = total + self.term().scale(sign)
        while self.peek() is not None:
            op = self.take("op")
            if op.text not in "+-":
                raise ParseError(f"expected + or -, found {op.text!r}", op.line, op.col)
            sign = -1 if op.text == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def rational(self) -> Fraction:
        num = int(self.take("int").text)
        tok = self.peek()
        if tok is not None and tok.text == "/":
            self.i += 1
            den_tok = self.take("int")
            den = int(den_tok.text)
            if den == 0:
                raise ParseError("zero denominator", den_tok.line, den_tok.col)
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> Poly:
        coeff = Fraction(1)
        tok = self.peek()
        if tok is not None and tok.kind == "int":
            coeff = self.rational()
            nxt = self.peek()
            if nxt is None or nxt.text in "+-":
                return Poly.constant(self.gens, coeff)
            self.take("op", "*")
        result = self.factor()
        while self.peek() is not None and self.peek().text == "*":
            self.i += 1
            result = result * self.factor()
        return result.scale(coeff)

    def factor(self) -> Poly:
        tok = self.take("ident")
        if tok.text not in self.gens:
            raise ParseError(f"unknown generator {tok.text!r}", tok.line, tok.col, tok.text)
        p = Poly.generator(self.gens, tok.text)
        nxt = self.peek()
        if nxt is not None and nxt.text == "^":
            self.i += 1
            e = int(self.take("int").text)
            p = p ** e
        return p


def parse_poly(text: str, gens: GeneratorSet) -> Poly:
    """Parse a polynomial over ``gens``; ``"0"`` and plain rationals are accepted."""
    tokens = tokenize_line(text)
    if not tokens:
        raise ParseError("empty polynomial")
    return _PolyParser(tokens, gens, 1, len(text) + 1).parse()


def parse_model(text: str, check: bool = True):
    """Parse a model file into a validated :class:`~sullivan.model.SullivanAlgebra`."""
    from .model import SullivanAlgebra

    name = None
    gens: List[Generator] = []
    gen_lines = {}
    diffs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, lineno)
        if not toks:
            continue
        head = toks[0]
        if name is None:
            if head.text != "algebra":
                raise ParseError("a model file must start with 'algebra NAME'", lineno, head.col)
            if len(toks) != 2 or toks[1].kind != "ident":
                raise ParseError("expected 'algebra NAME'", lineno, head.col)
            name = toks[1].text
            continue
        if head.text == "gen":
            if len(toks) != 3 or toks[1].kind != "ident" or toks[2].kind != "int":
                col = toks[1].col if len(toks) > 1 else head.col
                raise ParseError("expected 'gen NAME CODEGREE'", lineno, col)
            gname, deg = toks[1].text, int(toks[2].text)
            if gname in KEYWORDS:
                raise ParseError(f"{gname!r} is a reserved word", lineno, toks[1].col)
            if gname in gen_lines:
                raise ParseError(
                    f"generator {gname!r} already declared on line {gen_lines[gname]}",
                    lineno, toks[1].col, gname,
                )
            if deg < 2:
                raise ParseError(
                    f"generator {gname!r} has codegree {deg}; codegree must be >= 2",
                    lineno, toks[2].col, gname,
                )
            gen_lines[gname] = lineno
            gens.append(Generator(gname, deg))
        elif head.text == "d":
            if len(toks) < 4 or toks[1].kind != "ident" or toks[2].text != "=":
                raise ParseError("expected 'd NAME = poly'", lineno, head.col)
            diffs.append((lineno, toks[1], toks[3:], len(raw) + 1))
        else:
            raise ParseError(f"unexpected {head.text!r}", lineno, head.col)
    if name is None:
        raise ParseError("empty model file")
    gset = GeneratorSet(gens)
    differential = {}
    for lineno, target, body, end_col in diffs:
        if target.text not in gset:
            raise ParseError(
                f"differential of undeclared generator {target.text!r}",
                lineno, target.col, target.text,
            )
        if target.text in differential:
            raise ParseError(f"d({target.text}) assigned twice", lineno, target.col, target.text)
        p = _PolyParser(body, gset, lineno, end_col).parse()
        want = gset[target.text].codegree + 1
        if p.terms and (not p.is_homogeneous() or p.codegree != want):
            raise ParseError(
                f"d({target.text}) = {p} must be homogeneous of codegree {want}",
                lineno, target.col, target.text,
            )
        differential[target.text] = p
    try:
        A = SullivanAlgebra(gset, differential, name)
    except SullivanError as exc:
        raise ParseError(str(exc)) from exc
    if check:
        report = A.validate()
        if not report.valid:
            who, msg = report.problems[0]
            line = next((ln for ln, t, _, _ in diffs if t.text == who), gen_lines.get(who))
            raise ParseError(msg, line, None, who)
    return A
