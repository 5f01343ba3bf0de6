"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | base ('^' nat)?
    base    := var | literal | '(' expr ')'
    literal := nat | nat '/' nat        # the '/' form only over Q

Unary minus binds looser than '^', so ``-x^2`` is ``-(x^2)``.
Juxtaposition (``2x``) is rejected.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import DivisionInExpression, ExpressionSyntaxError, UnknownVariable
from .poly import EXPONENT_LIMIT, Poly, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("nat", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExpressionSyntaxError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] != "op":
            raise self.error(f"expected {value!r}", tok)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}", tok)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.factor()
            elif tok[0] == "op" and tok[1] == "/":
                raise DivisionInExpression(self.text, tok[2])
            else:
                return p

    def factor(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        b = self.base()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "nat":
                raise self.error("exponent must be a natural number", e)
            k = int(e[1])
            if k > EXPONENT_LIMIT:
                raise self.error(f"exponent exceeds {EXPONENT_LIMIT}", e)
            b = b**k
        return b

    def base(self) -> Poly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "ident":
            if value not in self.ring.vars:
                raise UnknownVariable(value, self.text, pos)
            return self.ring.gen(self.ring.vars.index(value))
        if kind == "nat":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                after = self.tokens[self.i + 1]
                if not self.ring.field.is_rational or after[0] != "nat":
                    raise DivisionInExpression(self.text, nxt[2])
                self.take()
                self.take()
                if int(after[1]) == 0:
                    raise ExpressionSyntaxError("zero denominator", self.text, after[2])
                return self.ring.const(Fraction(int(value), int(after[1])))
            return self.ring.const(int(value))
        if kind == "op" and value == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {value!r}", tok)


def parse_poly(text: str, ring_or_vars, field=None) -> Poly:
    """Parse ``text`` into a polynomial.

    Accepts either a :class:`PolyRing` or a variable list plus a field.
    """
    if isinstance(ring_or_vars, PolyRing):
        ring = ring_or_vars
    else:
        ring = PolyRing.make(field if field is not None else "Q", ring_or_vars)
    return _Parser(text, ring).parse()


def parse_polys(texts: Iterable[str], ring: PolyRing) -> list[Poly]:
    return [parse_poly(t, ring) for t in texts]
