"""A tiny expression grammar for ring elements on the command line.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' integer)?
    atom   := rational | 's' | 't' | 'dinv' | '(' expr ')'

Rationals are integer literals or integer/integer (there is no division
operator, so the slash is unambiguous); dinv is the inverted element
1/(3s^2-1).  Parse errors carry the offset of the offending token and
nothing is evaluated until the whole text has parsed.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .curve import CurveElem, curve_ring
from .errors import ParseError
from .scalars import QQ

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character %r" % text[pos:].lstrip()[0],
                             len(text) - len(text[pos:].lstrip()))
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = curve_ring(QQ)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ParseError("expected %r" % op, offset)
        return self.take()

    def parse(self) -> CurveElem:
        out = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ParseError("unexpected %r" % value, offset)
        return out

    def expr(self) -> CurveElem:
        out = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                out = out + rhs if value == "+" else out - rhs
            else:
                return out

    def term(self) -> CurveElem:
        out = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                out = out * self.factor()
            else:
                return out

    def factor(self) -> CurveElem:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.take()
            return -self.factor()
        out = self.atom()
        kind, value, offset = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value, offset = self.take()
            if kind != "number" or "/" in value:
                raise ParseError("expected an integer exponent", offset)
            out = out**int(value)
        return out

    def atom(self) -> CurveElem:
        kind, value, offset = self.take()
        if kind == "number":
            return self.ring.one.scale(mpq(value.replace(" ", "")))
        if kind == "name":
            if value == "s":
                return self.ring.s
            if value == "t":
                return self.ring.t
            if value == "dinv":
                return self.ring.dinv
            raise ParseError("unknown symbol %r" % value, offset)
        if kind == "op" and value == "(":
            out = self.expr()
            self.expect_op(")")
            return out
        raise ParseError("expected a value", offset)


def parse_b_expression(text: str) -> CurveElem:
    """Parse text into an exact ring element; raises ParseError with the
    offset of the first offending token."""
    return _Parser(text).parse()
