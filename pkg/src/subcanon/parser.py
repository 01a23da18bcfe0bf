"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by nonzero constants, so every result is a
polynomial with rational (or Gaussian-rational) coefficients.
"""

from __future__ import annotations

import re
from typing import Sequence

from .algebra.poly import MultiPoly
from .algebra.scalars import GaussianRational

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], imaginary: str | None):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = list(variables)
        self.index = {v: k for k, v in enumerate(self.variables)}
        self.imaginary = imaginary
        self.n = len(self.variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])

    def parse(self) -> MultiPoly:
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                if rhs.degree > 0 or rhs.is_zero():
                    raise ParseError("division only by nonzero constants", pos)
                acc = acc * (1 / rhs.coefficient((0,) * self.n))
        return acc

    def unary(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer", tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self) -> MultiPoly:
        kind, value, pos = self.take()
        if kind == "int":
            return MultiPoly.constant(self.n, int(value))
        if kind == "name":
            if value in self.index:
                return MultiPoly.variable(self.index[value], self.n)
            if self.imaginary is not None and value == self.imaginary:
                return MultiPoly.constant(self.n, GaussianRational(0, 1))
            raise ParseError(f"unknown variable {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str], imaginary: str | None = None) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``variables``.

    If ``imaginary`` names a symbol (e.g. ``"i"``) it is read as the
    imaginary unit and coefficients may be Gaussian rationals.
    """
    return _Parser(text, variables, imaginary).parse()


def format_polynomial(poly: MultiPoly, variables: Sequence[str]) -> str:
    return poly.to_string(variables)
