"""Recursive-descent parser for the scalar and element text grammars.

Grammar (shared; identifiers are resolved by a callback)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | IDENT | '(' expr ')'
    exponent := ['-'] INTEGER | '(' ['-'] INTEGER ')'
"""

from __future__ import annotations

import re
from typing import Callable

from ..errors import ParseError
from .field import FieldElem, QSpec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("ident", m.group(2), m.start(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, m.start(3)))
        pos = m.end()
    return out


class ExprParser:
    """Parse text into values of an arbitrary ring.

    ``number(n)`` builds a value from a nonnegative integer literal and
    ``ident(name, pos)`` resolves identifiers.  Values must support
    ``+ - *``; ``divide(a, b)`` and ``power(a, n)`` implement ``/`` and ``^``.
    """

    def __init__(self, number: Callable, ident: Callable, divide: Callable, power: Callable):
        self.number = number
        self.ident = ident
        self.divide = divide
        self.power = power

    def parse(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        if not self.toks:
            raise ParseError("empty expression", text, 0)
        value = self._expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected token {self.toks[self.i][1]!r}", text, self.toks[self.i][2])
        return value

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _accept(self, op: str) -> bool:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def _fail(self, message: str):
        tok = self._peek()
        raise ParseError(message, self.text, tok[2] if tok else len(self.text))

    def _expr(self):
        value = self._term()
        while True:
            if self._accept("+"):
                value = value + self._term()
            elif self._accept("-"):
                value = value - self._term()
            else:
                return value

    def _term(self):
        value = self._unary()
        while True:
            tok = self._peek()
            if self._accept("*"):
                value = value * self._unary()
            elif self._accept("/"):
                pos = tok[2]
                rhs = self._unary()
                try:
                    value = self.divide(value, rhs)
                except ZeroDivisionError as exc:
                    raise ParseError(f"division by zero ({exc})", self.text, pos) from None
                except ValueError as exc:
                    raise ParseError(str(exc), self.text, pos) from None
            else:
                return value

    def _unary(self):
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self._accept("^"):
            tok = self._peek()
            n = self._exponent()
            try:
                return self.power(base, n)
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), self.text, tok[2]) from None
        return base

    def _exponent(self) -> int:
        paren = self._accept("(")
        sign = -1 if self._accept("-") else 1
        tok = self._peek()
        if not tok or tok[0] != "int":
            self._fail("expected integer exponent")
        self.i += 1
        if paren and not self._accept(")"):
            self._fail("expected ')'")
        return sign * int(tok[1])

    def _atom(self):
        tok = self._peek()
        if tok is None:
            self._fail("unexpected end of input")
        if tok[0] == "int":
            self.i += 1
            return self.number(int(tok[1]))
        if tok[0] == "ident":
            self.i += 1
            return self.ident(tok[1], tok[2])
        if self._accept("("):
            value = self._expr()
            if not self._accept(")"):
                self._fail("expected ')'")
            return value
        self._fail(f"unexpected token {tok[1]!r}")


def parse_scalar(text: str, mode: QSpec | None = None) -> FieldElem:
    """Parse a scalar such as ``3``, ``-1/2``, ``(q^2 + 1)/(q - 1)``."""
    mode = mode or QSpec.generic()

    def ident(name, pos):
        if name == "q":
            return FieldElem.q(mode)
        raise ParseError(f"unknown symbol {name!r}", text, pos)

    parser = ExprParser(
        number=lambda n: FieldElem.from_int(n, mode),
        ident=ident,
        divide=lambda a, b: a / b,
        power=lambda a, n: a ** n,
    )
    return parser.parse(text)
