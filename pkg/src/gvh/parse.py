"""Recursive-descent parser for polynomial and operator expressions.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME | '(' expr ')'

NUMBER is an integer or an ``a/b`` rational literal.  NAME is ``qK`` or ``pK``
with 1 <= K <= n (bare ``q``/``p`` only when n = 1).  Operator expressions also
accept ``i``, ``hbar`` and ``I``, and their products are noncommutative: the
factors are multiplied in the order written and brought to normal order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["ParseError", "parse_classical", "parse_operator", "tokenize"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")

    def pointer(self) -> str:
        """Two-line diagnostic showing the offending column."""
        return f"{self.text}\n{' ' * self.position}^"


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, END
    value: object
    pos: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastgroup)
        if m.group("num") is not None:
            raw = m.group("num").replace(" ", "")
            if "/" in raw:
                a, b = raw.split("/")
                if int(b) == 0:
                    raise ParseError("zero denominator", start, text)
                tokens.append(Token("NUM", Fraction(int(a), int(b)), start))
            else:
                tokens.append(Token("NUM", Fraction(int(raw)), start))
        elif m.group("name") is not None:
            tokens.append(Token("NAME", m.group("name"), start))
        else:
            tokens.append(Token("OP", m.group("op"), start))
        pos = m.end()
    tokens.append(Token("END", None, len(text)))
    return tokens


_VAR_RE = re.compile(r"^([qp])(\d*)$")


class _Parser:
    def __init__(self, text: str, n: int, backend):
        self.text = text
        self.n = n
        self.backend = backend
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.text)

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.tok.kind == "END":
            self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "END":
            self.error(f"unexpected {self.tok.value!r}")
        return value

    def expr(self):
        value = self.term()
        while self.tok.kind == "OP" and self.tok.value in "+-":
            op = self.take().value
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.tok.kind == "OP" and self.tok.value == "*":
            self.take()
            value = self.backend.mul(value, self.factor())
        return value

    def factor(self):
        if self.tok.kind == "OP" and self.tok.value in "+-":
            op = self.take().value
            value = self.factor()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.value == "^":
            self.take()
            t = self.tok
            if t.kind != "NUM" or t.value.denominator != 1:
                self.error("exponent must be a non-negative integer literal")
            self.take()
            return self.backend.pow(base, int(t.value))
        return base

    def atom(self):
        t = self.tok
        if t.kind == "NUM":
            self.take()
            return self.backend.number(t.value)
        if t.kind == "NAME":
            self.take()
            m = _VAR_RE.match(t.value)
            if m:
                kind, idx = m.group(1), m.group(2)
                if idx == "":
                    if self.n != 1:
                        self.error(f"bare {kind!r} is only allowed when n = 1", t)
                    index = 1
                else:
                    index = int(idx)
                    if index < 1 or index > self.n:
                        self.error(f"variable index {index} exceeds n = {self.n}", t)
                return self.backend.variable(kind, index)
            value = self.backend.symbol(t.value)
            if value is None:
                self.error(f"unknown name {t.value!r}", t)
            return value
        if t.kind == "OP" and t.value == "(":
            self.take()
            value = self.expr()
            if not (self.tok.kind == "OP" and self.tok.value == ")"):
                self.error("expected ')'")
            self.take()
            return value
        if t.kind == "END":
            self.error("unexpected end of input")
        self.error(f"unexpected {t.value!r}")


class _ClassicalBackend:
    def __init__(self, n: int):
        from .poly import Polynomial

        self.P = Polynomial
        self.n = n

    def number(self, x):
        return self.P.const(x, self.n)

    def variable(self, kind, index):
        return self.P.q(index, self.n) if kind == "q" else self.P.p(index, self.n)

    def symbol(self, name):
        return None

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e


class _OperatorBackend:
    def __init__(self, n: int):
        from .scalars import GaussianRational, HScalar
        from .weyl import WeylElement

        self.W = WeylElement
        self.n = n
        self.symbols = {
            "i": WeylElement.scalar(HScalar.const(GaussianRational(0, 1)), n),
            "hbar": WeylElement.scalar(HScalar.hbar(1), n),
            "I": WeylElement.identity(n),
        }

    def number(self, x):
        return self.W.scalar(x, self.n)

    def variable(self, kind, index):
        return self.W.q(index, self.n) if kind == "q" else self.W.p(index, self.n)

    def symbol(self, name):
        return self.symbols.get(name)

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a**e


def parse_classical(text: str, n: int):
    if n < 1:
        raise ValueError("n must be positive")
    return _Parser(text, n, _ClassicalBackend(n)).parse()


def parse_operator(text: str, n: int):
    """Parse a noncommutative operator expression into a normal-ordered WeylElement."""
    if n < 1:
        raise ValueError("n must be positive")
    return _Parser(text, n, _OperatorBackend(n)).parse()
