"""Polynomial expression grammar.

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT ['/' INT] | NAME | '(' expr ')'

Implicit multiplication is rejected, so ``2x`` and ``x y`` are errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import AlgebraError

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_@][A-Za-z0-9_@]*)|(\S))")


class ParseError(AlgebraError):
    code = "E_PARSE"

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.bare = message


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(Token("int", m.group(1), start))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), start))
        else:
            tokens.append(Token("op", m.group(3), start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, bindings, line, col):
        self.text = text
        self.ring = ring
        self.bindings = bindings or {}
        self.tokens = tokenize(text)
        self.i = 0
        self.line = line
        self.col = col

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise ParseError(msg, self.line, self.col + tok.pos)

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self):
        value = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("name", "int") or self.tok.text == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {self.tok.text!r}")
        return value

    def expr(self):
        neg = False
        if self.tok.text == "-":
            self.take()
            neg = True
        value = self.term()
        if neg:
            value = -value
        while self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.tok.text == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        if self.tok.text == "^":
            self.take()
            t = self.take()
            if t.kind != "int":
                self.error("exponent must be a nonnegative integer literal", t)
            value = value ** int(t.text)
        return value

    def atom(self):
        t = self.take()
        if t.kind == "int":
            num = int(t.text)
            if self.tok.text == "/":
                self.take()
                d = self.take()
                if d.kind != "int" or int(d.text) == 0:
                    self.error("denominator must be a nonzero integer literal", d)
                try:
                    return self.ring.constant(Fraction(num, int(d.text)))
                except ZeroDivisionError:
                    self.error(f"{num}/{d.text} is undefined in characteristic {self.ring.characteristic}", d)
            return self.ring.constant(num)
        if t.kind == "name":
            if "@" in t.text:
                self.error(f"reserved name {t.text!r}", t)
            if t.text in self.ring.names:
                return self.ring.var(t.text)
            if t.text in self.bindings:
                return self.bindings[t.text]
            self.error(f"unknown variable {t.text!r}", t)
        if t.text == "(":
            value = self.expr()
            if self.tok.text != ")":
                self.error("expected ')'")
            self.take()
            return value
        if t.kind == "end":
            self.error("unexpected end of expression", t)
        self.error(f"unexpected {t.text!r}", t)


def parse_polynomial(text: str, ring, bindings=None, line: int = 1, col: int = 1):
    """Parse ``text`` into a polynomial of ``ring``.

    ``bindings`` maps extra names to already-built polynomials.
    """
    return _Parser(text, ring, bindings, line, col).parse()


def split_top_level(text: str, sep: str = ","):
    """Split on ``sep`` outside parentheses; yields (piece, offset) pairs."""
    depth = 0
    start = 0
    out = []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out
