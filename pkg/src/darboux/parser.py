"""Recursive-descent parser for polynomial expressions and system files.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' exponent)?
    atom   := INTEGER | 'x' | 'y' | 'i' | '(' expr ')'

Division is allowed only by nonzero constants and exponents must be
nonnegative integers.  Implicit multiplication (``2x``) is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .field import GR
from .poly import BivarPoly
from .system import PlanarSystem

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")

_VARS = {
    "x": BivarPoly.x(),
    "y": BivarPoly.y(),
    "i": BivarPoly.const(GR(0, 1)),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(0).strip() == "":
                break
            start = m.start(m.lastindex)
            self.tokens.append((m.group(m.lastindex), start, m.lastindex))
            pos = m.end()
        self.k = 0

    def offset(self, char_index: int) -> int:
        return len(self.text[:char_index].encode("utf-8"))

    def peek(self):
        if self.k < len(self.tokens):
            return self.tokens[self.k]
        return None

    def error(self, message, tok=None):
        if tok is None:
            tok = self.peek()
        idx = tok[1] if tok else len(self.text)
        raise ParseError(message, self.offset(idx))

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def parse(self) -> BivarPoly:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            if tok[2] in (1, 2) or tok[0] == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {tok[0]!r}")
        return value

    def expr(self) -> BivarPoly:
        value = self.term()
        while (tok := self.peek()) is not None and tok[0] in "+-" and tok[2] == 3:
            self.take()
            rhs = self.term()
            value = value + rhs if tok[0] == "+" else value - rhs
        return value

    def term(self) -> BivarPoly:
        value = self.unary()
        while (tok := self.peek()) is not None and tok[0] in "*/" and tok[2] == 3:
            self.take()
            nxt = self.peek()
            rhs = self.unary()
            if tok[0] == "*":
                value = value * rhs
            else:
                if not rhs.is_constant():
                    self.error("division by a non-constant expression", nxt)
                if not rhs:
                    self.error("division by zero", nxt)
                value = value.scale(rhs.constant_value().inverse())
        return value

    def unary(self) -> BivarPoly:
        tok = self.peek()
        if tok is not None and tok[2] == 3 and tok[0] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[0] == "-" else inner
        return self.power()

    def power(self) -> BivarPoly:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "^":
            self.take()
            exp = self.exponent()
            return base**exp
        return base

    def exponent(self) -> int:
        tok = self.peek()
        if tok is None:
            self.error("missing exponent")
        if tok[0] == "-":
            self.error("negative exponents are not allowed")
        if tok[2] == 1:
            self.take()
            nxt = self.peek()
            if nxt is not None and nxt[0] == "^":
                self.take()
                return int(tok[0]) ** self.exponent()
            return int(tok[0])
        value = self.atom()
        if not value.is_constant():
            self.error("non-integer exponent", tok)
        c = value.constant_value()
        if not c.is_real() or c.re.denominator != 1:
            self.error("non-integer exponent", tok)
        if c.re < 0:
            self.error("negative exponents are not allowed", tok)
        return int(c.re)

    def atom(self) -> BivarPoly:
        tok = self.take()
        if tok is None:
            self.error("unexpected end of expression")
        text, _, kind = tok
        if kind == 1:
            nxt = self.peek()
            if nxt is not None and nxt[2] == 2 and nxt[1] == tok[1] + len(text):
                self.error("implicit multiplication is not allowed; use '*'", nxt)
            return BivarPoly.const(int(text))
        if kind == 2:
            if text not in _VARS:
                self.error(f"unknown symbol {text!r}", tok)
            return _VARS[text]
        if text == "(":
            value = self.expr()
            close = self.take()
            if close is None or close[0] != ")":
                self.error("expected ')'", close)
            return value
        self.error(f"unexpected {text!r}", tok)


def parse_polynomial(text: str) -> BivarPoly:
    """Parse an expression in x, y with Q(i) coefficients."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text).parse()


@dataclass
class SystemSpec:
    P_text: str
    Q_text: str
    options: dict = field(default_factory=dict)


def parse_system(spec: SystemSpec) -> PlanarSystem:
    return PlanarSystem(parse_polynomial(spec.P_text), parse_polynomial(spec.Q_text))


def read_system_text(text: str) -> SystemSpec:
    """Read the ``dx = ...`` / ``dy = ...`` / ``option.name = value`` format."""
    dx = dy = None
    options: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'name = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "dx":
            dx = value
        elif key == "dy":
            dy = value
        elif key.startswith("option."):
            name = key[len("option."):]
            if not name:
                raise ParseError(f"line {lineno}: empty option name")
            options.setdefault(name, []).append(value)
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if dx is None or dy is None:
        raise ParseError("system file must define both 'dx' and 'dy'")
    return SystemSpec(dx, dy, options)
