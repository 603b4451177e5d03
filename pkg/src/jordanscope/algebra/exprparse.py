"""Recursive-descent parser for polynomial matrix entries.

Grammar (no division, no functions -- entries must be polynomial):

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := name | int | '(' expr ')' | '-' factor

Integers are decimal, names are parameter identifiers or the imaginary
unit ``i``.
"""

from __future__ import annotations

from .multipoly import MultiPoly
from .scalars import GR_I, GaussianRational


class EntrySyntaxError(ValueError):
    """Parse failure, carrying the 0-based offset into the source text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_SYMBOLS = set("+-*^()")


def tokenize(text: str):
    """Yields (kind, value, position); kind in {'int','name','sym','end'}."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        raise EntrySyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, params):
        self.tokens = tokenize(text)
        self.pos = 0
        self.params = list(params)
        self.index = {name: k for k, name in enumerate(self.params)}
        self.nvars = len(self.params)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str):
        kind, value, position = self.peek()
        if kind != "sym" or value != sym:
            raise EntrySyntaxError(f"expected {sym!r}", position)
        return self.advance()

    def parse(self) -> MultiPoly:
        result = self.expr()
        kind, value, position = self.peek()
        if kind != "end":
            raise EntrySyntaxError(f"unexpected trailing input {value!r}", position)
        return result

    def expr(self) -> MultiPoly:
        acc = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value in "+-":
                self.advance()
                rhs = self.term()
                acc = acc + rhs if value == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "sym" and value == "*":
                self.advance()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        base = self.base()
        kind, value, position = self.peek()
        if kind == "sym" and value == "^":
            self.advance()
            ekind, evalue, eposition = self.peek()
            if ekind != "int":
                raise EntrySyntaxError(
                    "exponent must be a nonnegative decimal integer", eposition
                )
            self.advance()
            return base ** int(evalue)
        return base

    def base(self) -> MultiPoly:
        kind, value, position = self.advance()
        if kind == "int":
            return MultiPoly.constant(self.nvars, GaussianRational(int(value)))
        if kind == "name":
            if value == "i":
                return MultiPoly.constant(self.nvars, GR_I)
            if value in self.index:
                return MultiPoly.variable(self.nvars, self.index[value])
            raise EntrySyntaxError(f"unknown identifier {value!r}", position)
        if kind == "sym" and value == "(":
            inner = self.expr()
            self.expect_sym(")")
            return inner
        if kind == "sym" and value == "-":
            return -self.factor()
        raise EntrySyntaxError(
            f"expected a name, integer, '(' or '-', got {value!r}", position
        )


def parse_entry(text: str, params) -> MultiPoly:
    """Parse one matrix-entry expression into a MultiPoly.

    ``params`` lists the parameter names in variable order; the name
    ``i`` is reserved for the imaginary unit and may not be a parameter.
    """
    params = list(params)
    if "i" in params:
        raise ValueError("'i' denotes the imaginary unit; rename the parameter")
    return _Parser(text, params).parse()
