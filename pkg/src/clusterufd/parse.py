"""Recursive-descent parser for polynomial and Laurent expressions.

Grammar (whitespace ignored)::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' INT]
    atom   := '(' expr ')' | INT | 'i' | 'x' INT

Division is evaluated in the Laurent ring and therefore requires a divisor
whose reduced numerator is a single term; anything else is rejected with
the position of the offending '/'.  The symbol ``i`` needs the field Qi.
"""
from __future__ import annotations

import re

from .fields import FieldTag
from .poly import LaurentPolynomial, Polynomial


class ParseError(ValueError):
    """A syntax or evaluation error, carrying the 1-based input position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(i)|([-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_at)
        if match.group(1) is not None:
            tokens.append(("int", match.group(1), match.start(1) + 1))
        elif match.group(2) is not None:
            tokens.append(("var", match.group(2), match.start(2) + 1))
        elif match.group(3) is not None:
            tokens.append(("imag", "i", match.start(3) + 1))
        else:
            tokens.append(("op", match.group(4), match.start(4) + 1))
        pos = match.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int, field: FieldTag):
        self.tokens = _tokenize(text)
        self.idx = 0
        self.m = m
        self.field = field

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, symbol: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != symbol:
            raise ParseError(f"expected {symbol!r}", pos)
        return self.advance()

    def parse(self) -> LaurentPolynomial:
        value = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r}", pos)
        return value

    def expr(self) -> LaurentPolynomial:
        kind, text, _ = self.peek()
        negate = False
        if kind == "op" and text == "-":
            self.advance()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self) -> LaurentPolynomial:
        value = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                rhs = self.factor()
                if text == "*":
                    value = value * rhs
                else:
                    if rhs.is_zero:
                        raise ParseError("division by zero", pos)
                    if not rhs.is_unit():
                        raise ParseError(
                            "division requires a divisor that reduces to a "
                            "single term", pos)
                    value = value / rhs
            else:
                return value

    def factor(self) -> LaurentPolynomial:
        value = self.atom()
        kind, text, pos = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            kind, text, pos = self.peek()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            self.advance()
            value = value ** int(text)
        return value

    def atom(self) -> LaurentPolynomial:
        kind, text, pos = self.advance()
        if kind == "int":
            return LaurentPolynomial.constant(int(text), self.m, self.field)
        if kind == "var":
            var = int(text[1:])
            if not 1 <= var <= self.m:
                raise ParseError(
                    f"unknown variable {text}: ambient ring has x1..x{self.m}",
                    pos)
            return LaurentPolynomial.variable(var, self.m, self.field)
        if kind == "imag":
            if self.field is not FieldTag.QI:
                raise ParseError("the symbol i requires --field Qi", pos)
            return LaurentPolynomial.constant(self.field.imaginary_unit(),
                                              self.m, self.field)
        if kind == "op" and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(
            f"unexpected {text!r}" if text else "unexpected end of input", pos)


def parse_expression(text: str, m: int, field: FieldTag) -> LaurentPolynomial:
    """Parse a Laurent expression in the variables x1..xm."""
    return _Parser(text, m, field).parse()


def parse_polynomial(text: str, m: int, field: FieldTag) -> Polynomial:
    """Parse an expression that must reduce to an honest polynomial."""
    value = parse_expression(text, m, field)
    if not value.is_polynomial():
        raise ParseError(
            f"expression is not a polynomial: it reduces to {value}", 1)
    return value.as_polynomial()
