"""Recursive-descent parser for curve equations and function-field elements.

Grammar (implicit multiplication allowed between adjacent factors):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (('*'|'/')? power)*
    power  := atom ('^' ['-'] INT)?
    atom   := INT ['/' INT]? | 'x' | 'y' | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .curves import FunctionElement, HyperellipticCurve, ProjectiveLine, XF, K, R, poly_text
from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str, offset: int = 0):
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, _skip(text, pos) + offset)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", "", len(text.rstrip())))
    return toks


def _skip(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


class _Parser:
    def __init__(self, text: str, curve):
        self.text = text
        self.curve = curve
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect_op(self, op):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            self.fail(f"expected '{op}'")
        return self.take()

    def parse(self) -> FunctionElement:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return val

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def _starts_factor(self, t):
        return t[0] in ("num", "var") or (t[0] == "op" and t[1] == "(")

    def term(self):
        acc = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.power()
                if t[1] == "*":
                    acc = acc * rhs
                else:
                    if rhs.is_zero():
                        self.fail("division by zero", rhs_tok)
                    acc = acc / rhs
            elif self._starts_factor(t):
                acc = acc * self.power()
            else:
                return acc

    def power(self):
        base_tok = self.peek()
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            e = self.peek()
            if e[0] != "num":
                self.fail("expected an integer exponent")
            self.take()
            k = int(e[1])
            if neg:
                if base.is_zero():
                    self.fail("division by zero", base_tok)
                k = -k
            return base**k
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return self.curve.const(Fraction(int(t[1])))
        if t[0] == "var":
            name = t[1]
            if name == "x":
                self.take()
                return self.curve.x()
            if name == "y":
                if self.curve.f is None:
                    self.fail("y is not defined on P1")
                self.take()
                return self.curve.y()
            self.fail(f"unknown symbol '{name}'")
        if t[0] == "op" and t[1] == "(":
            self.take()
            val = self.expr()
            self.expect_op(")")
            return val
        if t[0] == "end":
            self.fail("unexpected end of input")
        self.fail("expected a number, x, y or '('")


def parse_function(text: str, curve) -> FunctionElement:
    """Parse an element of Q(C), e.g. ``"x + 2"``, ``"y/(x^2+1)"``."""
    return _Parser(text, curve).parse()


def parse_curve(text: str):
    """``"P1"`` or ``"y^2 = <polynomial in x>"``."""
    if text.strip().upper() in ("P1", "P^1"):
        return ProjectiveLine()
    if "=" not in text:
        raise ParseError("expected 'y^2 = f(x)' or 'P1'", text, _skip(text, 0))
    eq = text.index("=")
    lhs = text[:eq]
    if re.fullmatch(r"\s*y\s*(\^|\*\*)\s*2\s*", lhs) is None:
        raise ParseError("left-hand side must be y^2", text, _skip(text, 0))
    rhs = text[eq + 1:]
    try:
        g = _Parser(rhs, ProjectiveLine()).parse()
    except ParseError as e:
        raise ParseError(e.message, text, e.pos + eq + 1) from None
    if g.u.denom.degree() > 0:
        raise ParseError("right-hand side must be a polynomial in x", text, _skip(text, eq + 1))
    f = g.u.numer * (1 / g.u.denom.LC)
    f = R(f.as_expr()) if f.ring != R else f
    try:
        return HyperellipticCurve(f)
    except ValueError as e:
        raise ParseError(str(e), text, _skip(text, eq + 1)) from None


__all__ = ["parse_function", "parse_curve", "poly_text", "XF", "K"]
