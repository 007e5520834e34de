"""Parser for quadratic-form expressions such as ``x0*x1 + 2*x2^2``.

Grammar (whitespace ignored)::

    expr := ['-'] term (('+' | '-') term)*
    term := [coef '*'] var ('*' var | '^2')
    coef := integer | '(' poly ')'
    poly := ['-'] mono (('+' | '-') mono)*      monomials in 'a' or integers
    var  := 'x0' | 'x1' | 'x2' | 'x3'

Over GF(p^m), ``a`` denotes the residue of x modulo the field's modulus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from quadcodes import gf
from quadcodes.gf import FieldSpec
from quadcodes.quadrics import QuadraticForm, monomial_pairs


class FormSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str) -> None:
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<a>a)|(?P<op>[-+*^()]))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormSyntaxError("unexpected character", pos, text)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, spec: FieldSpec) -> None:
        self.text = text
        self.spec = spec
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text or kind
            raise FormSyntaxError(f"expected {want!r}", tok.pos, self.text)
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek().kind == "op" and self.peek().text == text:
            self.i += 1
            return True
        return False

    def integer(self, tok: _Tok) -> int:
        v = int(tok.text)
        if v >= self.spec.p:
            raise FormSyntaxError(f"coefficient {v} is not in GF({self.spec.p})", tok.pos, self.text)
        return v

    def poly(self) -> int:
        """Field element written as a polynomial in 'a'."""
        spec = self.spec
        acc = 0
        sign = 1
        if self.accept("-"):
            sign = -1
        while True:
            tok = self.peek()
            coef, power = 1, 0
            if tok.kind == "num":
                self.i += 1
                coef = self.integer(tok)
                if self.accept("*"):
                    power = self.a_power()
            elif tok.kind == "a":
                power = self.a_power()
            else:
                raise FormSyntaxError("expected a coefficient", tok.pos, self.text)
            elem = gf.power(spec, spec.from_digits([0, 1]), power) if power else 1
            term = gf.mul(spec, coef, elem)
            acc = gf.add(spec, acc, term if sign > 0 else gf.neg(spec, term))
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                return acc

    def a_power(self) -> int:
        tok = self.take("a")
        if self.spec.m == 1:
            raise FormSyntaxError("'a' is only defined over extension fields", tok.pos, self.text)
        if self.accept("^"):
            return int(self.take("num").text)
        return 1

    def var(self) -> int:
        tok = self.take("var")
        idx = int(tok.text[1:])
        if idx > 3:
            raise FormSyntaxError(f"variable {tok.text} out of range x0..x3", tok.pos, self.text)
        return idx

    def term(self) -> tuple[int, tuple[int, int]]:
        coef = 1
        tok = self.peek()
        if tok.kind == "num":
            self.i += 1
            coef = self.integer(tok)
            self.take("op", "*")
        elif tok.kind == "op" and tok.text == "(":
            self.i += 1
            coef = self.poly()
            self.take("op", ")")
            self.take("op", "*")
        i = self.var()
        if self.accept("^"):
            exp = self.take("num")
            if exp.text != "2":
                raise FormSyntaxError("only squares are allowed", exp.pos, self.text)
            j = i
        else:
            self.take("op", "*")
            j = self.var()
        return coef, (min(i, j), max(i, j))

    def expr(self) -> QuadraticForm:
        spec = self.spec
        pairs = monomial_pairs(4)
        coeffs = [0] * len(pairs)
        sign = -1 if self.accept("-") else 1
        while True:
            coef, mono = self.term()
            if sign < 0:
                coef = gf.neg(spec, coef)
            k = pairs.index(mono)
            coeffs[k] = gf.add(spec, coeffs[k], coef)
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        tok = self.peek()
        if tok.kind != "end":
            raise FormSyntaxError("unexpected token", tok.pos, self.text)
        return QuadraticForm(tuple(coeffs))


def parse_form(text: str, spec: FieldSpec) -> QuadraticForm:
    """Coefficient tuple of a quaternary quadratic form written as text."""
    if not text.strip():
        raise FormSyntaxError("empty expression", 0, text)
    return _Parser(text, spec).expr()


def format_form(f: QuadraticForm, spec: FieldSpec) -> str:
    """Inverse of :func:`parse_form` (zero form prints as ``0``)."""
    return f.to_expr(spec)
