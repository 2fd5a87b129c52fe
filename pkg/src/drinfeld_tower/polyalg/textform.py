"""Canonical text form for ``MultiPoly``.

Terms look like ``(x*y + x)*h2^29*h3^3``: a coefficient written as a
polynomial in named field constants, then the monomial.  Terms are joined by
`` + `` in descending total-degree-then-lex order, so printing is canonical
and ``parse(to_text(f)) == f``.  The parser also accepts any arithmetic
expression built from ints, constants, variables, ``+ - * ^`` and parentheses.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from ..gf import Field, make_field, ring_constants
from .multi import MultiPoly


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class CoeffSyntax:
    """Names for field constants and an F_p-basis used to print coefficients.

    ``basis`` is a list of (text, value) pairs; every field element must be a
    unique F_p-combination of the basis values.
    """

    field: Field
    names: tuple[tuple[str, int], ...]
    basis: tuple[tuple[str, int], ...]
    _table: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        F = self.field
        p = F.p
        table = {}
        for digits in itertools.product(range(p), repeat=len(self.basis)):
            v = 0
            parts = []
            for d, (text, b) in zip(digits, self.basis):
                if d:
                    v = F.add(v, F.mul(F.from_int(d), b))
                    if text == "1":
                        parts.append(str(d))
                    else:
                        parts.append(text if d == 1 else f"{d}*{text}")
            table.setdefault(v, parts)
        if len(table) != F.order:
            raise ValueError("basis does not span the field uniquely")
        self._table.update(table)

    def lookup(self, name: str) -> int | None:
        for n, v in self.names:
            if n == name:
                return v
        return None

    def coeff_parts(self, c: int) -> list[str]:
        return self._table[c]

    def coeff_text(self, c: int) -> str:
        return " + ".join(self._table[c]) or "0"


@lru_cache(maxsize=None)
def xy_syntax(conjugate: bool = False) -> CoeffSyntax:
    """F_16 with constants x, y and print basis x*y, y, x, 1."""
    F = make_field(2, 4)
    x, y = ring_constants(F, conjugate)
    xy = F.mul(x, y)
    return CoeffSyntax(F, (("x", x), ("y", y)), (("x*y", xy), ("y", y), ("x", x), ("1", 1)))


@lru_cache(maxsize=None)
def generic_syntax(field: Field, name: str = "a") -> CoeffSyntax:
    """Coefficients written in the class ``a`` of X modulo the field's modulus."""
    if field.k == 1:
        return CoeffSyntax(field, (), (("1", 1),))
    g = field.p  # class of X
    basis = []
    v = 1
    for i in range(field.k):
        basis.append(("1" if i == 0 else name if i == 1 else f"{name}^{i}", v))
        v = field.mul(v, g)
    return CoeffSyntax(field, ((name, g),), tuple(reversed(basis)))


def default_syntax(field: Field) -> CoeffSyntax:
    if field is make_field(2, 4):
        return xy_syntax()
    return generic_syntax(field)


def _monomial_text(vars: Sequence[str], m: Sequence[int]) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(vars, m) if e)


def to_text(poly: MultiPoly, syntax: CoeffSyntax | None = None) -> str:
    syntax = syntax or default_syntax(poly.field)
    if syntax.field is not poly.field:
        raise ValueError("syntax belongs to a different field")
    if not poly.terms:
        return "0"
    out = []
    for m, c in poly.sorted_terms():
        mono = _monomial_text(poly.vars, m)
        parts = syntax.coeff_parts(c)
        if not mono:
            out.append(parts[0] if len(parts) == 1 else f"({' + '.join(parts)})")
        elif parts == ["1"]:
            out.append(mono)
        elif len(parts) == 1:
            out.append(f"{parts[0]}*{mono}")
        else:
            out.append(f"({' + '.join(parts)})*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        pos = mt.end()
        num, name, op = mt.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r} at offset {pos - 1}")
            toks.append(("op", op))
    toks.append(("end", ""))
    return toks


class _Parser:
    def __init__(self, text: str, field: Field, vars: Sequence[str], syntax: CoeffSyntax):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.vars = tuple(vars)
        self.syntax = syntax

    def peek(self) -> tuple[str, str]:
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None) -> str:
        k, v = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            raise ParseError(f"expected {value or kind}, found {v or k!r} (token {self.i})")
        self.i += 1
        return v

    def parse(self) -> MultiPoly:
        r = self.expr()
        self.take("end")
        return r

    def expr(self) -> MultiPoly:
        r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take("op")
            t = self.term()
            r = r + t if op == "+" else r - t
        return r

    def term(self) -> MultiPoly:
        neg = False
        if self.peek() == ("op", "-"):
            self.take("op")
            neg = True
        r = self.power()
        while self.peek() == ("op", "*"):
            self.take("op")
            r = r * self.power()
        return -r if neg else r

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take("op")
            base = base ** int(self.take("num"))
        return base

    def atom(self) -> MultiPoly:
        kind, v = self.peek()
        F = self.field
        if kind == "num":
            self.take("num")
            return MultiPoly.const(F, self.vars, F.from_int(int(v)))
        if kind == "name":
            self.take("name")
            if v in self.vars:
                return MultiPoly.var(F, self.vars, v)
            c = self.syntax.lookup(v)
            if c is None:
                raise ParseError(f"unknown name {v!r}; variables are {self.vars}")
            return MultiPoly.const(F, self.vars, c)
        if (kind, v) == ("op", "("):
            self.take("op")
            r = self.expr()
            self.take("op", ")")
            return r
        raise ParseError(f"unexpected token {v or kind!r}")


def parse_poly(text: str, vars: Sequence[str], field: Field | None = None,
               syntax: CoeffSyntax | None = None) -> MultiPoly:
    """Parse ``text`` into a polynomial in ``vars``."""
    if syntax is None:
        field = field or make_field(2, 4)
        syntax = default_syntax(field)
    field = syntax.field
    for v in vars:
        if syntax.lookup(v) is not None:
            raise ParseError(f"variable {v!r} clashes with a field constant name")
    return _Parser(text, field, vars, syntax).parse()
