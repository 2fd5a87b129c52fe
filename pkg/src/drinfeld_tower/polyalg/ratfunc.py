"""Rational functions: a general lazy quotient of MultiPolys and the reduced univariate field F(u)."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..gf import Field
from .multi import InexactDivisionError, MultiPoly, divide_exact
from .uni import UniPoly, gcd


class DegenerateSpecialization(ArithmeticError):
    """A denominator (or leading coefficient) vanished at the requested point."""


class RationalFunction:
    """num/den with lazy normalization; equality is tested by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = num.one()
        num._check(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den.is_constant() and den.constant_value() != 1:
            inv = num.field.inv(den.constant_value())
            num, den = num.scale(inv), den.one()
        elif num and not den.is_constant():
            # cheap content reduction: exact division by the denominator only
            try:
                num, den = divide_exact(num, den), den.one()
            except InexactDivisionError:
                pass
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is not structural)")

    def __repr__(self) -> str:
        from .textform import to_text
        if self.is_polynomial():
            return f"RationalFunction({to_text(self.num)!r})"
        return f"RationalFunction(({to_text(self.num)}) / ({to_text(self.den)}))"

    def evaluate(self, point: Mapping[str, int], field: Field | None = None,
                 embed: Sequence[int] | None = None) -> int:
        K = field or self.field
        d = self.den.evaluate(point, K, embed)
        if not d:
            raise DegenerateSpecialization(f"denominator vanishes at {dict(point)}")
        return K.div(self.num.evaluate(point, K, embed), d)


class UniFractionField:
    """The field F(u) with elements (num, den), den monic and coprime to num."""

    depth = 0

    def __init__(self, field: Field, name: str = "u0"):
        self.field = field
        self.name = name
        self._zero = (UniPoly(field), UniPoly.const(field, 1))
        self._one = (UniPoly.const(field, 1), UniPoly.const(field, 1))

    def __repr__(self) -> str:
        return f"{self.field!r}({self.name})"

    def make(self, num: UniPoly, den: UniPoly | None = None):
        F = self.field
        if den is None:
            return (num, self._one[1])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self._zero
        if den.degree > 0:
            g = gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = F.inv(lc)
            num, den = num * inv, den * inv
        return (num, den)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def const(self, c: int):
        return (UniPoly.const(self.field, c), self._one[1]) if c else self._zero

    def gen(self):
        return (UniPoly.x(self.field), self._one[1])

    def is_zero(self, a) -> bool:
        return not a[0]

    def eq(self, a, b) -> bool:
        return a[0] == b[0] and a[1] == b[1]

    def add(self, a, b):
        if not a[0]:
            return b
        if not b[0]:
            return a
        if a[1] == b[1]:
            return self.make(a[0] + b[0], a[1])
        return self.make(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def neg(self, a):
        return (-a[0], a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a[0] or not b[0]:
            return self._zero
        if a[1].degree == 0 and b[1].degree == 0:
            return (a[0] * b[0], a[1])
        return self.make(a[0] * b[0], a[1] * b[1])

    def scale(self, a, c: int):
        if not c:
            return self._zero
        return (a[0] * c, a[1])

    def pow(self, a, e: int):
        return (a[0] ** e, a[1] ** e)

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero in the rational function field")
        return self.make(a[1], a[0])

    def evaluate(self, a, point: Sequence[int], field: Field, embed: Sequence[int]) -> int:
        t = point[0]
        K = field
        d = _uni_eval(a[1], t, K, embed)
        if not d:
            raise DegenerateSpecialization(f"denominator of a {self.name}-coefficient vanishes at {self.name}={t}")
        return K.div(_uni_eval(a[0], t, K, embed), d)

    def to_text(self, a) -> str:
        num = _uni_text(a[0], self.name)
        if a[1].degree == 0:
            return num
        return f"({num}) / ({_uni_text(a[1], self.name)})"


def _uni_eval(p: UniPoly, t: int, K: Field, embed: Sequence[int]) -> int:
    r = 0
    mul, add = K.mul, K.add
    for c in reversed(p.coeffs):
        r = add(mul(r, t), embed[c])
    return r


def _uni_text(p: UniPoly, name: str) -> str:
    from .textform import to_text
    mp = MultiPoly(p.field, (name,), {(i,): c for i, c in enumerate(p.coeffs) if c})
    return to_text(mp)
