"""Iterated simple extensions F(u0)[u1]/(m1)[u2]/(m2)... as nested coefficient tuples.

Each ring object exposes the same small protocol (zero, one, const, gen, add,
neg, sub, mul, inv, is_zero, eq, evaluate) on plain values, so a layer can
sit on any ring below it.  ``ExtensionTowerRing`` stacks layers and wraps
values in ``TowerElement`` for operator syntax.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from ..gf import Field, embedding
from .multi import MultiPoly
from .ratfunc import UniFractionField


class ZeroDivisorError(ArithmeticError):
    """Inversion met a nontrivial common factor with a layer's minimal polynomial."""

    def __init__(self, layer: "SimpleExtension", factor: list):
        self.layer = layer
        self.factor = factor
        super().__init__(f"layer {layer.name}: element shares a factor of degree "
                         f"{len(factor) - 1} with the minimal polynomial (layer is reducible)")


# polynomial helpers over an arbitrary protocol ring R (coefficient lists, low -> high)

def _trim(R, a: list) -> list:
    while a and R.is_zero(a[-1]):
        a.pop()
    return a


def poly_divmod(R, a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim(R, list(a))
    b = _trim(R, list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lc = R.inv(b[-1])
    q = [R.zero()] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = R.mul(a[-1], inv_lc)
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = R.sub(a[k + i], R.mul(c, bc))
        a.pop()
        _trim(R, a)
    return q, a


def poly_mul(R, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [R.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if R.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return _trim(R, out)


def poly_sub(R, a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    z = R.zero()
    return _trim(R, [R.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def poly_eval(R, coeffs: Sequence, t) -> Any:
    r = R.zero()
    for c in reversed(coeffs):
        r = R.add(R.mul(r, t), c)
    return r


class SimpleExtension:
    """R[name]/(minpoly) for a monic minimal polynomial over the ring ``below``."""

    def __init__(self, below, name: str, minpoly: Sequence):
        mp = _trim(below, list(minpoly))
        if len(mp) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if not below.eq(mp[-1], below.one()):
            inv = below.inv(mp[-1])
            mp = [below.mul(c, inv) for c in mp]
        self.below = below
        self.name = name
        self.minpoly = tuple(mp)
        self.degree = len(mp) - 1
        self.depth = getattr(below, "depth", 0) + 1
        self.field = below.field

    def __repr__(self) -> str:
        return f"SimpleExtension({self.name}, degree {self.degree}, depth {self.depth})"

    def zero(self):
        return (self.below.zero(),) * self.degree

    def one(self):
        return (self.below.one(),) + (self.below.zero(),) * (self.degree - 1)

    def lift(self, b):
        """Embed an element of the ring below."""
        return (b,) + (self.below.zero(),) * (self.degree - 1)

    def const(self, c: int):
        return self.lift(self.below.const(c))

    def gen(self):
        if self.degree == 1:
            return (self.below.neg(self.minpoly[0]),)
        return (self.below.zero(), self.below.one()) + (self.below.zero(),) * (self.degree - 2)

    def is_zero(self, a) -> bool:
        return all(self.below.is_zero(c) for c in a)

    def eq(self, a, b) -> bool:
        return all(self.below.eq(x, y) for x, y in zip(a, b))

    def add(self, a, b):
        B = self.below
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.below
        return tuple(B.neg(x) for x in a)

    def sub(self, a, b):
        B = self.below
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def reduce(self, coeffs: list):
        B = self.below
        m = self.degree
        mp = self.minpoly
        coeffs = list(coeffs)
        for i in range(len(coeffs) - 1, m - 1, -1):
            c = coeffs[i]
            if B.is_zero(c):
                continue
            for j in range(m):
                if not B.is_zero(mp[j]):
                    coeffs[i - m + j] = B.sub(coeffs[i - m + j], B.mul(c, mp[j]))
        coeffs = coeffs[:m]
        coeffs += [B.zero()] * (m - len(coeffs))
        return tuple(coeffs)

    def mul(self, a, b):
        B = self.below
        m = self.degree
        prod = [B.zero()] * (2 * m - 1)
        for i, x in enumerate(a):
            if B.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not B.is_zero(y):
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        return self.reduce(prod)

    def scale(self, a, b):
        """Multiply by an element of the ring below."""
        B = self.below
        return tuple(B.mul(x, b) for x in a)

    def inv(self, a):
        B = self.below
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of zero in layer {self.name}")
        # extended Euclid on (minpoly, a) over the field below
        r0, r1 = list(self.minpoly), _trim(B, list(a))
        s0, s1 = [], [B.one()]
        while len(r1) > 1:
            q, r = poly_divmod(B, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(B, s0, poly_mul(B, q, s1))
        if not r1:
            raise ZeroDivisorError(self, r0)
        c = B.inv(r1[0])
        out = [B.mul(x, c) for x in s1]
        return self.reduce(out + [B.zero()] * (self.degree - len(out)))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def evaluate(self, a, point: Sequence[int], field: Field, embed: Sequence[int]) -> int:
        """Value at point = (u0, ..., u_depth) in ``field``; raises DegenerateSpecialization."""
        t = point[self.depth]
        r = 0
        for c in reversed(a):
            r = field.add(field.mul(r, t), self.below.evaluate(c, point, field, embed))
        return r

    def size(self, a) -> int:
        """Number of nonzero bottom-level coefficients (a rough complexity measure)."""
        below_size = getattr(self.below, "size", None)
        if below_size is None:
            return sum(1 for c in a if not self.below.is_zero(c))
        return sum(below_size(c) for c in a)


class ExtensionTowerRing:
    """F(u0) with layers adjoined one at a time; ``top`` is the current field F_k."""

    def __init__(self, field: Field, base_name: str = "u0"):
        self.field = field
        self.base = UniFractionField(field, base_name)
        self.rings: list = [self.base]
        self.names = [base_name]

    @property
    def top(self):
        return self.rings[-1]

    @property
    def level(self) -> int:
        return len(self.rings) - 1

    def adjoin(self, name: str, minpoly: Sequence) -> SimpleExtension:
        """Adjoin a root of ``minpoly`` (coefficients in the current top ring, low -> high)."""
        ext = SimpleExtension(self.top, name, minpoly)
        self.rings.append(ext)
        self.names.append(name)
        return ext

    def ring(self, level: int):
        return self.rings[level]

    def lift(self, value, from_level: int, to_level: int | None = None):
        to_level = self.level if to_level is None else to_level
        for lv in range(from_level + 1, to_level + 1):
            value = self.rings[lv].lift(value)
        return value

    def gen(self, i: int, level: int | None = None):
        """Generator u_i as an element of the ring at ``level``."""
        return self.lift(self.rings[i].gen(), i, level)

    def element(self, value, level: int | None = None) -> "TowerElement":
        level = self.level if level is None else level
        return TowerElement(self, level, value)

    def from_multipoly(self, poly: MultiPoly, assignment: Mapping[str, Any], level: int | None = None):
        """Image of ``poly`` with each variable replaced by a ring value (coefficients in F_16)."""
        R = self.rings[self.level if level is None else level]
        cache: dict[tuple[str, int], Any] = {}

        def power(v: str, k: int):
            key = (v, k)
            if key not in cache:
                cache[key] = R.pow(assignment[v], k)
            return cache[key]

        out = R.zero()
        for m, c in poly.terms.items():
            t = R.const(c)
            for v, k in zip(poly.vars, m):
                if k:
                    t = R.mul(t, power(v, k))
            out = R.add(out, t)
        return out

    def evaluate(self, value, point: Sequence[int], field: Field, level: int | None = None) -> int:
        R = self.rings[self.level if level is None else level]
        return R.evaluate(value, point, field, embedding(self.field, field))


def _pow(R, a, e: int):
    r = R.one()
    while e:
        if e & 1:
            r = R.mul(r, a)
        e >>= 1
        if e:
            a = R.mul(a, a)
    return r


@dataclass(frozen=True)
class TowerElement:
    """Operator wrapper around a value of one ring in an ExtensionTowerRing."""

    tower: ExtensionTowerRing
    level: int
    value: Any

    @property
    def ring(self):
        return self.tower.rings[self.level]

    def _wrap(self, v) -> "TowerElement":
        return TowerElement(self.tower, self.level, v)

    def _coerce(self, o) -> Any:
        if isinstance(o, TowerElement):
            if o.tower is not self.tower:
                raise ValueError("elements of different towers")
            if o.level > self.level:
                raise ValueError("cannot coerce an element down the tower")
            return self.tower.lift(o.value, o.level, self.level)
        if isinstance(o, int):
            return self.ring.const(o)
        raise TypeError(f"cannot combine TowerElement with {type(o).__name__}")

    def __add__(self, o):
        return self._wrap(self.ring.add(self.value, self._coerce(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(self.ring.sub(self.value, self._coerce(o)))

    def __neg__(self):
        return self._wrap(self.ring.neg(self.value))

    def __mul__(self, o):
        return self._wrap(self.ring.mul(self.value, self._coerce(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return self._wrap(self.ring.mul(self.value, self.ring.inv(self._coerce(o))))

    def __pow__(self, e: int):
        return self._wrap(_pow(self.ring, self.value, e))

    def inverse(self) -> "TowerElement":
        return self._wrap(self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def __eq__(self, o) -> bool:
        if not isinstance(o, (TowerElement, int)):
            return NotImplemented
        return self.ring.eq(self.value, self._coerce(o))

    def __hash__(self):
        raise TypeError("TowerElement is unhashable")

    def evaluate(self, point: Sequence[int], field: Field) -> int:
        return self.tower.evaluate(self.value, point, field, self.level)
