"""The skew polynomial ring L{tau} with tau*r = r^q*tau, and q-linearized elimination.

Coefficients are either field ints (concrete mode, with a ``Field``) or
``MultiPoly`` values (symbolic mode).  Frobenius on a symbolic coefficient
raises every variable and constant to the q-th power, which is exactly how
tau acts on an expression in unknowns that live in L.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

from .gf import Element, Field, embedding
from .polyalg.multi import MultiPoly

Coeff = Union[int, MultiPoly]


class TwistMismatchError(ValueError):
    pass


class NotLinearizedError(ValueError):
    """The unknown occurs with an exponent that is not a power of q."""

    def __init__(self, var: str, exponent: int):
        self.var = var
        self.exponent = exponent
        super().__init__(f"{var}^{exponent} is not a q-power term")


class _FieldOps:
    def __init__(self, F: Field):
        self.F = F

    def zero(self):
        return 0

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return self.F.add(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def mul(self, a, b):
        return self.F.mul(a, b)

    def frob(self, a, i: int, q: int):
        return self.F.frob(a, i, q)

    def key(self):
        return ("field", self.F)


class _PolyOps:
    def __init__(self, template: MultiPoly):
        self.t = template

    def zero(self):
        return self.t.zero()

    def is_zero(self, a) -> bool:
        return not a

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def frob(self, a, i: int, q: int):
        return a.frobenius(i, q) if i else a

    def key(self):
        return ("poly", self.t.field, self.t.vars)


class SkewPoly:
    """sum c_i tau^i, coefficients low to high, with twist q."""

    __slots__ = ("coeffs", "q", "ops")

    def __init__(self, coeffs: Sequence[Coeff], q: int, field: Field | None = None,
                 template: MultiPoly | None = None):
        coeffs = list(coeffs)
        if field is not None:
            self.ops = _FieldOps(field)
        else:
            tpl = template
            if tpl is None:
                tpl = next((c for c in coeffs if isinstance(c, MultiPoly)), None)
            if tpl is None:
                raise ValueError("symbolic SkewPoly needs at least one MultiPoly coefficient or a template")
            self.ops = _PolyOps(tpl)
            coeffs = [tpl.constant(c) if isinstance(c, int) else c for c in coeffs]
        while coeffs and self.ops.is_zero(coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.q = q

    def _new(self, coeffs) -> "SkewPoly":
        out = SkewPoly.__new__(SkewPoly)
        coeffs = list(coeffs)
        while coeffs and self.ops.is_zero(coeffs[-1]):
            coeffs.pop()
        out.coeffs = tuple(coeffs)
        out.q = self.q
        out.ops = self.ops
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else self.ops.zero()

    def __getitem__(self, i: int) -> Coeff:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ops.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def _compatible(self, other: "SkewPoly") -> None:
        if self.q != other.q:
            raise TwistMismatchError(f"twists differ: q={self.q} vs q={other.q}")
        if self.ops.key() != other.ops.key():
            raise ValueError("coefficient domains differ")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._compatible(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new(self.ops.add(self[i], other[i]) for i in range(n))

    def __neg__(self) -> "SkewPoly":
        return self._new(self.ops.neg(c) for c in self.coeffs)

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return skew_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self) -> str:
        return f"SkewPoly(q={self.q}, {list(self.coeffs)!r})"

    def shift(self, s: int) -> "SkewPoly":
        """tau^s * self: coefficients are twisted by Frobenius^s."""
        ops = self.ops
        return self._new([ops.zero()] * s + [ops.frob(c, s, self.q) for c in self.coeffs])

    def scale(self, c: Coeff) -> "SkewPoly":
        """c * self (left multiplication by a constant)."""
        ops = self.ops
        return self._new(ops.mul(c, a) for a in self.coeffs)

    def frobenius(self, s: int) -> "SkewPoly":
        """Apply Frobenius^s to every coefficient (tau^s * self * tau^-s)."""
        return self._new(self.ops.frob(c, s, self.q) for c in self.coeffs)

    def map_coeffs(self, fn, field: Field | None = None) -> "SkewPoly":
        cs = [fn(c) for c in self.coeffs]
        if field is not None:
            return SkewPoly(cs, self.q, field=field)
        return SkewPoly(cs, self.q)


def skew_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """f*g with coefficient sum_{i+j=k} f_i * g_j^(q^i)."""
    f._compatible(g)
    ops = f.ops
    if not f.coeffs or not g.coeffs:
        return f._new([])
    out = [ops.zero()] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if ops.is_zero(a):
            continue
        for j, b in enumerate(g.coeffs):
            if ops.is_zero(b):
                continue
            out[i + j] = ops.add(out[i + j], ops.mul(a, ops.frob(b, i, f.q)))
    return f._new(out)


def skew_eval(f: SkewPoly, v, field: Field | None = None):
    """sum c_i v^(q^i) for v an Element, an int of ``field``, or a MultiPoly."""
    q = f.q
    if isinstance(v, MultiPoly):
        out = v.zero()
        for i, c in enumerate(f.coeffs):
            cc = c if isinstance(c, MultiPoly) else v.constant(c)
            out = out + cc * v.frobenius(i, q)
        return out
    if not isinstance(f.ops, _FieldOps):
        raise TypeError("evaluating a symbolic SkewPoly needs a MultiPoly argument")
    src = f.ops.F
    if isinstance(v, Element):
        K, val = v.field, v.value
    else:
        K, val = field or src, v
    table = embedding(src, K)
    r = 0
    for i, c in enumerate(f.coeffs):
        if c:
            r = K.add(r, K.mul(table[c], K.frob(val, i, q)))
    return Element(K, r) if isinstance(v, Element) else r


@dataclass
class AffineQPoly:
    """L(unknown) + k: a q-linearized part plus a constant term."""

    L: SkewPoly
    k: Coeff

    @property
    def degree(self) -> int:
        return self.L.degree

    def evaluate(self, v, field: Field | None = None):
        lv = skew_eval(self.L, v, field)
        if isinstance(lv, MultiPoly):
            k = self.k if isinstance(self.k, MultiPoly) else lv.constant(self.k)
            return lv + k
        if isinstance(lv, Element):
            K = lv.field
            return Element(K, K.add(lv.value, embedding(self.L.ops.F, K)[self.k]))
        K = field or self.L.ops.F
        return K.add(lv, embedding(self.L.ops.F, K)[self.k])

    @classmethod
    def from_multipoly(cls, poly: MultiPoly, var: str, q: int) -> "AffineQPoly":
        """Split poly = sum_i c_i var^(q^i) + k; raises NotLinearizedError otherwise."""
        parts = poly.coeffs_in(var)
        lin: dict[int, MultiPoly] = {}
        for e, c in parts.items():
            if e == 0:
                continue
            i, t = 0, 1
            while t < e:
                t *= q
                i += 1
            if t != e:
                raise NotLinearizedError(var, e)
            lin[i] = c
        n = max(lin, default=-1) + 1
        L = SkewPoly([lin.get(i, poly.zero()) for i in range(n)], q, template=poly)
        return cls(L, parts.get(0, poly.zero()))

    def to_multipoly(self, var: str) -> MultiPoly:
        tpl = self.L.ops.t
        out = self.k
        x = tpl.gen(var)
        for i, c in enumerate(self.L.coeffs):
            out = out + c * x ** (self.L.q ** i)
        return out


@dataclass
class EliminationStep:
    """One fraction-free reduction: the pair of relations after the step."""

    high: AffineQPoly
    low: AffineQPoly


@dataclass
class EliminationTrace:
    steps: list[EliminationStep] = dc_field(default_factory=list)

    def first_linear(self) -> AffineQPoly | None:
        """The first relation whose linearized part has tau-degree 0 (unknown to the first power)."""
        for st in self.steps:
            for e in (st.high, st.low):
                if e.degree == 0:
                    return e
        return None


def _reduce(e1: AffineQPoly, e2: AffineQPoly) -> AffineQPoly:
    """Cancel the leading tau-term of e1 (deg e1 >= deg e2) using tau^s * e2."""
    ops = e1.L.ops
    q = e1.L.q
    s = e1.degree - e2.degree
    lc1, lc2 = e1.L.lc, e2.L.lc
    f = ops.frob(lc2, s, q)
    L = e1.L.scale(f) - e2.L.shift(s).scale(lc1)
    k = ops.sub(ops.mul(f, e1.k), ops.mul(lc1, ops.frob(e2.k, s, q)))
    return AffineQPoly(L, k)


def linearized_eliminate(e1: AffineQPoly, e2: AffineQPoly, trace: EliminationTrace | None = None):
    """Eliminate the unknown from two affine q-linearized relations.

    Repeatedly right-reduces the relation of higher tau-degree by the other
    (fraction-free: both sides are multiplied by twisted leading coefficients
    rather than divided), until one linearized part vanishes.  Its constant is
    returned; it vanishes at every common solution.
    """
    e1.L._compatible(e2.L)
    a, b = e1, e2
    while True:
        if a.L.is_zero():
            return a.k
        if b.L.is_zero():
            return b.k
        if a.degree < b.degree:
            a, b = b, a
        a = _reduce(a, b)
        if trace is not None:
            hi, lo = (a, b) if a.degree >= b.degree else (b, a)
            trace.steps.append(EliminationStep(hi, lo))
