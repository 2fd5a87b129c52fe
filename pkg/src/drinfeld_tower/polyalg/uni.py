"""Dense univariate polynomials over a ``Field`` and their factorization."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from ..gf import Field


class UniPoly:
    """Polynomial over ``field`` with int-encoded coefficients, low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls, field: Field) -> "UniPoly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c: int) -> "UniPoly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and other.field is self.field and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self.field!r}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"[{c}]*{mono}")
        return " + ".join(terms) or "0"

    def __add__(self, other: "UniPoly") -> "UniPoly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F.add(out[i], v)
        return UniPoly(F, out)

    def __neg__(self) -> "UniPoly":
        F = self.field
        return UniPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly | int") -> "UniPoly":
        F = self.field
        if isinstance(other, int):
            return UniPoly(F, [F.mul(c, other) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(F)
        out = [0] * (len(a) + len(b) - 1)
        mul, add = F.mul, F.add
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        out[i + j] = add(out[i + j], mul(u, v))
        return UniPoly(F, out)

    def __pow__(self, e: int) -> "UniPoly":
        r = UniPoly.const(self.field, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def shift(self, n: int) -> "UniPoly":
        return UniPoly(self.field, (0,) * n + self.coeffs) if self.coeffs else self

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * self.field.inv(self.lc)

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return UniPoly(F), self
        q = [0] * (len(r) - db)
        inv_lc = F.inv(other.lc)
        b = other.coeffs
        mul, sub = F.mul, F.sub
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            c = mul(c, inv_lc)
            q[i - db] = c
            for j in range(db + 1):
                if b[j]:
                    r[i - db + j] = sub(r[i - db + j], mul(c, b[j]))
        return UniPoly(F, q), UniPoly(F, r[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __call__(self, t: int) -> int:
        return self.field.eval_poly(self.coeffs, t)

    def derivative(self) -> "UniPoly":
        F = self.field
        return UniPoly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn, field: Field | None = None) -> "UniPoly":
        return UniPoly(field or self.field, [fn(c) for c in self.coeffs])

    def powmod(self, e: int, m: "UniPoly") -> "UniPoly":
        r = UniPoly.const(self.field, 1)
        b = self % m
        while e:
            if e & 1:
                r = (r * b) % m
            b = (b * b) % m
            e >>= 1
        return r

    def frobmod(self, times: int, m: "UniPoly") -> "UniPoly":
        """self^(p^times) mod m, by repeated p-th powering."""
        r = self % m
        for _ in range(times):
            r = r.powmod(self.field.p, m)
        return r

    def roots(self) -> list[int]:
        """Distinct roots in the coefficient field, sorted."""
        if self.degree < 1:
            return []
        F = self.field
        X = UniPoly.x(F)
        xq = X.frobmod(F.k, self)
        g = gcd(self, xq - X)
        if g.degree < 1:
            return []
        return sorted(F.neg(f.monic().coeffs[0]) for f in equal_degree(g, 1))


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.const(F, 1), UniPoly(F)
    t0, t1 = UniPoly(F), UniPoly.const(F, 1)
    while r1.coeffs:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.coeffs:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def _pth_root(f: UniPoly) -> UniPoly:
    # f(X) = g(X^p); coefficients are p-th powers since x -> x^p is bijective
    F = f.field
    e = F.order // F.p  # (a^(p^(k-1)))^p = a
    return UniPoly(F, [F.pow(c, e) if F.k > 1 else c for c in f.coeffs[:: F.p]])


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """[(g_i, i)] with f = lc * prod g_i^i, each g_i squarefree and monic."""
    if not f.coeffs:
        raise ValueError("squarefree decomposition of the zero polynomial")
    p = f.field.p
    f = f.monic()
    out: list[tuple[UniPoly, int]] = []
    if f.degree < 1:
        return out
    df = f.derivative()
    if not df.coeffs:
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w, c = y, c // y
    if c.degree > 0:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    merged: dict[int, UniPoly] = {}
    for g, m in out:
        merged[m] = merged[m] * g if m in merged else g
    return sorted(((g, m) for m, g in merged.items()), key=lambda t: t[1])


def distinct_degree(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree."""
    F = f.field
    X = UniPoly.x(F)
    out = []
    h = X
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.frobmod(F.k, f)
        g = gcd(f, h - X)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def equal_degree(f: UniPoly, d: int, rng: random.Random | None = None) -> list[UniPoly]:
    """Cantor-Zassenhaus splitting of squarefree monic f whose factors all have degree d."""
    f = f.monic()
    if f.degree == d:
        return [f]
    if f.degree < d or f.degree % d:
        raise ValueError("degree of f is not a multiple of d")
    F = f.field
    rng = rng or random.Random(0x5EED + f.degree)
    while True:
        a = UniPoly(F, [rng.randrange(F.order) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if F.p == 2:
            # absolute trace of a over F_{q^d}: sum_{i < k d} a^(2^i)
            t = a % f
            acc = t
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((F.order**d - 1) // 2, f) - UniPoly.const(F, 1)
        g = gcd(f, b)
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f // g, d, rng)


def factor_univariate(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs)."""
    if not f.coeffs:
        raise ValueError("cannot factor the zero polynomial")
    mult: dict[UniPoly, int] = {}
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for fac in equal_degree(h, d):
                # a factor of multiplicity a*p + b shows up once for b and once for a*p
                mult[fac] = mult.get(fac, 0) + m
    return sorted(mult.items(), key=lambda t: (t[0].degree, t[0].coeffs))


def is_irreducible(f: UniPoly) -> bool:
    """Rabin-style test: X^(q^n) = X mod f and gcd(X^(q^(n/r)) - X, f) = 1 for primes r | n."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    f = f.monic()
    n = f.degree
    X = UniPoly.x(F)
    if X.frobmod(F.k * n, f) != X % f:
        return False
    r, m = 2, n
    primes = []
    while r * r <= m:
        if m % r == 0:
            primes.append(r)
            while m % r == 0:
                m //= r
        r += 1
    if m > 1:
        primes.append(m)
    for r in primes:
        if gcd(f, X.frobmod(F.k * (n // r), f) - X).degree > 0:
            return False
    return True


def resultant_uni(f: UniPoly, g: UniPoly) -> int:
    """Res(f, g) over a field by the Euclidean recurrence."""
    if not f.coeffs or not g.coeffs:
        raise ValueError("resultant with a zero polynomial")
    F = f.field
    res = 1
    while True:
        m, n = f.degree, g.degree
        if n == 0:
            return F.mul(res, F.pow(g.lc, m))
        r = f % g
        if not r.coeffs:
            return 0
        if (m * n) % 2 and F.p != 2:
            res = F.neg(res)
        res = F.mul(res, F.pow(g.lc, m - r.degree))
        f, g = g, r


def interpolate(field: Field, xs: Sequence[int], ys: Sequence[int]) -> UniPoly:
    """Newton interpolation through (xs[i], ys[i]) with distinct xs."""
    F = field
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = F.div(F.sub(coef[i], coef[i - 1]), F.sub(xs[i], xs[i - j]))
    p = UniPoly.const(F, coef[-1])
    for i in range(n - 2, -1, -1):
        p = p * UniPoly(F, (F.neg(xs[i]), 1)) + UniPoly.const(F, coef[i])
    return p
