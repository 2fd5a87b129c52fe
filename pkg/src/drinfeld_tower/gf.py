"""Small finite fields F_{p^k} with compatible default moduli.

Elements are plain ints: the base-p digits of the int are the coefficients
(low to high) of the element as a polynomial in the class of X modulo the
field's defining polynomial.  0 and 1 are always the zero and unit.  Heavy
code works directly on these ints through the ``Field`` methods; ``Element``
is a thin operator-overloading wrapper for interactive use.

The default moduli are Conway polynomials, so for k | n the default F_{p^k}
sits inside the default F_{p^n} via g_k = g_n^((p^n - 1)/(p^k - 1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

# coefficients low -> high, monic
CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (2, 10): (1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1),
    (2, 12): (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1),
    (2, 16): (1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
}

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


class ReducibleModulusError(FieldError):
    def __init__(self, modulus: Sequence[int], factor: Sequence[int]):
        self.modulus = tuple(modulus)
        self.factor = tuple(factor)
        super().__init__(
            f"modulus {_fmt_digits(modulus)} is reducible: divisible by {_fmt_digits(factor)}"
        )


def _fmt_digits(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("X" if i == 1 else f"X^{i}")
        if c != 1 and i:
            mono = f"{c}*{mono}"
        elif c != 1:
            mono = str(c)
        terms.append(mono)
    return " + ".join(terms) or "0"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense digit-list polynomials over F_p (only used while building tables) ---

def _dtrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _dmod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    inv_lc = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    while len(_dtrim(a)) - 1 >= dm:
        c = a[-1] * inv_lc % p
        shift = len(a) - 1 - dm
        for i, v in enumerate(m):
            a[shift + i] = (a[shift + i] - c * v) % p
    return a


def _dmulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] = (out[i + j] + u * v) % p
    return _dmod(out, m, p)


def _monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for n in range(p**d):
        digits = []
        for _ in range(d):
            digits.append(n % p)
            n //= p
        yield digits + [1]


def find_factor(modulus: Sequence[int], p: int) -> list[int] | None:
    """Smallest monic factor of ``modulus`` of degree <= deg/2, by trial division."""
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for cand in _monic_polys(p, d):
            if not _dtrim(_dmod(list(modulus), cand, p)):
                return cand
    return None


class Field:
    """F_{p^k} given by a monic irreducible modulus over F_p."""

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if p**k > MAX_ORDER:
            raise FieldError(f"field of order {p}^{k} exceeds the table limit {MAX_ORDER}")
        factor = find_factor(modulus, p)
        if factor is not None:
            raise ReducibleModulusError(modulus, factor)
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self._build_tables()

    # construction -----------------------------------------------------------

    def _encode(self, digits: Sequence[int]) -> int:
        v = 0
        for c in reversed(digits):
            v = v * self.p + c
        return v

    def coeffs(self, a: int) -> list[int]:
        """Coefficient vector of ``a`` over F_p, low to high, length k."""
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _build_tables(self) -> None:
        p, k, n = self.p, self.k, self.order - 1
        m = self.modulus
        gen = None
        # the class of X first (primitive for Conway moduli), then a search
        start = _dmod([0, 1], m, p)
        candidates = [start] + [self.coeffs(v) for v in range(2, self.order)]
        prime_divs = _prime_factors(n) if n > 1 else []
        for cand in candidates:
            cand = _dtrim(list(cand))
            if not cand:
                continue
            if all(self._dpow(cand, n // r) != [1] for r in prime_divs):
                gen = cand
                break
        if gen is None:  # F_2
            gen = [1]
        self.generator = self._encode(gen)
        exp = [0] * (2 * n if n else 2)
        log = [0] * self.order
        cur = [1]
        for i in range(max(n, 1)):
            v = self._encode(cur + [0] * (k - len(cur)))
            exp[i] = v
            log[v] = i
            cur = _dtrim(_dmulmod(cur, gen, m, p))
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        self._n = max(n, 1)
        self._char2 = p == 2
        if not self._char2:
            self._add = [[self._encode([(u + v) % p for u, v in zip(self.coeffs(a), self.coeffs(b))])
                          for b in range(self.order)] for a in range(self.order)] \
                if self.order <= 729 else None

    def _dpow(self, a: list[int], e: int) -> list[int]:
        r = [1]
        b = list(a)
        while e:
            if e & 1:
                r = _dtrim(_dmulmod(r, b, self.modulus, self.p))
            b = _dtrim(_dmulmod(b, b, self.modulus, self.p))
            e >>= 1
        return r

    # arithmetic on ints -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._char2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        p = self.p
        return self._encode([(u + v) % p for u, v in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a: int) -> int:
        if self._char2:
            return a
        p = self.p
        return self._encode([(-u) % p for u in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        if self._char2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self._n - self._log[a]) % self._n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % self._n]

    def frob(self, a: int, power: int = 1, q: int | None = None) -> int:
        """a^(q^power); q defaults to the characteristic."""
        q = self.p if q is None else q
        if a == 0 or power == 0:
            return a
        return self.pow(a, pow(q, power, self._n) or self._n)

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % self._n]

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F."""
        return n % self.p

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self._n
        order = n
        for r in _prime_factors(n):
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def elements(self) -> range:
        return range(self.order)

    def roots(self, coeffs: Sequence[int]) -> list[int]:
        """All roots (sorted) of sum coeffs[i] X^i, by exhaustive evaluation."""
        return [t for t in range(self.order) if self.eval_poly(coeffs, t) == 0]

    def eval_poly(self, coeffs: Sequence[int], t: int) -> int:
        r = 0
        for c in reversed(coeffs):
            r = self.add(self.mul(r, t), c)
        return r

    def __call__(self, value: int) -> "Element":
        if not 0 <= value < self.order:
            raise FieldError(f"{value} is not an element encoding of {self!r}")
        return Element(self, value)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k, self.modulus))


@dataclass(frozen=True)
class Element:
    field: Field
    value: int

    def _other(self, o: "Element | int") -> int:
        if isinstance(o, Element):
            if o.field is not self.field:
                raise FieldError(f"mixing elements of {self.field!r} and {o.field!r}")
            return o.value
        return self.field.from_int(o)

    def __add__(self, o):
        return Element(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return Element(self.field, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return Element(self.field, self.field.sub(self._other(o), self.value))

    def __neg__(self):
        return Element(self.field, self.field.neg(self.value))

    def __mul__(self, o):
        return Element(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return Element(self.field, self.field.div(self.value, self._other(o)))

    def __pow__(self, e: int):
        return Element(self.field, self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "Element":
        return Element(self.field, self.field.inv(self.value))

    def frobenius(self, power: int = 1, q: int | None = None) -> "Element":
        return frobenius(self, power, q)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


@lru_cache(maxsize=None)
def _make_field(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, k, modulus)


def make_field(p: int, k: int, modulus: Sequence[int] | None = None) -> Field:
    """Field handle for F_{p^k}; the default modulus is the Conway polynomial."""
    if modulus is None:
        if (p, k) not in CONWAY:
            raise FieldError(f"no default modulus for p={p}, k={k}; pass one explicitly")
        modulus = CONWAY[(p, k)]
    return _make_field(p, k, tuple(int(c) % p for c in modulus))


@lru_cache(maxsize=None)
def _root_image(src: Field, dst: Field) -> int:
    if src.k == 1:
        return -1  # prime field: identity on digits
    if src.modulus == CONWAY.get((src.p, src.k)) and dst.modulus == CONWAY.get((dst.p, dst.k)):
        # Conway compatibility: the class of X maps to g^((|dst|-1)/(|src|-1))
        cand = dst.exp((dst.order - 1) // (src.order - 1) * src.log(src.p))
        if dst.eval_poly([dst.from_int(c) for c in src.modulus], cand) == 0:
            return cand
    roots = dst.roots([dst.from_int(c) for c in src.modulus])
    if not roots:
        raise FieldError(f"{src!r} has no embedding into {dst!r}")
    return roots[0]


@lru_cache(maxsize=None)
def _embed_table(src: Field, dst: Field) -> tuple[int, ...]:
    r = _root_image(src, dst)
    if r == -1:
        return tuple(range(src.order))
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], r))
    table = []
    for a in range(src.order):
        v = 0
        for c, pw in zip(src.coeffs(a), powers):
            if c:
                v = dst.add(v, dst.mul(dst.from_int(c), pw))
        table.append(v)
    return tuple(table)


def embedding(src: Field, dst: Field) -> tuple[int, ...]:
    """Table ``t`` with ``t[a]`` the image of ``a`` under the fixed embedding src -> dst."""
    if src.p != dst.p:
        raise FieldError("embedding between fields of different characteristic")
    if dst.k % src.k:
        raise FieldError(f"degree {src.k} does not divide {dst.k}")
    return _embed_table(src, dst)


def embed(src: Field, dst: Field, a: "Element | int") -> "Element | int":
    table = embedding(src, dst)
    if isinstance(a, Element):
        if a.field is not src:
            raise FieldError("element does not belong to the source field")
        return Element(dst, table[a.value])
    return table[a]


def restriction(src: Field, dst: Field) -> dict[int, int]:
    """Inverse of ``embedding(src, dst)`` on its image."""
    return {v: a for a, v in enumerate(embedding(src, dst))}


def frobenius(a: "Element", power: int, q: int | None = None) -> "Element":
    if power < 0:
        raise ValueError("Frobenius power must be >= 0")
    return Element(a.field, a.field.frob(a.value, power, q))


def ring_constants(field: Field | None = None, conjugate: bool = False) -> tuple[int, int]:
    """Images x = i(X), y = i(Y) for A = F_2[X, Y], Y^2 + XY + X^2 = X.

    x is the smallest root of t^2 + t + 1 and y the smallest root of
    t^2 + x t + x^2 + x (ints compared as encoded).  ``conjugate`` picks the
    other y, which is the image of the first under a -> a^4.
    """
    F = field or make_field(2, 4)
    if F.p != 2 or F.k % 4:
        raise FieldError("the constants need a field of characteristic 2 containing F_16")
    x = min(F.roots([1, 1, 1]))
    ys = sorted(F.roots([F.add(F.mul(x, x), x), x, 1]))
    return x, ys[1] if conjugate else ys[0]
