"""Sparse multivariate polynomials over a small finite field."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from ..gf import Field
from .uni import UniPoly

Monomial = tuple[int, ...]


class InexactDivisionError(ArithmeticError):
    """Raised when a division that was claimed exact leaves a remainder."""

    def __init__(self, remainder: "MultiPoly", message: str = "division is not exact"):
        self.remainder = remainder
        super().__init__(f"{message}; remainder has {len(remainder.terms)} terms")


def _order_key(m: Monomial) -> tuple:
    # total degree first, then lexicographic in variable order
    return (sum(m), m)


class MultiPoly:
    """Polynomial in ``vars`` over ``field``; ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, vars: Sequence[str], terms: Mapping[Monomial, int] | None = None):
        self.field = field
        self.vars = tuple(vars)
        self.terms: dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}

    # constructors -----------------------------------------------------------

    @classmethod
    def const(cls, field: Field, vars: Sequence[str], c: int) -> "MultiPoly":
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, field: Field, vars: Sequence[str], name: str, power: int = 1) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = power
        return cls(field, vars, {tuple(e): 1})

    def zero(self) -> "MultiPoly":
        return MultiPoly(self.field, self.vars)

    def one(self) -> "MultiPoly":
        return MultiPoly.const(self.field, self.vars, 1)

    def constant(self, c: int) -> "MultiPoly":
        return MultiPoly.const(self.field, self.vars, c)

    def gen(self, name: str) -> "MultiPoly":
        return MultiPoly.var(self.field, self.vars, name)

    # basic protocol ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.field is other.field and self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        from .textform import to_text
        return f"MultiPoly({to_text(self)!r})"

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=_order_key)

    def _check(self, other: "MultiPoly") -> None:
        if other.field is not self.field or other.vars != self.vars:
            raise ValueError(f"incompatible rings: {self.vars} over {self.field!r} vs "
                             f"{other.vars} over {other.field!r}")

    # arithmetic -------------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        F = self.field
        out = dict(self.terms)
        add = F.add
        for m, c in other.terms.items():
            v = add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MultiPoly(F, self.vars, out)

    def __neg__(self) -> "MultiPoly":
        F = self.field
        if F.p == 2:
            return self
        return MultiPoly(F, self.vars, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        F = self.field
        mul, add = F.mul, F.add
        out: dict[Monomial, int] = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        bi = list(b.items())
        for m1, c1 in a.items():
            for m2, c2 in bi:
                m = tuple(i + j for i, j in zip(m1, m2))
                v = add(out.get(m, 0), mul(c1, c2))
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly(F, self.vars, out)

    def scale(self, c: int) -> "MultiPoly":
        F = self.field
        if c == 0:
            return self.zero()
        if c == 1:
            return self
        return MultiPoly(F, self.vars, {m: F.mul(v, c) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: int = 1) -> "MultiPoly":
        F = self.field
        return MultiPoly(F, self.vars, {tuple(i + j for i, j in zip(m, mono)): F.mul(v, c)
                                        for m, v in self.terms.items()})

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        F = self.field
        p = F.p
        # Frobenius shortcut for p-power exponents
        if e and e % p == 0:
            return self.frobenius(1, p) ** (e // p) if e != p else self.frobenius(1, p)
        r = self.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def frobenius(self, power: int = 1, q: int | None = None) -> "MultiPoly":
        """self^(q^power) computed termwise (valid in characteristic p with q a power of p)."""
        F = self.field
        q = F.p if q is None else q
        if q % F.p:
            raise ValueError("Frobenius twist must be a power of the characteristic")
        Q = q**power
        return MultiPoly(F, self.vars, {tuple(i * Q for i in m): F.frob(c, power, q)
                                        for m, c in self.terms.items()})

    # structure --------------------------------------------------------------

    def index(self, var: str) -> int:
        return self.vars.index(var)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(m) for m in self.terms)
        i = self.index(var)
        return max(m[i] for m in self.terms)

    def involves(self, var: str) -> bool:
        i = self.index(var)
        return any(m[i] for m in self.terms)

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """{k: c_k} with self = sum c_k var^k, each c_k free of var."""
        i = self.index(var)
        out: dict[int, dict[Monomial, int]] = {}
        for m, c in self.terms.items():
            k = m[i]
            out.setdefault(k, {})[m[:i] + (0,) + m[i + 1:]] = c
        return {k: MultiPoly(self.field, self.vars, t) for k, t in out.items()}

    def lc_in(self, var: str) -> "MultiPoly":
        return self.coeffs_in(var)[self.degree(var)]

    @staticmethod
    def from_coeffs_in(var_poly: "MultiPoly", var: str, coeffs: Mapping[int, "MultiPoly"]) -> "MultiPoly":
        out = var_poly.zero()
        for k, c in coeffs.items():
            if c:
                e = [0] * len(var_poly.vars)
                e[var_poly.index(var)] = k
                out = out + c.mul_monomial(tuple(e))
        return out

    def subs(self, mapping: Mapping[str, "MultiPoly | int"]) -> "MultiPoly":
        """Substitute polynomials (or field constants) for variables, simultaneously."""
        F = self.field
        out = self.zero()
        idx = {self.index(v): val for v, val in mapping.items()}
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in power_cache:
                val = idx[i]
                if isinstance(val, int):
                    power_cache[key] = self.constant(F.pow(val, k))
                else:
                    power_cache[key] = val ** k
            return power_cache[key]

        grouped: dict[Monomial, dict[Monomial, int]] = {}
        for m, c in self.terms.items():
            key = tuple(m[i] if i in idx else 0 for i in range(len(m)))
            rest = tuple(0 if i in idx else m[i] for i in range(len(m)))
            grouped.setdefault(key, {})[rest] = c
        for key, rest in grouped.items():
            term = MultiPoly(F, self.vars, rest)
            for i, k in enumerate(key):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, int], field: Field | None = None,
                 embed: Sequence[int] | None = None) -> int:
        """Value at a full point; coefficients are mapped through ``embed`` into ``field``."""
        K = field or self.field
        vals = [point[v] for v in self.vars]
        r = 0
        for m, c in self.terms.items():
            t = embed[c] if embed is not None else c
            for v, k in zip(vals, m):
                if k:
                    t = K.mul(t, K.pow(v, k))
                    if not t:
                        break
            r = K.add(r, t)
        return r

    def to_uni(self, var: str, point: Mapping[str, int] | None = None, field: Field | None = None,
               embed: Sequence[int] | None = None) -> UniPoly:
        """Univariate polynomial in ``var`` after specializing every other variable."""
        K = field or self.field
        point = dict(point or {})
        i = self.index(var)
        others = [(j, point[v]) for j, v in enumerate(self.vars) if j != i and v in point]
        out: dict[int, int] = {}
        for m, c in self.terms.items():
            t = embed[c] if embed is not None else c
            for j, v in others:
                if m[j]:
                    t = K.mul(t, K.pow(v, m[j]))
            if any(m[j] for j in range(len(m)) if j != i and self.vars[j] not in point):
                raise ValueError(f"variable left unspecialized in to_uni({var})")
            out[m[i]] = K.add(out.get(m[i], 0), t)
        if not out:
            return UniPoly(K)
        return UniPoly(K, [out.get(k, 0) for k in range(max(out) + 1)])

    def recast(self, vars: Sequence[str]) -> "MultiPoly":
        """Same polynomial in a different variable list (dropped variables must not occur)."""
        vars = tuple(vars)
        pos = []
        for j, v in enumerate(self.vars):
            if v in vars:
                pos.append((j, vars.index(v)))
            elif any(m[j] for m in self.terms):
                raise ValueError(f"variable {v} occurs and cannot be dropped")
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(vars)
            for j, k in pos:
                e[k] = m[j]
            out[tuple(e)] = c
        return MultiPoly(self.field, vars, out)

    def map_coeffs(self, fn) -> "MultiPoly":
        return MultiPoly(self.field, self.vars, {m: fn(c) for m, c in self.terms.items()})

    def normalized(self, mono: Monomial | None = None) -> "MultiPoly":
        """Scale so the coefficient of ``mono`` (default: leading monomial) is 1."""
        if not self.terms:
            return self
        mono = self.leading_monomial() if mono is None else mono
        c = self.terms.get(mono)
        if not c:
            raise ValueError(f"monomial {mono} does not occur")
        return self.scale(self.field.inv(c))


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f / g by leading-term division; raises InexactDivisionError if g does not divide f."""
    f._check(g)
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    F = f.field
    lm = g.leading_monomial()
    inv_lc = F.inv(g.terms[lm])
    rem = dict(f.terms)
    quot: dict[Monomial, int] = {}
    g_items = list(g.terms.items())
    while rem:
        m = max(rem, key=_order_key)
        shift = tuple(i - j for i, j in zip(m, lm))
        if min(shift) < 0:
            raise InexactDivisionError(MultiPoly(F, f.vars, rem))
        c = F.mul(rem[m], inv_lc)
        quot[shift] = c
        for gm, gc in g_items:
            mm = tuple(i + j for i, j in zip(gm, shift))
            v = F.sub(rem.get(mm, 0), F.mul(c, gc))
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return MultiPoly(F, f.vars, quot)


def exact_divide(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Quotient of f by g viewed as polynomials in ``var``; the remainder must vanish.

    The leading coefficient of g in ``var`` has to divide every coefficient met
    along the way; when it is a constant this is ordinary monic division.
    """
    f._check(g)
    dg = g.degree(var)
    if dg < 0:
        raise ZeroDivisionError("division by the zero polynomial")
    gc = g.coeffs_in(var)
    lc = gc[dg]
    F = f.field
    unit = lc.is_constant()
    inv_lc = F.inv(lc.constant_value()) if unit else None
    rem = f.coeffs_in(var)
    quot: dict[int, MultiPoly] = {}
    while rem and max(rem) >= dg:
        top = max(rem)
        c = rem.pop(top)
        try:
            q = c.scale(inv_lc) if unit else divide_exact(c, lc)
        except InexactDivisionError:
            rest = MultiPoly.from_coeffs_in(f, var, {top: c, **rem})
            raise InexactDivisionError(rest, "leading coefficient does not divide") from None
        quot[top - dg] = q
        for k, gk in gc.items():
            if k == dg:
                continue
            kk = top - dg + k
            v = rem.get(kk, f.zero()) - q * gk
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    if rem:
        raise InexactDivisionError(MultiPoly.from_coeffs_in(f, var, rem))
    return MultiPoly.from_coeffs_in(f, var, quot)


def sylvester_matrix(f: MultiPoly, g: MultiPoly, var: str) -> list[list[MultiPoly]]:
    m, n = f.degree(var), g.degree(var)
    fc, gc = f.coeffs_in(var), g.coeffs_in(var)
    zero = f.zero()
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return rows


def bareiss_det(rows: list[list[MultiPoly]]) -> MultiPoly:
    """Determinant by fraction-free elimination (every division is exact)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        raise ValueError("empty matrix")
    sign = False
    prev = a[0][0].one()
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return a[0][0].zero()
            a[k], a[swap] = a[swap], a[k]
            sign = not sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev) if not prev.is_constant() or prev.constant_value() != 1 else num
            a[i][k] = a[i][k].zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign else det


def resultant(f, g, var: str | None = None):
    """Resultant of two polynomials.

    ``UniPoly`` inputs: an element of the coefficient field.  ``MultiPoly``
    inputs: a polynomial free of ``var``, computed from the Sylvester matrix.
    """
    if isinstance(f, UniPoly):
        from .uni import resultant_uni
        return resultant_uni(f, g)
    if var is None:
        raise ValueError("resultant of multivariate polynomials needs the eliminated variable")
    if not f or not g:
        raise ValueError("resultant with a zero polynomial")
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        return f.one()
    if m == 0:
        return f ** n
    if n == 0:
        return g ** m
    return bareiss_det(sylvester_matrix(f, g, var))


def poly_ring(field: Field, vars: Iterable[str]) -> tuple[MultiPoly, ...]:
    """Generators of field[vars], for building expressions by hand."""
    vars = tuple(vars)
    return tuple(MultiPoly.var(field, vars, v) for v in vars)


class GcdReconstructionError(ArithmeticError):
    pass


def interpolated_gcd(f: MultiPoly, g: MultiPoly, main: str, param: str, ext: Field,
                     seed: int = 0, start: int = 16, max_points: int = 1024) -> MultiPoly:
    """gcd of bivariate f, g (monic in ``main``) by evaluation at ``param`` points of ``ext``.

    Assumes the true gcd has a constant leading coefficient in ``main``: the
    univariate gcds are then specializations of the monic bivariate gcd.
    Points where the gcd degree jumps are discarded.  Each candidate is
    interpolated, pulled back to the coefficient field and accepted only
    after exact division of both inputs.
    """
    import random

    from ..gf import embedding, restriction
    from .uni import gcd as uni_gcd, interpolate

    f._check(g)
    if any(f.involves(v) or g.involves(v) for v in f.vars if v not in (main, param)):
        raise ValueError("interpolated_gcd expects bivariate inputs")
    F = f.field
    table = embedding(F, ext)
    back = restriction(F, ext)
    rng = random.Random(seed)
    pts: dict[int, tuple[int, ...]] = {}
    best = None
    n = start
    while n <= max_points:
        while len(pts) < n:
            t = rng.randrange(1, ext.order)
            if t in pts:
                continue
            uf = f.to_uni(main, {param: t}, ext, table)
            ug = g.to_uni(main, {param: t}, ext, table)
            h = uni_gcd(uf, ug)
            d = h.degree
            if best is None or d < best:
                best = d
                pts = {k: v for k, v in pts.items() if len(v) - 1 == d}
            if d == best:
                pts[t] = h.coeffs
        xs = list(pts)
        if best == 0:
            return f.one()
        terms: dict[Monomial, int] = {}
        ok = True
        ip, im = f.index(param), f.index(main)
        for i in range(best + 1):
            poly = interpolate(ext, xs, [pts[t][i] for t in xs])
            for j, c in enumerate(poly.coeffs):
                if not c:
                    continue
                if c not in back:
                    ok = False
                    break
                e = [0] * len(f.vars)
                e[im], e[ip] = i, j
                terms[tuple(e)] = back[c]
            if not ok:
                break
        if ok:
            cand = MultiPoly(F, f.vars, terms)
            try:
                exact_divide(f, cand, main)
                exact_divide(g, cand, main)
                return cand
            except InexactDivisionError:
                pass
        n *= 2
    raise GcdReconstructionError(f"no verified gcd with up to {max_points} evaluation points")
