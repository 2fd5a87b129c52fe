"""Genus, supersingular-count and rational-point formulas for Drinfeld modular curves.

All arithmetic is exact (``Fraction``); every quantity that must be an integer
is checked to be one before it is returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt
from pathlib import Path
from typing import Sequence

from .arithmetic import IdealFactorization, eps, kappa, phi


class FormulaError(ValueError):
    """A formula produced a non-integral (or negative) value: the inputs are inconsistent."""


class ConsistencyError(RuntimeError):
    """Two independent routes to the same quantity disagree."""


def _as_int(v: Fraction, what: str, nonneg: bool = True) -> int:
    if v.denominator != 1:
        raise FormulaError(f"{what} = {v} is not an integer")
    if nonneg and v < 0:
        raise FormulaError(f"{what} = {v} is negative")
    return int(v)


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class LPolynomial:
    """P(t) with integer coefficients, constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("an L-polynomial has constant term 1")
        if self(1) < 1:
            raise ValueError(f"P(1) = {self(1)} is not a class number")

    def __call__(self, t: int) -> int:
        return sum(c * t ** i for i, c in enumerate(self.coeffs))

    @property
    def genus(self) -> int:
        return (len(self.coeffs) - 1) // 2

    @property
    def class_number(self) -> int:
        return self(1)


@dataclass(frozen=True)
class RingParams:
    """Everything the formulas need about (F, P_inf, A, P)."""

    q: int
    delta: int
    L: LPolynomial
    char_degree: int
    char_order: int
    description: str = ""

    _KEYS = ("q", "delta", "L_poly", "char_degree", "char_order", "description")

    def __post_init__(self):
        if not _is_prime_power(self.q):
            raise ValueError(f"q = {self.q} is not a prime power")
        for name in ("delta", "char_degree", "char_order"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> "RingParams":
        unknown = set(data) - set(cls._KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        missing = {"q", "delta", "L_poly", "char_degree", "char_order"} - set(data)
        if missing:
            raise ValueError(f"missing config keys: {sorted(missing)}")
        for k in ("q", "delta", "char_degree", "char_order"):
            if not isinstance(data[k], int) or isinstance(data[k], bool):
                raise ValueError(f"{k} must be an integer")
        if not isinstance(data["L_poly"], list) or not all(isinstance(c, int) for c in data["L_poly"]):
            raise ValueError("L_poly must be a list of integers")
        return cls(data["q"], data["delta"], LPolynomial(tuple(data["L_poly"])),
                   data["char_degree"], data["char_order"], str(data.get("description", "")))

    @classmethod
    def load(cls, path: str | Path) -> "RingParams":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {"q": self.q, "delta": self.delta, "L_poly": list(self.L.coeffs),
                "char_degree": self.char_degree, "char_order": self.char_order,
                "description": self.description}

    @property
    def d(self) -> int:
        return self.char_degree

    @property
    def e(self) -> int:
        return self.char_order


SEC6 = RingParams(2, 2, LPolynomial((1,)), 4, 1, "A = F_2[X,Y], Y^2+XY+X^2=X; P of degree 4, principal")
ELLIPTIC = RingParams(2, 1, LPolynomial((1, 2, 2)), 1, 5, "F_2(X,Y), Y^2+Y=X^3+X; P of degree 1 and order 5")
POLYNOMIAL = RingParams(2, 1, LPolynomial((1,)), 1, 1, "A = F_2[T]")


def genus_x1(params: RingParams) -> int:
    q, dl, P = params.q, params.delta, params.L
    eta = Fraction(-q * (q - 1) * P(-1), 2) if dl % 2 else Fraction(0)
    g = 1 + (Fraction((q ** dl - 1) * P(q), q - 1) - Fraction(q * (q + 1) * dl * P(1), 2) + eta) / (q * q - 1)
    return _as_int(g, "g(x(1))")


def _genus_xn_exact(params: RingParams, n: IdealFactorization) -> Fraction:
    q, dl, P = params.q, params.delta, params.L
    pen = phi(n) * eps(n)
    return (1 + Fraction((q ** dl - 1) * P(q) * pen * n.norm, (q * q - 1) * (q - 1))
            - Fraction(dl * P(1) * pen, q - 1))


def genus_xn(params: RingParams, n: IdealFactorization) -> int:
    return _as_int(_genus_xn_exact(params, n), "g(x(n))")


@dataclass(frozen=True)
class CuspConstants:
    ram_index: int
    different_exponent: int
    cusp_count_x1: int
    cusp_sum: int


def cusp_constants(params: RingParams, n: IdealFactorization) -> CuspConstants:
    n.require_proper()
    q, dl, P = params.q, params.delta, params.L
    N = n.norm
    per_cusp = Fraction(phi(n) * (2 * N * kappa(n) + 2 ** n.s * (q - 2) * N - 2 * eps(n)), q - 1)
    return CuspConstants((q - 1) * N, q * N - 2, dl * P(1),
                         _as_int(dl * P(1) * per_cusp, "cusp contribution"))


def _elliptic_case(params: RingParams, n: IdealFactorization) -> bool:
    return params.delta % 2 == 1 and all(d % 2 == 0 for d, _ in n.primes)


def elliptic_sum(params: RingParams, n: IdealFactorization) -> int:
    n.require_proper()
    if not _elliptic_case(params, n):
        return 0
    q, P = params.q, params.L
    return _as_int(Fraction(P(-1) * 2 ** n.s * q * n.norm * phi(n), q + 1), "elliptic sum")


@dataclass(frozen=True)
class GenusReport:
    g_xn: int
    g_x0n: int
    eta: Fraction
    eta_case: str
    cusp_sum: int
    elliptic_sum: int
    closed_form: int
    riemann_hurwitz: int
    terms: dict = dc_field(default_factory=dict)


def genus_x0n(params: RingParams, n: IdealFactorization) -> GenusReport:
    """g(x0(n)) by the closed form and, independently, by Riemann-Hurwitz for x(n)/x0(n)."""
    n.require_proper()
    q, dl, P = params.q, params.delta, params.L
    s = n.s
    ell = _elliptic_case(params, n)
    eta = Fraction(-P(-1) * 2 ** (s - 1) * q, q + 1) if ell else Fraction(0)
    main = Fraction((q ** dl - 1) * eps(n) * P(q), (q * q - 1) * (q - 1))
    cusp_term = Fraction(P(1) * dl * (kappa(n) + 2 ** (s - 1) * (q - 2)), q - 1)
    closed = _as_int(1 + main - cusp_term + eta, "g(x0(n)) (closed form)")

    gxn = genus_xn(params, n)
    cc = cusp_constants(params, n)
    es = elliptic_sum(params, n)
    deg_cover = phi(n) * n.norm
    # 2 g(x(n)) - 2 = |H(n)| (2 g0 - 2) + cusp sum + elliptic sum
    rh = _as_int((Fraction(2 * gxn - 2 - cc.cusp_sum - es, deg_cover) + 2) / 2,
                 "g(x0(n)) (Riemann-Hurwitz)")
    if rh != closed:
        raise ConsistencyError(f"closed form gives {closed}, Riemann-Hurwitz gives {rh} for n={n}")
    case = ("delta odd, all prime degrees even: eta = -P(-1) 2^(s-1) q/(q+1)" if ell
            else "eta = 0")
    return GenusReport(gxn, closed, eta, case, cc.cusp_sum, es, closed, rh,
                       {"main": main, "cusp_term": cusp_term, "deg_cover": deg_cover})


@dataclass(frozen=True)
class SupersingularCount:
    h1: int
    h2: int
    N: int
    per_component: int


def _supersingular_base(params: RingParams) -> Fraction:
    q, dl, d, P = params.q, params.delta, params.d, params.L
    return Fraction(P(q) * (q ** dl - 1) * (q ** d - 1), (q * q - 1) * (q - 1))


def supersingular_count(params: RingParams) -> SupersingularCount:
    q, dl, d, P = params.q, params.delta, params.d, params.L
    base = _supersingular_base(params)
    odd = d % 2 == 1 and dl % 2 == 1
    if odd:
        h1 = dl * P(1) * (base - Fraction(P(-1), q + 1))
        h2 = dl * P(1) * P(-1)
    else:
        h1 = dl * P(1) * base
        h2 = 0
    h1i = _as_int(h1, "h1(P)")
    N = h1i + h2
    comps = dl * P(1)
    if N % comps:
        raise FormulaError(f"N(P) = {N} is not divisible by the {comps} components")
    return SupersingularCount(h1i, h2, N, N // comps)


def n1_lower_bound(params: RingParams, n: IdealFactorization) -> int:
    """Lower bound for N_1(x0(n)) over F_P^(2e); n must be prime to P (not checkable here)."""
    n.require_proper()
    q, dl, d, P = params.q, params.delta, params.d, params.L
    v = eps(n) * _supersingular_base(params)
    if d % 2 == 1 and dl % 2 == 1 and all(pd % 2 == 0 for pd, _ in n.primes):
        v += Fraction(P(-1) * 2 ** n.s * q, q + 1)
    return _as_int(v, "N1 lower bound")


@dataclass(frozen=True)
class Limit:
    field_size: int
    limit: int
    is_optimal: bool

    def __iter__(self):
        return iter((self.field_size, self.limit, self.is_optimal))


def asymptotic_limit(params: RingParams) -> Limit:
    q, d, e = params.q, params.d, params.e
    return Limit(q ** (2 * d * e), q ** d - 1, e == 1)


def hasse_weil(q_field: int, g: int) -> int:
    """q + 1 + 2 floor(g sqrt(q)), computed in integers."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return q_field + 1 + 2 * isqrt(g * g * q_field)


def dv_bound(q_field: int) -> float:
    return q_field ** 0.5 - 1


@dataclass(frozen=True)
class RatioRow:
    k: int
    genus: int
    n1_lb: int
    ratio: Fraction | None
    hasse_weil: int


def ratio_rows(params: RingParams, ks: Sequence[int], prime_degree: int = 1) -> list[RatioRow]:
    """n = p^k rows: genus, N1 lower bound, their ratio, and the Hasse-Weil bound."""
    qf = asymptotic_limit(params).field_size
    rows = []
    for k in ks:
        n = IdealFactorization.prime_power(prime_degree, k, params.q)
        g = genus_x0n(params, n).g_x0n
        lb = n1_lower_bound(params, n)
        rows.append(RatioRow(k, g, lb, Fraction(lb, g) if g else None, hasse_weil(qf, g)))
    return rows


# brute-force oracle -------------------------------------------------------------


def ss_oracle(q: int, d: int) -> int:
    """Number of supersingular j-invariants of rank-2 F_q[T]-modules in a degree-d characteristic.

    Works over L = F_{q^(2d)} with phi_T = Delta tau^2 + g tau + iota(T), where
    iota(T) is a root of the first irreducible monic P of degree d.  Modules
    are normalized to g in {0, 1} (one per j = g^(q+1)/Delta); a module is
    supersingular when phi_P has no tau^i terms for i < 2d.
    """
    from .gf import make_field
    from .ore import SkewPoly, skew_mul
    from .polyalg.uni import UniPoly, is_irreducible
    import itertools

    p = next(x for x in range(2, q + 1) if q % x == 0)
    m = 0
    t = q
    while t > 1:
        t //= p
        m += 1
    L_deg = 2 * d * m
    if p ** L_deg > 1 << 16:
        raise ValueError(f"F_{{{q}^{2 * d}}} is beyond desk scale (2^16 elements)")
    Fq = make_field(p, m)
    L = make_field(p, L_deg)
    from .gf import embedding
    emb = embedding(Fq, L)
    P = None
    for tail in itertools.product(range(Fq.order), repeat=d):
        cand = UniPoly(Fq, list(tail) + [1])
        if is_irreducible(cand):
            P = cand
            break
    PL = [emb[c] for c in P.coeffs]
    iota_t = min(L.roots(PL))
    supersingular = set()
    for g in (0, 1):
        for D in range(1, L.order):
            phi_t = SkewPoly([iota_t, g, D], q, field=L)
            acc = SkewPoly([], q, field=L)
            pw = SkewPoly([1], q, field=L)
            for c in PL:
                if c:
                    acc = acc + pw.scale(c)
                pw = skew_mul(pw, phi_t)
            if all(acc[i] == 0 for i in range(2 * d)):
                supersingular.add(L.div(L.pow(g, q + 1), D))
    return len(supersingular)
