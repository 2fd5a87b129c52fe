"""Rank-2 Drinfeld modules for A = F_2[X, Y] with Y^2 + XY + X^2 = X.

A module is fixed by phi_X = g0 tau^4 + g1 tau^3 + g2 tau^2 + g3 tau + x and
phi_Y = h0 tau^4 + h1 tau^3 + h2 tau^2 + h3 tau + y over an extension of F_16.
The symbolic side builds the commutation system phi_X phi_Y = phi_Y phi_X in
the eight unknowns, normalizes h0 = 1 and g0 in F_4, solves g3, g2, g1 and
eliminates h1 to obtain the curve f(h2, h3) = 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .gf import Element, Field, embedding, make_field, ring_constants
from .ore import (AffineQPoly, EliminationTrace, NotLinearizedError, SkewPoly,
                  linearized_eliminate, skew_mul)
from .polyalg.multi import MultiPoly, interpolated_gcd
from .polyalg.ratfunc import RationalFunction

SYMBOLS = ("g0", "g1", "g2", "g3", "h0", "h1", "h2", "h3")
H_VARS = ("h1", "h2", "h3")
F_VARS = ("h2", "h3")
Q = 2


class DerivationError(RuntimeError):
    """The elimination pipeline produced something that cannot be the curve."""


class DegenerateEmbeddingError(ValueError):
    """A triangular step met a vanishing linear coefficient."""


@dataclass(frozen=True)
class DrinfeldModuleSymbolic:
    """phi_X, phi_Y with MultiPoly coefficients (low to high in tau)."""

    phi_x: SkewPoly
    phi_y: SkewPoly
    x: int
    y: int
    q: int = Q

    @property
    def ring(self) -> MultiPoly:
        return self.phi_x.ops.t

    def subs(self, mapping) -> "DrinfeldModuleSymbolic":
        def sub(phi):
            return SkewPoly([c.subs(mapping) for c in phi.coeffs], phi.q, template=self.ring)
        return DrinfeldModuleSymbolic(sub(self.phi_x), sub(self.phi_y), self.x, self.y, self.q)

    def recast(self, vars: Sequence[str]) -> "DrinfeldModuleSymbolic":
        tpl = self.ring.zero().recast(vars)

        def rc(phi):
            return SkewPoly([c.recast(vars) for c in phi.coeffs], phi.q, template=tpl)
        return DrinfeldModuleSymbolic(rc(self.phi_x), rc(self.phi_y), self.x, self.y, self.q)


def symbolic_module(conjugate: bool = False) -> DrinfeldModuleSymbolic:
    """The generic module with unknown g0..g3, h0..h3 and constants x, y."""
    F = make_field(2, 4)
    x, y = ring_constants(F, conjugate)
    g = {v: MultiPoly.var(F, SYMBOLS, v) for v in SYMBOLS}
    c = MultiPoly.const
    phi_x = SkewPoly([c(F, SYMBOLS, x), g["g3"], g["g2"], g["g1"], g["g0"]], Q)
    phi_y = SkewPoly([c(F, SYMBOLS, y), g["h3"], g["h2"], g["h1"], g["h0"]], Q)
    return DrinfeldModuleSymbolic(phi_x, phi_y, x, y)


def commutation_relations(m: DrinfeldModuleSymbolic) -> list[MultiPoly]:
    """Coefficients of tau^8, ..., tau^1 in phi_X phi_Y - phi_Y phi_X."""
    d = skew_mul(m.phi_x, m.phi_y) - skew_mul(m.phi_y, m.phi_x)
    return [d[i] for i in range(8, 0, -1)]


def relation(m: DrinfeldModuleSymbolic, i: int) -> MultiPoly:
    """The tau^i commutation relation."""
    return commutation_relations(m)[8 - i]


def f4_roots() -> list[int]:
    F = make_field(2, 4)
    return sorted(F.roots([1, 1, 1]))


def normalize(m: DrinfeldModuleSymbolic, g0: int | None = None) -> DrinfeldModuleSymbolic:
    """Set h0 = 1 and g0 to a root of t^2 + t + 1 (default: the smaller int)."""
    g0 = f4_roots()[0] if g0 is None else g0
    F = m.ring.field
    if F.add(F.add(F.mul(g0, g0), g0), 1):
        raise ValueError(f"g0={g0} is not a root of t^2 + t + 1")
    return m.subs({"h0": 1, "g0": g0})


@dataclass
class TriangularSolution:
    """g3, g2, g1 as polynomials in h1, h2, h3 and the module after substitution."""

    g: dict[str, MultiPoly]
    module: DrinfeldModuleSymbolic
    coefficients: dict[str, int]

    def relations(self) -> dict[int, MultiPoly]:
        """tau^i relation (i = 1..8) of the substituted module, in the variables h1, h2, h3."""
        rels = commutation_relations(self.module)
        return {8 - j: r.recast(H_VARS) for j, r in enumerate(rels)}


def solve_triangular(m: DrinfeldModuleSymbolic) -> TriangularSolution:
    """Solve the tau^1, tau^2, tau^3 relations for g3, g2, g1 in turn.

    Each g_{4-i} enters the tau^i relation linearly with coefficient
    y^(q^i) - y once the lower g's are substituted.
    """
    sol: dict[str, MultiPoly] = {}
    coefs: dict[str, int] = {}
    cur = m
    F = m.ring.field
    for i in (1, 2, 3):
        var = f"g{4 - i}"
        rel = relation(cur, i)
        parts = rel.coeffs_in(var)
        if set(parts) - {0, 1} or 1 not in parts or not parts[1].is_constant():
            raise DegenerateEmbeddingError(f"tau^{i} relation is not linear in {var} with constant coefficient")
        a = parts[1].constant_value()
        if not a:
            raise DegenerateEmbeddingError(f"vanishing coefficient of {var} in the tau^{i} relation")
        rest = parts.get(0, rel.zero())
        value = (-rest).scale(F.inv(a))
        sol[var] = value
        coefs[var] = a
        cur = cur.subs({var: value})
    return TriangularSolution(sol, cur, coefs)


@dataclass
class BranchReport:
    """Elimination data for one choice of g0."""

    g0: int
    zero_relations: list[int]
    linearized: list[int]
    nonlinear: list[int]
    linear_relation: tuple[MultiPoly, MultiPoly]
    eliminants: list[MultiPoly]
    factor: MultiPoly


@dataclass
class FDerivation:
    f: MultiPoly
    conjugate: bool
    branches: list[BranchReport] = dc_field(default_factory=list)
    seconds: float = 0.0


def _linear_substitute(P: MultiPoly, b: MultiPoly, c: MultiPoly, var: str) -> MultiPoly:
    """Numerator of P(var = -c/b): sum_k P_k (-c)^k b^(D-k)."""
    parts = P.coeffs_in(var)
    D = max(parts)
    out = P.zero()
    nc = -c
    pw_c: dict[int, MultiPoly] = {}
    pw_b: dict[int, MultiPoly] = {}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = base ** k
        return cache[k]

    for k, Pk in parts.items():
        out = out + Pk * power(pw_c, nc, k) * power(pw_b, b, D - k)
    return out


def _branch(m: DrinfeldModuleSymbolic, g0: int, ext: Field, seed: int) -> BranchReport:
    tri = solve_triangular(normalize(m, g0))
    rels = tri.relations()
    zero, lin, nonlin = [], [], []
    affine: dict[int, AffineQPoly] = {}
    for i in range(4, 9):
        r = rels[i]
        if not r:
            zero.append(i)
            continue
        try:
            affine[i] = AffineQPoly.from_multipoly(r, "h1", m.q)
            lin.append(i)
        except NotLinearizedError:
            nonlin.append(i)
    for i in (1, 2, 3):
        if rels[i]:
            raise DerivationError(f"tau^{i} relation does not vanish after the triangular solve")
    if len(lin) < 2:
        raise DerivationError(f"need two q-linearized relations, found {lin}")
    # lowest tau-degree pair first, each further relation against the first
    eliminants = []
    linear = None
    for j in lin[1:]:
        trace = EliminationTrace()
        e = linearized_eliminate(affine[lin[0]], affine[j], trace)
        if not e or e.is_constant():
            raise DerivationError(f"elimination of tau^{lin[0]}, tau^{j} gave a constant")
        eliminants.append(e.recast(F_VARS))
        if linear is None:
            first = trace.first_linear()
            if first is not None:
                linear = (first.L[0], first.k)
    if linear is None:
        raise DerivationError("no relation linear in h1 appeared during elimination")
    b, c = linear
    for i in nonlin:
        e = _linear_substitute(rels[i], b, c, "h1")
        if e.involves("h1"):
            raise DerivationError(f"h1 survived substitution in the tau^{i} relation")
        eliminants.append(e.recast(F_VARS))
    g = eliminants[0]
    for e in eliminants[1:]:
        g = interpolated_gcd(g, e, "h2", "h3", ext, seed=seed)
    if g.is_constant():
        raise DerivationError(f"g0={g0}: eliminants have no common factor")
    return BranchReport(g0, zero, lin, nonlin, (b, c), eliminants, g)


def derive_f_report(conjugate: bool = False, seed: int = 0) -> FDerivation:
    """Run the full pipeline for both roots g0 of t^2 + t + 1 and multiply the branches."""
    t0 = time.perf_counter()
    m = symbolic_module(conjugate)
    ext = make_field(2, 16)
    branches = [_branch(m, g0, ext, seed) for g0 in f4_roots()]
    f = branches[0].factor
    for br in branches[1:]:
        f = f * br.factor
    top = (f.degree("h2"), 0)
    if top not in f.terms:
        raise DerivationError("the eliminant has no pure h2 leading term")
    f = f.normalized(top)
    return FDerivation(f, conjugate, branches, time.perf_counter() - t0)


def derive_f(conjugate: bool = False, seed: int = 0) -> MultiPoly:
    """f(h2, h3), normalized so the h2^30 coefficient is 1."""
    return derive_f_report(conjugate, seed).f


def galois_conjugate(poly: MultiPoly) -> MultiPoly:
    """Apply a -> a^4 (the generator of Gal(F_16/F_4)) to every coefficient."""
    F = poly.field
    return poly.map_coeffs(lambda c: F.frob(c, 2))


# concrete modules --------------------------------------------------------------


class DrinfeldModuleConcrete:
    """phi_X, phi_Y with coefficients in an extension K of F_16 (ints of K)."""

    def __init__(self, field: Field, gx: Sequence[int], hy: Sequence[int],
                 conjugate: bool = False, check: bool = True):
        """``gx`` = (g0, g1, g2, g3), ``hy`` = (h0, h1, h2, h3), values in ``field``."""
        K = field
        F16 = make_field(2, 4)
        x, y = ring_constants(F16, conjugate)
        e = embedding(F16, K)
        self.field = K
        self.x, self.y = e[x], e[y]
        self.conjugate = conjugate
        self.phi_x = SkewPoly([self.x, gx[3], gx[2], gx[1], gx[0]], Q, field=K)
        self.phi_y = SkewPoly([self.y, hy[3], hy[2], hy[1], hy[0]], Q, field=K)
        if check:
            bad = self.commutation_defect()
            if bad:
                raise ValueError(f"phi_X and phi_Y do not commute (tau-degrees {bad})")

    @property
    def g(self) -> tuple[int, int, int, int]:
        c = self.phi_x
        return (c[4], c[3], c[2], c[1])

    @property
    def h(self) -> tuple[int, int, int, int]:
        c = self.phi_y
        return (c[4], c[3], c[2], c[1])

    def commutation_defect(self) -> list[int]:
        d = skew_mul(self.phi_x, self.phi_y) - skew_mul(self.phi_y, self.phi_x)
        return [i for i, c in enumerate(d.coeffs) if c]

    def relation_defect(self) -> list[int]:
        """tau-degrees where phi_Y^2 + phi_X phi_Y + phi_X^2 - phi_X is nonzero."""
        X, Y = self.phi_x, self.phi_y
        r = skew_mul(Y, Y) + skew_mul(X, Y) + skew_mul(X, X) - X
        return [i for i, c in enumerate(r.coeffs) if c]

    def twist(self, c: int) -> "DrinfeldModuleConcrete":
        """c phi c^-1: coefficient of tau^j becomes c^(1 - q^j) times the old one."""
        K = self.field
        ci = K.inv(c)

        def tw(j, a):
            return K.mul(a, K.mul(c, K.pow(ci, Q ** j)))
        gx = [tw(4 - i, v) for i, v in enumerate(self.g)]
        hy = [tw(4 - i, v) for i, v in enumerate(self.h)]
        return DrinfeldModuleConcrete(K, gx, hy, self.conjugate, check=False)

    def __repr__(self) -> str:
        return f"DrinfeldModuleConcrete(g={self.g}, h={self.h}, over {self.field!r})"


def invariants(h1: int, h2: int, h3: int, g1: int, g2: int, g3: int, field: Field, q: int = Q):
    """(h11, h22, h33, g11, g22, g33) with exponents (q+1)(q^2+1), q^2+1, (q+1)(q^2+1)."""
    e13 = (q + 1) * (q * q + 1)
    e2 = q * q + 1
    K = field
    return (K.pow(h1, e13), K.pow(h2, e2), K.pow(h3, e13),
            K.pow(g1, e13), K.pow(g2, e2), K.pow(g3, e13))


def isogeny_image(a, h2, h3, y=None, field: Field | None = None, q: int = Q):
    """(t2, t3) for the isogeny tau - a:

    t3 = a^-q (y - y^q + a h3),  t2 = a^-q^2 t3 + a^(1-q^2) h2 - a^-q^2 h3^q.

    Concrete mode takes ints of ``field`` (y defaults to the embedded constant);
    symbolic mode takes MultiPoly / RationalFunction values and returns
    RationalFunctions.
    """
    if isinstance(a, (MultiPoly, RationalFunction)):
        def rf(v):
            if isinstance(v, RationalFunction):
                return v
            if isinstance(v, MultiPoly):
                return RationalFunction(v)
            tpl = a.num if isinstance(a, RationalFunction) else a
            return RationalFunction(tpl.constant(v))
        A, H2, H3 = rf(a), rf(h2), rf(h3)
        if A.is_zero():
            raise ZeroDivisionError("isogeny parameter a must be nonzero")
        if y is None:
            y = ring_constants(A.field)[1]
        Yc = rf(y)

        def pw(r, e):
            out = rf(1)
            for _ in range(e):
                out = out * r
            return out
        one = rf(1)
        t3 = (one / pw(A, q)) * (Yc - pw(Yc, q) + A * H3)
        t2 = (one / pw(A, q * q)) * t3 + (A / pw(A, q * q)) * H2 - (one / pw(A, q * q)) * pw(H3, q)
        return t2, t3
    K = field or make_field(2, 4)
    if isinstance(a, Element):
        K, a = a.field, a.value
    if not a:
        raise ZeroDivisionError("isogeny parameter a must be nonzero")
    if y is None:
        F16 = make_field(2, 4)
        y = embedding(F16, K)[ring_constants(F16)[1]]
    aq = K.inv(K.pow(a, q))
    aqq = K.inv(K.pow(a, q * q))
    t3 = K.mul(aq, K.add(K.sub(y, K.pow(y, q)), K.mul(a, h3)))
    t2 = K.sub(K.add(K.mul(aqq, t3), K.mul(K.mul(a, aqq), h2)), K.mul(aqq, K.pow(h3, q)))
    return t2, t3


@dataclass
class IsogenyCheck:
    ok: bool
    generator: str | None = None
    tau_degree: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_isogeny(lam: SkewPoly, phi: DrinfeldModuleConcrete, psi: DrinfeldModuleConcrete) -> IsogenyCheck:
    """Check lam phi_a = psi_a lam for a = X, Y; report the first violated tau-coefficient."""
    if lam.is_zero():
        raise ValueError("an isogeny must be nonzero")
    for name, a, b in (("X", phi.phi_x, psi.phi_x), ("Y", phi.phi_y, psi.phi_y)):
        lhs = skew_mul(lam, a)
        rhs = skew_mul(b, lam)
        if lhs != rhs:
            for i in range(max(len(lhs.coeffs), len(rhs.coeffs))):
                if lhs[i] != rhs[i]:
                    return IsogenyCheck(False, name, i, lhs[i], rhs[i])
    return IsogenyCheck(True)


@lru_cache(maxsize=None)
def _system(conjugate: bool, g0: int):
    m = symbolic_module(conjugate)
    tri = solve_triangular(normalize(m, g0))
    rels = tri.relations()
    aff5 = AffineQPoly.from_multipoly(rels[5], "h1", Q)
    aff7 = AffineQPoly.from_multipoly(rels[7], "h1", Q)
    trace = EliminationTrace()
    linearized_eliminate(aff5, aff7, trace)
    first = trace.first_linear()
    gs = {k: v.recast(H_VARS) for k, v in tri.g.items()}
    return gs, (first.L[0], first.k), rels


def reconstruct_modules(h2: int, h3: int, field: Field, conjugate: bool = False) -> list[DrinfeldModuleConcrete]:
    """Concrete modules (h0 = 1, g0 in F_4) with the given h2, h3, over ``field``.

    h1 comes from the linear relation b h1 + c = 0 met during elimination;
    each candidate is kept only if it satisfies every commutation relation.
    """
    K = field
    F16 = make_field(2, 4)
    e = embedding(F16, K)
    out = []
    for g0 in f4_roots():
        gs, (b, c), _ = _system(conjugate, g0)
        pt = {"h2": h2, "h3": h3}
        bv = b.recast(H_VARS).evaluate({**pt, "h1": 0}, K, e)
        if not bv:
            continue
        h1 = K.neg(K.div(c.recast(H_VARS).evaluate({**pt, "h1": 0}, K, e), bv))
        pt["h1"] = h1
        gv = [e[g0]] + [gs[k].evaluate(pt, K, e) for k in ("g1", "g2", "g3")]
        try:
            out.append(DrinfeldModuleConcrete(K, gv, [1, h1, h2, h3], conjugate))
        except ValueError:
            continue
    return out
