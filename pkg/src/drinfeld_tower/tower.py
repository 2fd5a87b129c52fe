"""The explicit tower over F_16 built from the printed modular polynomials.

F_0 = F_16(u_0), F_1 = F_0(u_1) with Phi1(u_0, u_1) = 0, and for k >= 2
F_k = F_{k-1}(u_k) where u_k is a root of the degree-2 factor Q_k of
Phi(u_{k-1}, X) (Phi1 for odd k, Phi2 for even k).  The complementary linear
factor X - rho_k is found by specializing to points over F_{2^16}, fitting a
rational function of (u_{k-2}, u_{k-1}) and verifying the result exactly in
the extension ring.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .arithmetic import IdealFactorization
from .fixtures import load_fixture
from .formulas import SEC6, genus_x0n, hasse_weil, n1_lower_bound
from .gf import Field, embedding, make_field, restriction
from .polyalg.multi import MultiPoly
from .polyalg.ratfunc import DegenerateSpecialization, RationalFunction
from .polyalg.textform import to_text
from .polyalg.towerring import ExtensionTowerRing
from .polyalg.uni import UniPoly, gcd as uni_gcd

F16 = make_field(2, 4)
BIVARS = ("s", "t")  # s = u_{k-2}, t = u_{k-1}


class TowerError(RuntimeError):
    pass


class LinearRootNotFound(TowerError):
    """No linear factor within the ansatz budget (halts the construction at this level)."""


class TowerFactorizationError(TowerError):
    """Phi(u_{k-1}, X) is not divisible by X - rho_k in F_{k-1}[X]."""


class AlternationError(ValueError):
    pass


@dataclass(frozen=True)
class ModularPair:
    phi1: MultiPoly  # in (u, v)
    phi2: MultiPoly  # in (v, w)

    def for_level(self, k: int) -> MultiPoly:
        """Phi1 at odd levels, Phi2 at even levels."""
        if k < 1:
            raise ValueError("levels start at 1")
        return self.phi1 if k % 2 else self.phi2


def load_modular_pair(data_dir=None) -> ModularPair:
    phi1 = load_fixture("phi1.txt", data_dir)
    phi2 = load_fixture("phi2.txt", data_dir)
    for phi in (phi1, phi2):
        a, b = phi.vars
        if phi.degree(a) != 3 or phi.degree(b) != 3:
            raise ValueError(f"modular polynomial in {phi.vars} is not of bidegree (3, 3)")
        top = phi.coeffs_in(b)[3]
        if top.degree(a) != 1 or top.terms.get((1, 0)) != 1:
            raise ValueError(f"unexpected leading coefficient of {b}^3: {to_text(top)}")
    return ModularPair(phi1, phi2)


def _fiber_coeffs(phi: MultiPoly) -> list[UniPoly]:
    """Coefficients a_0..a_3 of Phi(prev, X) in X, each a UniPoly in prev over F_16."""
    prev, new = phi.vars
    parts = phi.coeffs_in(new)
    out = []
    for j in range(phi.degree(new) + 1):
        c = parts.get(j, phi.zero())
        d = c.degree(prev)
        out.append(UniPoly(F16, [c.terms.get((i, 0), 0) for i in range(d + 1)]) if d >= 0 else UniPoly(F16))
    return out


def _uni_at(p: UniPoly, x: int, K: Field, emb) -> int:
    r = 0
    for c in reversed(p.coeffs):
        r = K.add(K.mul(r, x), emb[c])
    return r


def _rename(poly: MultiPoly, names: Sequence[str]) -> MultiPoly:
    return MultiPoly(poly.field, names, poly.terms)


@dataclass
class LevelRecord:
    """Linear root and quadratic factor at level k, plus how they were certified."""

    k: int
    parity: int
    rho_num: MultiPoly  # N(s, t), t-degree <= 2
    rho_den: MultiPoly  # d(s)
    q_coeffs: list[RationalFunction]  # q0, q1, q2 in (s, t); q2 = Phi's X^3 coefficient
    rho_ring: object = None
    q_ring: tuple = ()
    ansatz_degree: int = 0
    samples: int = 0
    verified: bool = False
    irreducible_witness: tuple | None = None
    _fast: tuple = dc_field(default=(), repr=False)

    @property
    def rho(self) -> RationalFunction:
        return RationalFunction(self.rho_num, self.rho_den)

    @property
    def rho_depends_on_t(self) -> bool:
        return self.rho_num.involves("t")

    def names(self) -> tuple[str, str]:
        return (f"u{self.k - 2}", f"u{self.k - 1}")

    def rho_text(self) -> str:
        n = to_text(_rename(self.rho_num, self.names()))
        d = to_text(_rename(self.rho_den, self.names()))
        return n if d == "1" else f"({n}) / ({d})"

    def q_text(self, x: str = "X") -> str:
        parts = []
        for j in (2, 1, 0):
            c = self.q_coeffs[j]
            n = to_text(_rename(c.num, self.names()))
            d = to_text(_rename(c.den, self.names()))
            body = n if d == "1" else f"({n}) / ({d})"
            mono = {2: f"{x}^2", 1: x, 0: ""}[j]
            parts.append(f"({body})*{mono}" if mono else f"({body})")
        return " + ".join(parts)

    def specialize_q(self, s: int, t: int, K: Field, emb) -> UniPoly:
        """Q_k at (u_{k-2}, u_{k-1}) = (s, t).

        Raises DegenerateSpecialization at a pole of rho_k; where the leading
        coefficient vanishes the result simply has lower degree.
        """
        rho = self.rho_value(s, t, K, emb)
        a = [_uni_at(c, t, K, emb) for c in self._fast[1]]
        q2 = a[3]
        q1 = K.add(a[2], K.mul(rho, q2))
        q0 = K.add(a[1], K.mul(rho, q1))
        return UniPoly(K, [q0, q1, q2])

    def rho_value(self, s: int, t: int, K: Field, emb) -> int:
        num_t, den = self._fast[0]
        dv = _uni_at(den, s, K, emb)
        if not dv:
            raise DegenerateSpecialization(f"rho_{self.k} has a pole at u{self.k - 2}={s}")
        r = 0
        tp = 1
        for nj in num_t:
            r = K.add(r, K.mul(_uni_at(nj, s, K, emb), tp))
            tp = K.mul(tp, t)
        return K.div(r, dv)


def _nullspace(K: Field, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : rows * v = 0} over K."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = K.inv(m[r][c])
        m[r] = [K.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = K.neg(m[i][fc])
        basis.append(v)
    return basis


class TowerState:
    """Symbolic tower F_0 ⊂ F_1 ⊂ ... with one LevelRecord per level k >= 2."""

    def __init__(self, pair: ModularPair | None = None, seed: int = 0, order: Sequence[int] | None = None):
        self.pair = pair or load_modular_pair()
        if order is not None:
            for k, which in enumerate(order, start=1):
                want = 1 if k % 2 else 2
                if which != want:
                    raise AlternationError(f"level {k} must use Phi{want}, not Phi{which}")
        self.seed = seed
        self.ext = make_field(2, 16)
        self.ring = ExtensionTowerRing(F16, "u0")
        self.records: dict[int, LevelRecord] = {}
        self._fiber = {1: _fiber_coeffs(self.pair.phi1), 2: _fiber_coeffs(self.pair.phi2)}

    # structure ----------------------------------------------------------------

    def parity(self, k: int) -> int:
        return 1 if k % 2 else 2

    def fiber_coeffs(self, k: int) -> list[UniPoly]:
        return self._fiber[self.parity(k)]

    def fiber_poly(self, k: int, prev: int, K: Field, emb) -> UniPoly:
        """Phi(u_{k-1} = prev, X) over K."""
        return UniPoly(K, [_uni_at(c, prev, K, emb) for c in self.fiber_coeffs(k)])

    def strict_poly(self, k: int, pts: Sequence[int], K: Field, emb) -> UniPoly:
        """Level-k fiber polynomial used by strict counting: Phi1 at level 1, Q_k above."""
        if k == 1:
            return self.fiber_poly(1, pts[0], K, emb)
        return self.records[k].specialize_q(pts[k - 2], pts[k - 1], K, emb)

    def ensure_ring(self, level: int) -> None:
        """Adjoin u_1..u_level to the extension ring."""
        while self.ring.level < level:
            j = self.ring.level + 1
            if j == 1:
                phi = self.pair.phi1
                u0 = self.ring.base.gen()
                prev, new = phi.vars
                parts = phi.coeffs_in(new)
                mp = [self.ring.from_multipoly(parts.get(i, phi.zero()), {prev: u0}, 0) for i in range(4)]
                self.ring.adjoin("u1", mp)
            else:
                rec = self.factor(j)
                self.ring.adjoin(f"u{j}", list(rec.q_ring))

    def factor(self, k: int, max_degree: int = 24) -> LevelRecord:
        """rho_k and Q_k (computed once, cached)."""
        if k < 2:
            raise ValueError("the linear/quadratic split starts at level 2")
        if k not in self.records:
            for j in range(2, k):
                self.factor(j, max_degree)
            rec = find_linear_root(self, k, max_degree=max_degree)
            quadratic_factor(self, rec)
            self.records[k] = rec
        return self.records[k]

    # sampling over F_{2^16} ---------------------------------------------------

    def sample_point(self, depth: int, rng: random.Random) -> list[int] | None:
        """A random point (u_0..u_depth) of level ``depth`` over F_{2^16}, or None."""
        K = self.ext
        emb = embedding(F16, K)
        pts = [rng.randrange(K.order)]
        for j in range(1, depth + 1):
            try:
                poly = self.strict_poly(j, pts, K, emb)
            except DegenerateSpecialization:
                return None
            if poly.degree < 1:
                return None
            roots = poly.roots()
            if not roots:
                return None
            pts.append(rng.choice(roots))
        return pts


def _single_simple_root(poly: UniPoly) -> int | None:
    roots = poly.roots()
    if len(roots) != 1 or poly.degree < 1:
        return None
    if uni_gcd(poly, poly.derivative()).degree > 0:
        return None
    return roots[0]


def find_linear_root(state: TowerState, k: int, phi: MultiPoly | None = None,
                     max_degree: int = 24, seed: int | None = None) -> LevelRecord:
    """Find rho_k with Phi(u_{k-1}, rho_k) = 0 in F_{k-1}, of the form N(s, t)/d(s).

    Points of level k-1 over F_{2^16} whose fiber cubic has a single simple
    root there give values of rho_k.  For D = 1, 2, ... the ansatz
    rho * d(s) = sum_{j<=2} n_j(s) t^j with deg n_j, deg d <= D is solved by
    linear algebra; the first D with a one-dimensional solution space is
    pulled back to F_16 and then verified exactly in the extension ring.
    """
    K = state.ext
    emb = embedding(F16, K)
    back = restriction(F16, K)
    rng = random.Random((state.seed if seed is None else seed) * 1000 + k)
    fiber = _fiber_coeffs(phi) if phi is not None else state.fiber_coeffs(k)
    samples: list[tuple[int, int, int]] = []
    tried = []

    def draw(n):
        attempts = 0
        while len(samples) < n:
            attempts += 1
            if attempts > 200 * n:
                raise LinearRootNotFound(f"level {k}: could not sample enough points ({len(samples)})")
            pts = state.sample_point(k - 1, rng)
            if pts is None:
                continue
            cubic = UniPoly(K, [_uni_at(c, pts[-1], K, emb) for c in fiber])
            if cubic.degree != 3:
                continue
            r = _single_simple_root(cubic)
            if r is None:
                continue
            samples.append((pts[-2], pts[-1], r))

    for D in range(1, max_degree + 1):
        n_unknowns = 4 * (D + 1)
        draw(n_unknowns + 8)
        rows = []
        for s, t, r in samples:
            sp = [1]
            for _ in range(D):
                sp.append(K.mul(sp[-1], s))
            row = [K.mul(r, v) for v in sp]
            tp = 1
            for _ in range(3):
                row += [K.neg(K.mul(v, tp)) for v in sp]
                tp = K.mul(tp, t)
            rows.append(row)
        basis = _nullspace(K, rows, n_unknowns)
        tried.append((D, len(basis)))
        if len(basis) != 1:
            continue
        v = basis[0]
        lead = next(c for c in v if c)
        inv = K.inv(lead)
        v = [K.mul(c, inv) for c in v]
        if any(c not in back for c in v):
            continue
        v = [back[c] for c in v]
        den = MultiPoly(F16, BIVARS, {(a, 0): v[a] for a in range(D + 1)})
        num = MultiPoly(F16, BIVARS, {(a, j): v[(j + 1) * (D + 1) + a]
                                      for j in range(3) for a in range(D + 1)})
        if not den:
            continue
        rec = LevelRecord(k, state.parity(k), num, den, [], ansatz_degree=D, samples=len(samples),
                          irreducible_witness=None)
        rec._fast = ((_num_parts(num), _den_part(den)), fiber)
        if phi is None:
            _verify_linear_root(state, rec)
        else:
            rec.verified = False
        return rec
    raise LinearRootNotFound(f"level {k}: no rational root of degree <= {max_degree} "
                             f"(D, nullspace dimension) = {tried}")


def _num_parts(num: MultiPoly) -> list[UniPoly]:
    parts = num.coeffs_in("t")
    out = []
    for j in range(max(parts, default=0) + 1):
        c = parts.get(j, num.zero())
        d = c.degree("s")
        out.append(UniPoly(F16, [c.terms.get((i, 0), 0) for i in range(d + 1)]) if d >= 0 else UniPoly(F16))
    return out


def _den_part(den: MultiPoly) -> UniPoly:
    d = den.degree("s")
    return UniPoly(F16, [den.terms.get((i, 0), 0) for i in range(d + 1)])


def _verify_linear_root(state: TowerState, rec: LevelRecord) -> None:
    k = rec.k
    state.ensure_ring(k - 1)
    R = state.ring
    s = R.gen(k - 2, k - 1)
    t = R.gen(k - 1, k - 1)
    top = R.ring(k - 1)
    rho = top.mul(R.from_multipoly(rec.rho_num, {"s": s, "t": t}, k - 1),
                  top.inv(R.from_multipoly(rec.rho_den, {"s": s, "t": t}, k - 1)))
    phi = state.pair.for_level(k)
    prev, new = phi.vars
    val = R.from_multipoly(phi, {prev: t, new: rho}, k - 1)
    if not top.is_zero(val):
        raise LinearRootNotFound(f"level {k}: fitted rho fails exact substitution into Phi")
    rec.rho_ring = rho


def quadratic_factor(state: TowerState, rec: LevelRecord) -> LevelRecord:
    """Q_k = Phi(u_{k-1}, X) / (X - rho_k) by synthetic division in F_{k-1}[X], remainder checked."""
    k = rec.k
    R = state.ring
    top = R.ring(k - 1)
    t = R.gen(k - 1, k - 1)
    phi = state.pair.for_level(k)
    prev, new = phi.vars
    parts = phi.coeffs_in(new)
    a = [R.from_multipoly(parts.get(j, phi.zero()).recast(phi.vars), {prev: t, new: t}, k - 1)
         for j in range(4)]
    rho = rec.rho_ring
    q2 = a[3]
    q1 = top.add(a[2], top.mul(rho, q2))
    q0 = top.add(a[1], top.mul(rho, q1))
    rem = top.add(a[0], top.mul(rho, q0))
    if not top.is_zero(rem):
        raise TowerFactorizationError(f"level {k}: nonzero remainder dividing by X - rho_{k}")
    # closed form in (s, t): q2 = a3(t), q1 = a2(t) + rho a3(t), q0 = a1(t) + rho q1
    def at(j):
        c = parts.get(j, phi.zero())
        return RationalFunction(MultiPoly(F16, BIVARS, {(0, m[0]): v for m, v in c.terms.items()}))

    rho_rf = rec.rho
    Q2 = at(3)
    Q1 = at(2) + rho_rf * Q2
    Q0 = at(1) + rho_rf * Q1
    s = R.gen(k - 2, k - 1)
    for rf, ring_val in ((Q0, q0), (Q1, q1), (Q2, q2)):
        n = R.from_multipoly(rf.num, {"s": s, "t": t}, k - 1)
        d = R.from_multipoly(rf.den, {"s": s, "t": t}, k - 1)
        if not top.eq(top.mul(ring_val, d), n):
            raise TowerFactorizationError(f"level {k}: closed form of Q_{k} disagrees with the ring value")
    rec.q_coeffs = [Q0, Q1, Q2]
    rec.q_ring = (q0, q1, q2)
    # uniqueness: rho is a simple root and Q_k has no root in F_{k-1}; a specialization where
    # Q_k has no root at all certifies the latter
    if top.is_zero(top.add(top.add(q0, top.mul(rho, q1)), top.mul(top.mul(rho, rho), q2))):
        raise TowerFactorizationError(f"level {k}: rho_{k} is a multiple root")
    K = state.ext
    emb = embedding(F16, K)
    rng = random.Random(state.seed * 7919 + k)
    for _ in range(200):
        pts = state.sample_point(k - 1, rng)
        if pts is None:
            continue
        try:
            qs = rec.specialize_q(pts[-2], pts[-1], K, emb)
        except DegenerateSpecialization:
            continue
        if not qs.roots():
            rec.irreducible_witness = tuple(pts)
            break
    rec.verified = True
    return rec


# counting over F_256 ---------------------------------------------------------


@dataclass
class CountReport:
    level: int
    mode: str
    count: int
    excluded: int
    degenerate_fibers: int
    genus_pred: int
    n1_lb: int | None
    ratio: Fraction | None

    def to_dict(self) -> dict:
        return {"level": self.level, "mode": self.mode, "count": self.count,
                "excluded": self.excluded, "degenerate_fibers": self.degenerate_fibers,
                "genus_pred": self.genus_pred, "n1_lb": self.n1_lb,
                "ratio": None if self.ratio is None else f"{self.ratio.numerator}/{self.ratio.denominator}"}


def _predictions(k: int) -> tuple[int, int | None]:
    if k == 0:
        return 0, None
    n = IdealFactorization.prime_power(1, k, SEC6.q)
    return genus_x0n(SEC6, n).g_x0n, n1_lower_bound(SEC6, n)


def _roots_job(args):
    coeff_lists, keys, K = args
    emb = embedding(F16, K)
    out = {}
    for key in keys:
        poly = UniPoly(K, [_uni_at(c, key, K, emb) for c in coeff_lists])
        out[key] = (None if not poly else tuple(poly.roots()), poly.degree < len(coeff_lists) - 1)
    return out


def _fiber_roots(state: TowerState, k: int, keys, K: Field, jobs: int) -> dict[int, tuple]:
    """key -> (roots of Phi(u_{k-1} = key, X) in K or None if identically zero, degree dropped?)."""
    coeffs = state.fiber_coeffs(k)
    keys = sorted(set(keys))
    if jobs > 1 and len(keys) > 64:
        chunks = [keys[i::jobs] for i in range(jobs)]
        out: dict = {}
        with ProcessPoolExecutor(jobs) as ex:
            for part in ex.map(_roots_job, [(coeffs, c, K) for c in chunks]):
                out.update(part)
        return out
    return _roots_job((coeffs, keys, K))


def _strict_roots(rec: LevelRecord, s: int, t: int, K: Field, emb) -> tuple:
    """(roots of the specialized Q_k or None if it cannot be formed / vanishes, degree dropped?)."""
    try:
        q = rec.specialize_q(s, t, K, emb)
    except DegenerateSpecialization:
        return None, True
    return (tuple(q.roots()) if q else None), q.degree < 2


def _extend(state: TowerState, k: int, tuples: list[tuple], mode: str, K: Field, emb, jobs: int):
    fib = _fiber_roots(state, k, (t[-1] for t in tuples), K, jobs)
    nxt = []
    excluded = degenerate = 0
    cache: dict[tuple[int, int], tuple] = {}
    for tup in tuples:
        froots, fdeg = fib[tup[-1]]
        if mode == "fiber" or k == 1:
            roots, deg = froots, fdeg
        else:
            key = (tup[-2], tup[-1])
            if key not in cache:
                cache[key] = _strict_roots(state.records[k], key[0], key[1], K, emb)
            roots, deg = cache[key]
            if roots is not None:
                excluded += len(froots or ()) - len(roots)
        if deg or roots is None:
            degenerate += 1
        if roots is None:
            continue
        nxt.extend(tup + (r,) for r in roots)
    return nxt, excluded, degenerate


def points(state: TowerState, level: int, mode: str = "strict", field: Field | None = None,
           jobs: int = 1) -> list[tuple[int, ...]]:
    """The affine tuples (u_0, ..., u_level) counted at ``level``."""
    return _walk(state, level, mode, field, jobs)[0]


def _walk(state, max_level, mode, field, jobs):
    if mode not in ("strict", "fiber"):
        raise ValueError("mode must be 'strict' or 'fiber'")
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    K = field or make_field(2, 8)
    emb = embedding(F16, K)
    if mode == "strict":
        for k in range(2, max_level + 1):
            state.factor(k)
    tuples = [(a,) for a in K.elements()]
    stats = [(len(tuples) + 1, 0, 0)]
    for k in range(1, max_level + 1):
        tuples, excluded, degenerate = _extend(state, k, tuples, mode, K, emb, jobs)
        stats.append((len(tuples), excluded, degenerate))
    return tuples, stats


def count_points(state: TowerState, max_level: int, mode: str = "strict",
                 field: Field | None = None, jobs: int = 1) -> list[CountReport]:
    """Affine point counts N_0..N_K of the tower over ``field`` (default F_256).

    Level 0 also counts the place at infinity.  Strict mode extends by the
    roots of Q_k (level >= 2) and fiber mode by all roots of Phi.  A tuple
    whose fiber polynomial loses degree, or cannot be formed at a pole of
    rho_k, is counted in ``degenerate_fibers``; its affine roots are still
    used whenever the polynomial exists and is nonzero.
    """
    _, stats = _walk(state, max_level, mode, field, jobs)
    reports = []
    for k, (n, excluded, degenerate) in enumerate(stats):
        g, lb = _predictions(k)
        reports.append(CountReport(k, mode, n, excluded, degenerate, g, lb, Fraction(n, g) if g else None))
    return reports


def level2_oracle(state: TowerState, field: Field | None = None) -> int:
    """Independent level-2 count by exhaustive search over F_256 triples.

    Pairs (u0, u1) with Phi1 = 0 are found by trying every u1, then every u2
    with Phi2(u1, u2) = 0 is kept unless it is the rho_2 value and a simple
    root.  Pairs where rho_2 has a pole are skipped, the same convention
    strict counting uses.
    """
    K = field or make_field(2, 8)
    emb = embedding(F16, K)
    rec = state.factor(2)
    phi1, phi2 = state.pair.phi1, state.pair.phi2
    a1 = _fiber_coeffs(phi1)
    a2 = _fiber_coeffs(phi2)
    elems = list(K.elements())

    def ev(cs, prev, x):
        r = 0
        xp = 1
        for c in cs:
            r = K.add(r, K.mul(_uni_at(c, prev, K, emb), xp))
            xp = K.mul(xp, x)
        return r

    def vanishes(cs, prev):
        return not any(_uni_at(c, prev, K, emb) for c in cs)

    total = 0
    for u0 in elems:
        if vanishes(a1, u0):
            continue
        for u1 in elems:
            if ev(a1, u0, u1) or vanishes(a2, u1):
                continue
            try:
                rho = rec.rho_value(u0, u1, K, emb)
            except DegenerateSpecialization:
                continue
            for u2 in elems:
                if ev(a2, u1, u2):
                    continue
                if u2 == rho:
                    # rho is also a root of Q_2 iff Phi2'(rho) = 0; in characteristic 2
                    # only the odd-degree terms survive differentiation
                    der = 0
                    xp = 1
                    for j in range(1, 4):
                        if j % 2:
                            der = K.add(der, K.mul(_uni_at(a2[j], u1, K, emb), xp))
                        xp = K.mul(xp, u2)
                    if der:
                        continue
                total += 1
    return total


@dataclass
class RatioTableRow:
    k: int
    N: int
    g: int
    ratio: Fraction | None
    n1_lb: int | None
    hasse_weil: int


def ratio_table(reports: Sequence[CountReport], q_field: int = 256) -> list[RatioTableRow]:
    rows = []
    for r in reports:
        if r.level == 0:
            continue
        rows.append(RatioTableRow(r.level, r.count, r.genus_pred, r.ratio, r.n1_lb,
                                  hasse_weil(q_field, r.genus_pred)))
    return rows


@dataclass
class StabilizationReport:
    pairs: list[tuple[int, int, bool, bool]]  # (k, k+2, rho equal, Q equal)
    rho_two_variable: dict[int, bool]

    @property
    def stable(self) -> bool:
        return all(a and b for _, _, a, b in self.pairs)


def stabilization_report(state: TowerState, max_level: int) -> StabilizationReport:
    """Do rho_k and Q_k, written in (u_{k-2}, u_{k-1}), repeat with period 2?"""
    pairs = []
    for k in range(2, max_level - 1):
        a, b = state.factor(k), state.factor(k + 2)
        same_rho = a.rho == b.rho
        same_q = all(x == y for x, y in zip(a.q_coeffs, b.q_coeffs))
        pairs.append((k, k + 2, same_rho, same_q))
    return StabilizationReport(pairs, {k: not state.factor(k).rho_depends_on_t for k in range(2, max_level + 1)})
