import random

import pytest
from hypothesis import given, settings, strategies as st

from drinfeld_tower.gf import make_field
from drinfeld_tower.ore import (AffineQPoly, EliminationTrace, NotLinearizedError, SkewPoly,
                                TwistMismatchError, linearized_eliminate, skew_eval, skew_mul)
from drinfeld_tower.polyalg import MultiPoly, poly_ring

F16 = make_field(2, 4)
F256 = make_field(2, 8)

coeffs16 = st.lists(st.integers(0, 15), min_size=0, max_size=4)


def S(cs, F=F16, q=2):
    return SkewPoly(cs, q, field=F)


def test_tau_times_constant():
    for r in F16.elements():
        assert skew_mul(S([0, 1]), S([r])) == S([0, F16.pow(r, 2)])


def test_tau_squared_and_evaluation():
    t2 = skew_mul(S([0, 1]), S([0, 1]))
    assert t2 == S([0, 0, 1])
    for c in range(0, 256, 17):
        assert skew_eval(t2, c, F256) == F256.pow(c, 4)


def test_artin_schreier_kernel():
    f = S([1, 1])  # tau - 1 in characteristic 2
    assert [v for v in F256.elements() if skew_eval(f, v, F256) == 0] == [0, 1]
    for v in (5, 77, 200):
        assert skew_eval(f, v, F256) == F256.sub(F256.pow(v, 2), v)


def test_zero_evaluates_to_zero():
    assert skew_eval(S([]), 123, F256) == 0


def test_twist_mismatch():
    with pytest.raises(TwistMismatchError):
        skew_mul(S([1, 1], q=2), S([1, 1], q=4))


@settings(max_examples=80, deadline=None)
@given(coeffs16, coeffs16, st.integers(0, 255))
def test_composition_law(f, g, v):
    f, g = S(f), S(g)
    assert skew_eval(skew_mul(f, g), v, F256) == skew_eval(f, skew_eval(g, v, F256), F256)


@settings(max_examples=60, deadline=None)
@given(coeffs16, coeffs16, coeffs16)
def test_associative_and_distributive(a, b, c):
    a, b, c = S(a), S(b), S(c)
    assert skew_mul(skew_mul(a, b), c) == skew_mul(a, skew_mul(b, c))
    assert skew_mul(a, b + c) == skew_mul(a, b) + skew_mul(a, c)
    assert skew_mul(a + b, c) == skew_mul(a, c) + skew_mul(b, c)


def test_eliminate_direct_substitution():
    h, al, be = poly_ring(F16, ["h", "al", "be"])
    e1 = AffineQPoly.from_multipoly(h * h + al, "h", 2)
    e2 = AffineQPoly.from_multipoly(h + be, "h", 2)
    assert linearized_eliminate(e1, e2) == al + be * be
    assert linearized_eliminate(e2, e1) == al + be * be


def test_eliminate_identical_relations():
    h, a, b = poly_ring(F16, ["h", "a", "b"])
    p = a * h ** 4 + b * h + a * b
    e = AffineQPoly.from_multipoly(p, "h", 2)
    assert linearized_eliminate(e, e).is_zero()


def test_from_multipoly_rejects_nonlinearized():
    h, a = poly_ring(F16, ["h", "a"])
    with pytest.raises(NotLinearizedError):
        AffineQPoly.from_multipoly(h ** 3 + a, "h", 2)
    p = a * h ** 8 + h ** 2 + a
    assert AffineQPoly.from_multipoly(p, "h", 2).to_multipoly("h") == p


def test_elimination_sound_on_common_solutions():
    rng = random.Random(11)
    for _ in range(50):
        v = rng.randrange(256)
        rels = []
        for _ in range(2):
            L = S([rng.randrange(256) for _ in range(rng.randint(2, 4))], F=F256)
            rels.append(AffineQPoly(L, F256.neg(skew_eval(L, v, F256))))
        assert all(r.evaluate(v, F256) == 0 for r in rels)
        if rels[0].L.is_zero() or rels[1].L.is_zero():
            continue
        assert linearized_eliminate(*rels) == 0


def test_trace_records_first_linear_relation():
    h, a, b = poly_ring(F16, ["h", "a", "b"])
    e1 = AffineQPoly.from_multipoly(h ** 4 + a * h + b, "h", 2)
    e2 = AffineQPoly.from_multipoly(b * h ** 2 + h + a, "h", 2)
    tr = EliminationTrace()
    linearized_eliminate(e1, e2, tr)
    lin = tr.first_linear()
    assert lin is not None and lin.degree == 0


def test_symbolic_evaluation_matches_concrete():
    a, = poly_ring(F16, ["a"])
    f = SkewPoly([a, a * a, a.one()], 2)
    v = MultiPoly.var(F16, ("a",), "a")
    sym = skew_eval(f, v)  # a*a + a^2 * a^2 + a^4
    assert sym == a * a + (a * a) * a ** 2 + a ** 4
