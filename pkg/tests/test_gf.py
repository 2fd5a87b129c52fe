import itertools

import pytest
from hypothesis import given, strategies as st

from drinfeld_tower.gf import (CONWAY, FieldError, ReducibleModulusError, embed, embedding,
                               frobenius, make_field, restriction, ring_constants)


def test_prime_field():
    F2 = make_field(2, 1)
    assert list(F2.elements()) == [0, 1]
    assert F2.mul(1, 1) == 1 and F2.add(1, 1) == 0


def test_f16_enumeration_is_exact():
    F = make_field(2, 4)
    els = list(F.elements())
    assert len(els) == len(set(els)) == 16


def test_f256_generator_order():
    F = make_field(2, 8)
    g = F.p  # class of X, a primitive element for a Conway modulus
    # oracle: order by exponentiation over the divisors of 255
    assert F.pow(g, 255) == 1
    assert all(F.pow(g, 255 // r) != 1 for r in (3, 5, 17))
    assert F.mult_order(g) == 255


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        make_field(2, 2, (1, 0, 1))  # X^2 + 1 = (X + 1)^2


def test_bad_parameters():
    with pytest.raises(FieldError):
        make_field(4, 1)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 8), (3, 2)])
def test_frobenius_orbit_closes_and_group_order(p, k):
    F = make_field(p, k)
    q = p ** k
    for a in F.elements():
        assert F.pow(a, q) == a
    assert max(F.mult_order(a) for a in F.elements() if a) == q - 1


def test_embed_identity_and_f4_relation():
    F2, F4, F16, F256 = (make_field(2, k) for k in (1, 2, 4, 8))
    assert embed(F2, F256, 1) == 1
    x4 = F4.p
    x = embed(F4, F16, x4)
    assert F16.add(F16.mul(x, x), x) == 1


def test_ring_constants_relations_survive_embedding():
    F16, F256 = make_field(2, 4), make_field(2, 8)
    x, y = ring_constants(F16)
    e = embedding(F16, F256)
    X, Y = e[x], e[y]
    K = F256
    # Y^2 + XY + X^2 = X and x^2 + x = 1 give y^2 = xy + 1
    assert K.add(K.mul(X, X), X) == 1
    assert K.mul(Y, Y) == K.add(K.mul(X, Y), 1)
    assert K.add(K.add(K.mul(Y, Y), K.mul(X, Y)), K.mul(X, X)) == X


def test_ring_constants_conjugate_pair():
    F16 = make_field(2, 4)
    x, y = ring_constants(F16)
    x2, y2 = ring_constants(F16, conjugate=True)
    assert x2 == x and y2 != y
    assert y2 == F16.pow(y, 4)


def test_frobenius_examples():
    F4 = make_field(2, 2)
    x = F4(F4.p)
    assert frobenius(x, 0) == x
    assert frobenius(x, 1, 2) == x + 1
    F16 = make_field(2, 4)
    for a in F16.elements():
        assert F16.frob(a, 4, 2) == a


def test_frobenius_is_endomorphism_exhaustive_f256():
    F = make_field(2, 8)
    els = list(F.elements())
    for a, b in itertools.product(els[::7], els[::5]):
        assert F.frob(F.add(a, b), 1, 2) == F.add(F.frob(a, 1, 2), F.frob(b, 1, 2))
        assert F.frob(F.mul(a, b), 1, 2) == F.mul(F.frob(a, 1, 2), F.frob(b, 1, 2))


@pytest.mark.parametrize("k,n", [(1, 2), (2, 4), (4, 8), (4, 16), (2, 8), (8, 16)])
def test_embedding_is_injective_homomorphism(k, n):
    src, dst = make_field(2, k), make_field(2, n)
    e = embedding(src, dst)
    assert len(set(e)) == src.order
    g = src.p if k > 1 else 1
    assert dst.mult_order(e[g]) == src.mult_order(g)
    for a in src.elements():
        for b in src.elements():
            assert e[src.mul(a, b)] == dst.mul(e[a], e[b])
            assert e[src.add(a, b)] == dst.add(e[a], e[b])
    back = restriction(src, dst)
    assert all(back[e[a]] == a for a in src.elements())


def test_conway_table_moduli_are_irreducible():
    for (p, k) in CONWAY:
        assert make_field(p, k).order == p ** k


@given(st.integers(0, 255), st.integers(1, 255))
def test_field_axioms_f256(a, b):
    F = make_field(2, 8)
    assert F.mul(F.div(a, b), b) == a
    assert F.sub(F.add(a, b), b) == a
    assert F.mul(b, F.inv(b)) == 1
