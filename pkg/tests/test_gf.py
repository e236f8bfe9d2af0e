from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normcover import gf

import oracles

FIELD_ORDERS = (2, 3, 4, 5, 7, 8, 9, 16, 25, 27)


def test_field_examples():
    F2, F3, F4 = gf.field(2), gf.field(3), gf.field(2, 2)
    assert F2.add(1, 1) == 0
    assert F3.inv(2) == 2
    assert F4.modulus == (1, 1, 1)
    # x * x = x + 1, encoded as 1 + 2 = 3
    assert F4.mul(2, 2) == 3
    assert gf.field(2, 2).base is gf.field(2)
    assert gf.field(2) is gf.field(2, 1) is gf.field_of_order(2)


def test_field_rejects_bad_orders():
    with pytest.raises(ValueError):
        gf.field_of_order(6)
    with pytest.raises(ValueError):
        gf.field(4)


def test_generators():
    assert gf.multiplicative_generator(gf.field(2)) == 1
    assert gf.multiplicative_generator(gf.field(5)) == 2
    assert gf.multiplicative_generator(gf.field(7)) == 3
    for q in FIELD_ORDERS:
        F = gf.field_of_order(q)
        g = gf.multiplicative_generator(F)
        assert F.element_order(g) == q - 1
        assert all(F.element_order(h) < q - 1 for h in range(1, g))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms_exhaustive(q):
    F = gf.field_of_order(q)
    els = range(q)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
        if b:
            assert F.mul(F.div(a, b), b) == a
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1


@settings(max_examples=200)
@given(st.sampled_from(FIELD_ORDERS), st.data())
def test_distributive(q, data):
    F = gf.field_of_order(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_norm_examples():
    F3 = gf.field(3)
    K = gf.extension(F3, 2)
    g = gf.multiplicative_generator(K)
    assert gf.norm(F3, 2, 0) == 0
    assert gf.norm(F3, 2, 1) == 1
    assert gf.norm(F3, 2, g) == 2


@pytest.mark.parametrize("q,d", [(2, 3), (3, 2), (4, 2), (5, 2), (2, 5), (3, 3)])
def test_norm_is_product_of_conjugates(q, d):
    F = gf.field_of_order(q)
    K = gf.extension(F, d)
    for x in range(1, K.order):
        prod, y = 1, x
        for _ in range(d):
            prod = K.mul(prod, y)
            y = K.pow(y, q)
        assert gf.norm(F, d, x) == prod < q


def test_minimal_polynomial_examples():
    F2 = gf.field(2)
    g4 = gf.multiplicative_generator(gf.extension(F2, 2))
    assert gf.minimal_polynomial(F2, 2, g4) == (1, 1, 1)
    g8 = gf.multiplicative_generator(gf.extension(F2, 3))
    assert gf.minimal_polynomial(F2, 3, g8) in ((1, 1, 0, 1), (1, 0, 1, 1))
    assert gf.minimal_polynomial(F2, 3, 1) == (1, 1)


def test_factor_examples():
    F2 = gf.field(2)
    assert gf.factor(F2, (0, 1, 1)) == (((0, 1), 1), ((1, 1), 1))
    assert gf.factor(F2, (1, 1, 0, 1)) == (((1, 1, 0, 1), 1),)
    sq = gf.poly_mul(F2, (1, 1, 1), (1, 1, 1))
    assert gf.factor(F2, sq) == (((1, 1, 1), 2),)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_factorization_of_every_small_poly(p):
    F = gf.field(p)
    for d in range(1, 7 if p == 2 else 5):
        for f in oracles.monics(d, p):
            fac = gf.factor(F, f)
            prod = (1,)
            for g, m in fac:
                assert oracles.irreducible_brute(g, p)
                for _ in range(m):
                    prod = oracles.pmul(prod, g, p)
            assert prod == f
            assert len({g for g, _ in fac}) == len(fac)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_factorization_over_extension_fields(q):
    F = gf.field_of_order(q)
    for d in range(1, 4):
        for f in gf.iter_monic(F, d):
            prod = (1,)
            for g, m in gf.factor(F, f):
                assert gf.is_irreducible(F, g)
                for _ in range(m):
                    prod = gf.poly_mul(F, prod, g)
            assert prod == f


def test_is_irreducible_against_brute_force():
    for p in (2, 3):
        F = gf.field(p)
        for d in range(1, 6 if p == 2 else 4):
            for f in oracles.monics(d, p):
                assert gf.is_irreducible(F, f) == oracles.irreducible_brute(f, p)


def test_irreducible_counts():
    assert gf.count_irreducibles(2, 1) == 2
    assert gf.count_irreducibles(2, 4) == 3
    assert gf.irreducibles(gf.field(2), 1, exclude_x=True) == [(1, 1)]
    for q in (2, 3, 4, 5):
        F = gf.field_of_order(q)
        for d in range(1, 6):
            polys = gf.irreducibles(F, d)
            assert len(polys) == gf.count_irreducibles(q, d)
            assert all(gf.is_irreducible(F, f) for f in polys)


def test_poly_text_round_trip():
    F = gf.field(5)
    for f in [(1,), (0, 1), (3, 0, 4, 1)]:
        assert gf.poly_from_text(F, gf.poly_to_text(f)) == f


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_singer_polynomial_is_primitive_with_norm_zeta(q):
    F = gf.field_of_order(q)
    zeta = gf.multiplicative_generator(F)
    for d in range(1, 6):
        f = gf.singer_polynomial(F, d)
        assert gf.poly_deg(f) == d and gf.is_primitive(F, f)
        assert (f[0] if d % 2 == 0 else F.neg(f[0])) == zeta


def test_singer_polynomial_gf3_degree2():
    assert gf.singer_polynomial(gf.field(3), 2) == (2, 1, 1)
