from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normcover import gf
from normcover import matgroup as mg
from normcover import numtheory as nt
from normcover.matgroup import GroupKind, GroupSpec, Matrix
from normcover.verify import all_invertible, invariant_dims_bruteforce

import oracles

F2, F3, F5 = gf.field(2), gf.field(3), gf.field(5)


def group(n, q, kind="GL"):
    return GroupSpec(n, gf.field_of_order(q), GroupKind.parse(kind))


def test_companion_and_block_det():
    C = mg.companion(F2, (1, 1, 1))
    assert C.det() == 1
    D = mg.block_diag([Matrix(F5, ((2,),)), Matrix(F5, ((3,),))])
    assert D.det() == 1
    assert mg.identity(F3, 2).char_poly() == (1, 1, 1)  # (x - 1)^2 = x^2 + x + 1 mod 3


@pytest.mark.parametrize("p,n", [(2, 3), (3, 3), (5, 2), (2, 4)])
def test_det_and_char_poly_against_leibniz(p, n):
    F = gf.field(p)
    rng = random.Random(p * 10 + n)
    for _ in range(40):
        rows = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
        M = Matrix(F, rows)
        ref = oracles.det_leibniz(rows, lambda a, b: (a + b) % p, lambda a, b: a * b % p, lambda a: -a % p)
        assert M.det() == ref
        assert M.char_poly() == oracles.char_poly_brute(rows, p)


def test_inverse_and_powers():
    rng = random.Random(1)
    G = group(4, 5)
    from normcover.verify import random_element

    for _ in range(10):
        M = random_element(G, rng)
        assert M @ M.inverse() == mg.identity(F5, 4)
        assert M**3 == M @ M @ M
        assert M**-2 == (M.inverse()) ** 2


def test_matrix_text_round_trip():
    M = mg.singer_gamma(3, F3)
    assert Matrix.from_text(F3, M.to_text()) == M


def test_singer_examples():
    G3 = mg.singer_gamma(3, F2)
    assert G3.char_poly() in ((1, 1, 0, 1), (1, 0, 1, 1))
    assert mg.element_order(G3) == 7 and G3.det() == 1
    assert mg.singer_gamma(1, F5).rows == ((2,),)
    S = mg.singer_gamma(2, F3)
    assert S.det() == 2 and S.char_poly() == (2, 1, 1)
    assert mg.element_order(mg.singer_gamma(4, F3)) == 80
    assert mg.element_order(mg.identity(F3, 4)) == 1


def brute_order(M):
    one, X, k = mg.identity(M.field, M.n), M, 1
    while X != one:
        X, k = X @ M, k + 1
    return k


@pytest.mark.parametrize("q,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_singer_order_brute(q, d):
    M = mg.singer_gamma(d, gf.field_of_order(q))
    assert brute_order(M) == q**d - 1 == mg.element_order(M)


def test_alpha_values():
    assert mg.alpha(group(4, 3, "SL")) == 0
    assert mg.alpha(group(4, 3, "GL")) == -1
    assert mg.alpha(group(4, 5, "index:2")) == -2
    assert mg.alpha(group(4, 2, "GL")) == 0
    for q in (2, 3, 4, 5, 7):
        for kind in ("GL", "SL"):
            a = mg.alpha(group(3, q, kind))
            assert 1 - q < a <= 0


def test_intermediate_group_validation():
    with pytest.raises(ValueError):
        group(3, 5, "index:3")
    with pytest.raises(ValueError):
        group(3, 4, "index:3")
    G = group(3, 7, "index:3")
    assert G.order() == mg.gl_order(3, 7) // 3


def test_witness_examples():
    S = mg.sigma_k(group(5, 2, "SL"), 1)
    assert S.det() == 1 and mg.char_shape(S) == ((1, 1), (4, 1))
    G = group(4, 3)
    S = mg.sigma_k(G, 1)
    assert S.det() == F3.inv(G.zeta)
    assert mg.char_shape(S) == ((1, 1), (3, 1))
    SL13 = group(13, 2, "SL")
    assert sorted(d for d, _ in mg.char_shape(mg.t_j(SL13, 1))) == [1, 2, 10]
    assert sorted(d for d, _ in mg.char_shape(mg.t_j(SL13, 2))) == [2, 3, 8]
    G13 = group(13, 3)
    assert mg.t_j(G13, 1).det() == F3.inv(G13.zeta)
    g = mg.g_lambda(group(6, 3, "SL"), (1, 1, 4))
    assert g.det() == 1 and sorted(d for d, _ in mg.char_shape(g)) == [1, 1, 4]
    assert sorted(d for d, _ in mg.char_shape(mg.g_lambda(group(6, 2), (1, 2, 3)))) == [1, 2, 3]


def test_y_element():
    Y = mg.y_10p(group(70, 2, "SL"))
    assert Y.det() == 1
    assert sorted(d for d, _ in mg.char_shape(Y)) == [5, 7, 58]
    with pytest.raises(ValueError):
        mg.y_10p(group(50, 2))


def test_omega_element():
    assert mg.omega_singer(group(3, 2, "SL")) == mg.singer_gamma(3, F2)
    assert mg.omega_singer(group(3, 3, "GL")) == mg.singer_gamma(3, F3)
    G = group(4, 5)
    M = mg.omega_singer(G)
    assert M.det() == F5.pow(G.zeta, mg.alpha(G) % 4)
    assert mg.acts_irreducibly(M)


def test_constructor_preconditions():
    G = group(8, 3)
    with pytest.raises(ValueError):
        mg.sigma_k(G, 5)
    with pytest.raises(ValueError):
        mg.t_j(G, 2)
    with pytest.raises(ValueError):
        mg.g_lambda(G, (2, 2, 4))
    with pytest.raises(ValueError):
        mg.sigma_k(group(4, 2), 2)


def test_invariant_dims_examples():
    assert mg.invariant_dims(((2, 1), (3, 1))) == {0, 2, 3, 5}
    assert mg.invariant_dims(((1, 2), (3, 1))) == {0, 1, 2, 3, 4, 5}


@given(st.lists(st.tuples(st.integers(1, 6), st.integers(1, 3)), min_size=1, max_size=5))
def test_invariant_dims_duality(shape):
    shape = tuple(sorted(shape))
    n = mg.shape_total(shape)
    dims = mg.invariant_dims(shape)
    assert dims == {n - k for k in dims}
    assert {0, n} <= dims


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2)])
def test_invariant_dims_exhaustive(n, q):
    F = gf.field_of_order(q)
    for M in all_invertible(F, n):
        assert invariant_dims_bruteforce(M) == mg.invariant_dims(mg.char_shape(M))


def test_group_kind_json():
    for kind in (mg.GL, mg.SL, GroupKind("intermediate", 2)):
        assert GroupKind.from_json(kind.to_json()) == kind
    with pytest.raises(ValueError):
        GroupKind.from_json({"intermediate_index": 2, "extra": 1})


def test_element_order_large_power_of_two():
    M = mg.singer_gamma(10, F2)
    assert mg.element_order(M) == 2**10 - 1
    assert nt.is_prime(mg.element_order(mg.singer_gamma(7, F2)))
