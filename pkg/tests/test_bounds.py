from __future__ import annotations

import json
import math
from fractions import Fraction

import pytest

from normcover import bounds as bd
from normcover import covering as cv
from normcover import numtheory as nt
from normcover.covering import PreconditionError

import oracles


def test_upper_bound_examples():
    assert [bd.upper_single_prime(n) for n in (9, 8, 6)] == [4, 3, 3]
    assert [bd.upper_two_primes(n) for n in (30, 12, 105)] == [7, 4, 30]
    assert [bd.upper_D(n) for n in (30, 105, 25)] == [15, 46, 12]
    with pytest.raises(PreconditionError):
        bd.upper_two_primes(9)
    with pytest.raises(PreconditionError):
        bd.upper_D(6)


def test_lower_bound_examples():
    assert [bd.lower_phi(n) for n in (30, 12, 10)] == [7, 4, 4]
    assert bd.lower_phi(10) == len(cv.build_PhiPlus(10).members)
    assert bd.lower_psi(105) == 24
    assert bd.lower_psi(385) == 32 + oracles.partial_totient(12, 1, 1155) + oracles.partial_totient(12, 0, 385) + 3
    assert bd.lower_psi(60) == 5 + oracles.partial_totient(12, 1, 180) + 3
    assert bd.lower_pi(105) == 11 and bd.lower_pi(3) == 1
    assert bd.lower_partition(105) == 16
    with pytest.raises(PreconditionError):
        bd.lower_partition(90)
    with pytest.raises(PreconditionError):
        bd.lower_phi(9)


def test_exact_examples():
    assert bd.exact_gamma(9) == 4
    assert bd.exact_gamma(30) == 7
    assert bd.exact_gamma(70) == 16
    assert bd.exact_gamma(12) == 4
    assert [bd.exact_gamma(n) for n in (2, 3, 4)] == [2, 2, 2]
    assert bd.exact_gamma(105) is None
    assert bd.exact_gamma_with_provenance(30) == (7, bd.EXACT_6P)


def test_report_examples():
    assert bd.report(7).exact.value == 4
    r = bd.report(105)
    assert r.interval == (27, 30) and r.exact is None
    assert r.best_lower.provenance == bd.KAPPA_PHI and r.best_upper.provenance == bd.UPPER_CP1P2
    assert bd.report(4).exact.value == 2


def test_report_json_shape():
    data = json.loads(json.dumps(bd.report(105).to_json()))
    assert set(data) == {"n", "exact", "provenance", "kappa_lower", "gamma_lower", "gamma_upper", "interval"}
    assert data["interval"] == [27, 30]
    assert {b["provenance"] for b in data["kappa_lower"]} == {bd.KAPPA_PHI, bd.KAPPA_PSI}


def test_sandwich_and_consistency():
    for n in range(3, 1201):
        r = bd.report(n)
        lo, hi = r.interval
        assert lo > Fraction(n, 12) and lo > Fraction(n) / nt.PI2_LO
        assert 2 * hi <= n + 1 and lo <= hi
        assert r.consistent(), n


def test_odd_primes_exact():
    for n in range(3, 500):
        if oracles.is_prime(n):
            assert bd.report(n).exact.value == (n + 1) // 2


def test_exact_values_agree_with_both_sides():
    for n in range(3, 600):
        primes = [p for p, _ in oracles.trial_factor(n)]
        if len(primes) == 1 and n > 4:
            p = primes[0]
            extra = 1 if cv.is_twice_odd_prime(n) else 0
            assert bd.exact_gamma(n) == cv.size_C_p(n, p) == cv.size_Phi(n) + extra
        elif len(primes) == 2:
            p, q = primes
            side_phi = cv.size_Phi(n) + (1 if cv.is_twice_odd_prime(n) else 0)
            assert bd.exact_gamma(n) == cv.size_C_p1p2(n, p, q) == side_phi


def test_ten_p_uses_the_extra_class():
    # the Phi side falls one short; the extra Y class closes the gap
    for p in (7, 11, 13):
        n = 10 * p
        assert bd.lower_phi(n) + 1 == bd.exact_gamma(n) == bd.upper_two_primes(n)


def test_rejects_small_n():
    with pytest.raises(PreconditionError):
        bd.report(1)
