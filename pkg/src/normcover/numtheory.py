"""Integer kernel: factorization, multiplicative functions, partial totients,
three-part partition counts.

Everything here is exact. Fractions appear where the closed forms divide by
6 or 12; the only comparisons against pi are done with rational brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

# pi to 60 places; PI_LO < pi < PI_HI
_PI_DIGITS = "3.141592653589793238462643383279502884197169399375105820974944"
PI_LO = Fraction(_PI_DIGITS)
PI_HI = PI_LO + Fraction(1, 10**60)
PI2_LO = PI_LO * PI_LO
PI2_HI = PI_HI * PI_HI

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_LIMIT = 10**4


@dataclass(frozen=True)
class FactoredInt:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, which covers every use here."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd and composite; returns a nontrivial divisor
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"no factor found for {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> FactoredInt:
    """Canonical factorization; trial division, then Pollard-Brent for large cofactors."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n!r}")
    out: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    d = 5
    while d * d <= m and d <= _TRIAL_LIMIT:
        for p in (d, d + 2):
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        d += 6
    if m > 1:
        _split(m, out)
    return FactoredInt(n, tuple(sorted(out.items())))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    f = factorize(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def liouville(n: int) -> int:
    return -1 if sum(e for _, e in factorize(n)) % 2 else 1


def nu(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n).factors)


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


def multiplicative_order(a: int, m: int) -> int:
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    order = euler_phi(m)
    for p, _ in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


def partial_totient(k: int, t: int, n: int) -> int:
    """Count x coprime to n with n*t/k < x < n*(t+1)/k (both ends open)."""
    if k < 1 or not 0 <= t < k:
        raise ValueError(f"need 0 <= t < k, got k={k}, t={t}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    lo = n * t // k + 1
    hi = -(-n * (t + 1) // k) - 1
    return sum(1 for x in range(lo, hi + 1) if math.gcd(x, n) == 1)


def phi_6_2_closed_form(n: int) -> int:
    """phi(6,2,n) from phi(n)/6 and the Liouville correction term."""
    if n < 7:
        raise ValueError(f"closed form needs n >= 7, got {n}")
    primes = prime_divisors(n)
    value = Fraction(euler_phi(n), 6)
    if n % 9 == 0 or any(p % 3 == 1 for p in primes):
        correction = Fraction(0)
    elif n % 3 == 0:
        correction = Fraction(liouville(n) * 2 ** len(primes), 12)
    else:
        correction = Fraction(liouville(n) * 2 ** len(primes), 6)
    value -= correction
    if value.denominator != 1:
        raise ArithmeticError(f"closed form for n={n} is not integral: {value}")
    return int(value)


def partial_totient_estimate_check(k: int, n: int) -> bool:
    """True iff |phi(n) - k*phi(k,t,n)| <= (k-1)*2**nu(n) for every t < k."""
    bound = (k - 1) * 2 ** nu(n)
    phi = euler_phi(n)
    return all(abs(phi - k * partial_totient(k, t, n)) <= bound for t in range(k))


def f_three_part_exact(n: int) -> Fraction:
    value = Fraction((n - 1) * (n - 2), 12) + Fraction((n - 1) // 2, 2)
    if n % 3 == 0:
        value += Fraction(1, 3)
    return value


def f_three_part(n: int) -> int:
    """Partitions of n into exactly three positive parts, by the closed formula."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    value = f_three_part_exact(n)
    if value.denominator != 1:
        raise ArithmeticError(f"three-part formula not integral at n={n}: {value}")
    return int(value)


def f_three_part_oracle(n: int) -> int:
    count = 0
    for c in range(1, n // 3 + 1):
        for b in range(c, (n - c) // 2 + 1):
            if n - b - c >= b:
                count += 1
    return count


def g_coprime_three_part(n: int) -> int:
    """Three-part partitions of n with gcd 1, by Moebius inversion of f."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return sum(moebius(d) * f_three_part(n // d) for d in divisors(n))


def enumerate_P(n: int) -> list[tuple[int, int, int]]:
    """All (a, b, c) with a <= b <= c, a + b + c = n, gcd(a, b, c) = 1, sorted."""
    out = []
    for a in range(1, n // 3 + 1):
        for b in range(a, (n - a) // 2 + 1):
            c = n - a - b
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
    return out


def _sqrt_bracket(n: int, digits: int = 30) -> tuple[Fraction, Fraction]:
    scale = 10**digits
    r = math.isqrt(n * scale * scale)
    lo = Fraction(r, scale)
    hi = lo if r * r == n * scale * scale else Fraction(r + 1, scale)
    return lo, hi


def g_lower_bound_check(n: int) -> bool:
    """Decide n^2/(2 pi^2) - (2/3) sqrt(n) < g(n) exactly, via rational brackets."""
    g = g_coprime_three_part(n)
    s_lo, s_hi = _sqrt_bracket(n)
    lhs_hi = Fraction(n * n, 2) / PI2_LO - Fraction(2, 3) * s_lo
    lhs_lo = Fraction(n * n, 2) / PI2_HI - Fraction(2, 3) * s_hi
    if lhs_hi < g:
        return True
    if lhs_lo >= g:
        return False
    raise ArithmeticError(f"pi bracket too coarse to decide n={n}")


def floor_div_pi2(n: int) -> int:
    """floor(n / pi^2), exact."""
    lo = math.floor(Fraction(n) / PI2_HI)
    hi = math.floor(Fraction(n) / PI2_LO)
    if lo != hi:
        raise ArithmeticError(f"pi bracket too coarse for n={n}")
    return lo


def _primes_between(lo: Fraction, hi: Fraction) -> Iterator[int]:
    # primes r with lo < r < hi, increasing
    r = math.floor(lo) + 1
    while r < hi:
        if is_prime(r):
            yield r
        r += 1


def _coprime_to_others(w: int, p: int, primes: tuple[int, ...]) -> bool:
    return all(w % s for s in primes if s != p)


def bertrand_witness(p: int, n: int) -> int:
    """An integer w with (n-2)/4 <= w < n/2 divisible by p and by no other prime of n.

    Also 3 does not divide w when p != 3. The smallest prime r in
    (n/(4p), n/(2p)) is used; if r is another prime divisor of n then
    n = 3pr and w = p*m with m the first of r+1, r+2 not divisible by 3.
    """
    fact = factorize(n)
    primes = fact.primes
    if not is_prime(p) or n % p:
        raise ValueError(f"{p} is not a prime divisor of {n}")
    if len(primes) < 3:
        raise ValueError(f"n={n} needs at least 3 distinct prime divisors")
    for m in (6, 10):
        if n % m == 0 and is_prime(n // m):
            raise ValueError(f"n={n} is {m} times a prime")
    for r in _primes_between(Fraction(n, 4 * p), Fraction(n, 2 * p)):
        if n % r or r == p:
            w = p * r
        else:
            if n != 3 * p * r:
                raise ArithmeticError(f"unexpected structure n={n}, p={p}, r={r}")
            w = next(p * m for m in (r + 1, r + 2) if m % 3)
        if not bertrand_conditions(p, n, w):
            raise ArithmeticError(f"witness {w} for p={p}, n={n} fails its conditions")
        return w
    raise ArithmeticError(f"no prime in ({n}/{4 * p}, {n}/{2 * p}) for p={p}")


def bertrand_conditions(p: int, n: int, w: int) -> bool:
    """The four range/divisibility conditions a witness w_p must meet."""
    primes = prime_divisors(n)
    return (
        4 * w >= n - 2
        and 2 * w < n
        and w % p == 0
        and _coprime_to_others(w, p, primes)
        and (p == 3 or w % 3 != 0)
    )


def primitive_prime_divisor(q: int, d: int) -> int | None:
    """Smallest prime dividing q^d - 1 and no q^e - 1 with e < d."""
    if q < 2 or d < 1:
        raise ValueError(f"need q >= 2 and d >= 1, got q={q}, d={d}")
    m = q**d - 1
    if m == 1:
        return None
    for r, _ in factorize(m):
        if q % r and multiplicative_order(q % r, r) == d:
            return r
    return None
