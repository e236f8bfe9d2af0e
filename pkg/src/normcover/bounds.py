"""Upper and lower bounds for the normal covering number, exact values where known.

Bounds depend only on n, never on q. Every value carries a short provenance
tag naming the construction or argument it came from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import covering as cv
from . import numtheory as nt
from .covering import PreconditionError

# provenance tags
UPPER_CP = "upper:C_p"
UPPER_CP1P2 = "upper:C_p1p2"
UPPER_D = "upper:D"
KAPPA_PHI = "kappa:Phi"
KAPPA_PSI = "kappa:Psi"
GAMMA_PI = "gamma:pi"
GAMMA_PARTITION = "gamma:partition"
GAMMA_JORDAN = "gamma:jordan"
EXACT_SMALL = "exact:small-n"
EXACT_PRIME_POWER = "exact:prime-power"
EXACT_TWO_PRIMES = "exact:two-primes"
EXACT_6P = "exact:6p"
EXACT_10P = "exact:10p"


def _check_n(n: int, least: int = 2) -> None:
    if not isinstance(n, int) or n < least:
        raise PreconditionError(f"n must be an integer >= {least}, got {n!r}")


def upper_single_prime(n: int) -> int:
    """Smallest single-prime covering over the prime divisors of n."""
    _check_n(n)
    return min(cv.size_C_p(n, p) for p in nt.prime_divisors(n))


def upper_two_primes(n: int) -> int:
    _check_n(n)
    primes = nt.prime_divisors(n)
    if len(primes) < 2:
        raise PreconditionError(f"two-prime bound needs at least 2 prime divisors, n={n}")
    return cv.size_C_p1p2(n, primes[0], primes[1])


def upper_D(n: int) -> int:
    _check_n(n)
    return cv.size_D(n)


def lower_phi(n: int) -> int:
    _check_n(n)
    if nt.nu(n) < 2:
        raise PreconditionError(f"needs at least 2 prime divisors, n={n}")
    return nt.euler_phi(n) // 2 + nt.nu(n)


def lower_psi(n: int) -> int:
    _check_n(n)
    return cv.size_Psi(n)


def lower_pi(n: int) -> int:
    """floor(n/pi^2) + 1, the least integer strictly above n/pi^2."""
    _check_n(n, 3)
    return nt.floor_div_pi2(n) + 1


def lower_partition(n: int) -> int:
    _check_n(n)
    if nt.nu(n) < 3 or n < 98:
        raise PreconditionError(f"needs at least 3 prime divisors and n >= 98, n={n}")
    return 1 + math.ceil(Fraction(2 * nt.g_coprime_three_part(n), n))


def _integral(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def exact_gamma_with_provenance(n: int) -> tuple[int, str] | None:
    _check_n(n)
    if n in (2, 3, 4):
        return 2, EXACT_SMALL
    primes = nt.prime_divisors(n)
    if len(primes) == 1:
        p = primes[0]
        return _integral(Fraction(p - 1, p) * Fraction(n, 2) + 1), EXACT_PRIME_POWER
    if len(primes) == 2:
        p, q = primes
        return _integral(Fraction(p - 1, p) * Fraction(q - 1, q) * Fraction(n, 2) + 2), EXACT_TWO_PRIMES
    if n % 6 == 0 and nt.is_prime(n // 6):
        return n // 6 + 2, EXACT_6P
    if n % 10 == 0 and nt.is_prime(n // 10) and n // 10 > 5:
        return 2 * (n // 10) + 2, EXACT_10P
    return None


def exact_gamma(n: int) -> int | None:
    found = exact_gamma_with_provenance(n)
    return found[0] if found else None


@dataclass(frozen=True)
class Bound:
    value: int
    provenance: str

    def to_json(self) -> dict:
        return {"value": self.value, "provenance": self.provenance}


@dataclass
class BoundsReport:
    n: int
    kappa_lower: list[Bound] = field(default_factory=list)
    gamma_lower: list[Bound] = field(default_factory=list)
    gamma_upper: list[Bound] = field(default_factory=list)
    exact: Bound | None = None

    @property
    def best_lower(self) -> Bound:
        if self.exact:
            return self.exact
        return max(self.gamma_lower, key=lambda b: b.value)

    @property
    def best_upper(self) -> Bound:
        if self.exact:
            return self.exact
        return min(self.gamma_upper, key=lambda b: b.value)

    @property
    def interval(self) -> tuple[int, int]:
        return self.best_lower.value, self.best_upper.value

    def consistent(self) -> bool:
        lo = max(b.value for b in self.gamma_lower)
        hi = min(b.value for b in self.gamma_upper)
        if lo > hi:
            return False
        if self.exact and not lo <= self.exact.value <= hi:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "exact": self.exact.value if self.exact else None,
            "provenance": self.exact.provenance if self.exact else None,
            "kappa_lower": [b.to_json() for b in self.kappa_lower],
            "gamma_lower": [b.to_json() for b in self.gamma_lower],
            "gamma_upper": [b.to_json() for b in self.gamma_upper],
            "interval": list(self.interval),
        }

    def render(self) -> str:
        lines = [f"n = {self.n}"]
        if self.exact:
            lines.append(f"exact gamma = {self.exact.value}  [{self.exact.provenance}]")
        for title, items in (
            ("kappa lower", self.kappa_lower),
            ("gamma lower", self.gamma_lower),
            ("gamma upper", self.gamma_upper),
        ):
            for b in items:
                lines.append(f"  {title:<12} {b.value:>8}  {b.provenance}")
        lo, hi = self.interval
        lines.append(f"interval [{lo}, {hi}]")
        return "\n".join(lines)


def _try(fn, n: int) -> int | None:
    try:
        return fn(n)
    except PreconditionError:
        return None


def report(n: int) -> BoundsReport:
    _check_n(n)
    r = BoundsReport(n)
    for fn, tag in ((lower_phi, KAPPA_PHI), (lower_psi, KAPPA_PSI)):
        v = _try(fn, n)
        if v is not None:
            r.kappa_lower.append(Bound(v, tag))
    r.gamma_lower.append(Bound(2, GAMMA_JORDAN))
    for fn, tag in ((lower_pi, GAMMA_PI), (lower_partition, GAMMA_PARTITION)):
        v = _try(fn, n)
        if v is not None:
            r.gamma_lower.append(Bound(v, tag))
    # kappa <= gamma
    r.gamma_lower.extend(r.kappa_lower)
    for fn, tag in ((upper_single_prime, UPPER_CP), (upper_two_primes, UPPER_CP1P2), (upper_D, UPPER_D)):
        v = _try(fn, n)
        if v is not None:
            r.gamma_upper.append(Bound(v, tag))
    found = exact_gamma_with_provenance(n)
    if found:
        r.exact = Bound(*found)
    return r
