"""Finite fields GF(p^e), extensions GF(q^d) over them, and polynomials.

Field elements are plain ints. In GF(p) they are residues; in an extension of
a field F of order q they encode the coefficient vector over F in base q (the
constant coefficient is the least significant digit). Every extension is
defined by the least monic irreducible polynomial of its degree, least in
the same integer encoding, so all representatives are reproducible.

Polynomials are tuples of field elements, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from . import numtheory as nt

Poly = tuple[int, ...]

MAX_FIELD_ORDER = 2**16
_TABLE_ORDER = 256
_SIEVE_LIMIT = 2**24


class FiniteField:
    """GF(order): either a prime field or ``base[t] / (modulus)``."""

    def __init__(self, p: int, base: FiniteField | None = None, modulus: Poly | None = None):
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.degree = 1
            self.order = p
            self.e = 1
        else:
            assert modulus is not None
            self.degree = len(modulus) - 1
            self.order = base.order**self.degree
            self.e = base.e * self.degree
        self._add_table: list[list[int]] | None = None
        self._mul_table: list[list[int]] | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if self.order <= _TABLE_ORDER:
            self._build_tables()
        elif base is not None and self.order <= MAX_FIELD_ORDER:
            self._build_log_tables()

    @property
    def q(self) -> int:
        return self.order

    @property
    def is_prime(self) -> bool:
        return self.base is None

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        if self.base.is_prime:
            return f"GF({self.p}^{self.e})"
        return f"GF({self.base.order}^{self.degree})"

    def __reduce__(self):
        if self.base is None:
            return (field, (self.p, 1))
        if self.base.is_prime:
            return (field, (self.p, self.e))
        return (extension, (self.base, self.degree))

    # element encoding

    def digits(self, a: int) -> Poly:
        """Coefficients of a over the base field, low to high, length = degree."""
        b = self.base.order  # type: ignore[union-attr]
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, b)
            out.append(r)
        return tuple(out)

    def from_digits(self, ds: Sequence[int]) -> int:
        b = self.base.order  # type: ignore[union-attr]
        a = 0
        for d in reversed(ds):
            a = a * b + d
        return a

    def elements(self) -> range:
        return range(self.order)

    # arithmetic

    def _slow_add(self, a: int, b: int) -> int:
        if self.base is None:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        B = self.base
        return self.from_digits([B.add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.base is None:
            return a * b % self.p
        B = self.base
        prod = poly_mul(B, _trim(self.digits(a)), _trim(self.digits(b)))
        r = poly_mod(B, prod, self.modulus)  # type: ignore[arg-type]
        return self.from_digits(r + (0,) * (self.degree - len(r)))

    def _build_tables(self) -> None:
        q = self.order
        self._add_table = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        self._mul_table = [[self._slow_mul(a, b) for b in range(q)] for a in range(q)]

    def _build_log_tables(self) -> None:
        q = self.order
        g = _find_generator(q, self._slow_mul)
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._slow_mul(exp[i - 1], g)
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp, self._log = exp, log

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self.base is None:
            return -a % self.p
        if self.p == 2:
            return a
        B = self.base
        return self.from_digits([B.neg(x) for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        if self.base is None:
            return a * b % self.p
        if self._exp is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]  # type: ignore[index]
        return self._slow_mul(a, b)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        if self.base is None:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[-self._log[a] % (self.order - 1)]  # type: ignore[index]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        order = self.order - 1
        for r, _ in nt.factorize(order) if order > 1 else ():
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def embed(self, a: int) -> int:
        """Image of a base-field element."""
        return a


def _find_generator(q: int, mul) -> int:
    if q == 2:
        return 1
    primes = nt.factorize(q - 1).primes

    def power(a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = mul(r, a)
            a = mul(a, a)
            k >>= 1
        return r

    for g in range(1, q):
        if all(power(g, (q - 1) // r) != 1 for r in primes):
            return g
    raise ArithmeticError(f"no generator in GF({q})")


def field(p: int, e: int = 1) -> FiniteField:
    """GF(p^e) with the least monic irreducible of degree e as defining polynomial."""
    return _field(p, e)


@lru_cache(maxsize=None)
def _field(p: int, e: int) -> FiniteField:
    if not nt.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if p**e > MAX_FIELD_ORDER:
        raise ValueError(f"field order {p}^{e} exceeds {MAX_FIELD_ORDER}")
    if e == 1:
        return FiniteField(p)
    prime = field(p)
    return FiniteField(p, prime, least_irreducible(prime, e))


def field_of_order(q: int) -> FiniteField:
    if q < 2:
        raise ValueError(f"no field of order {q}")
    f = nt.factorize(q).factors
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, e), = f
    return field(p, e)


@lru_cache(maxsize=None)
def extension(F: FiniteField, d: int) -> FiniteField:
    """GF(q^d) built over F (itself, when d = 1)."""
    if d < 1:
        raise ValueError(f"extension degree must be >= 1, got {d}")
    if d == 1:
        return F
    return FiniteField(F.p, F, least_irreducible(F, d))


@lru_cache(maxsize=None)
def multiplicative_generator(F: FiniteField) -> int:
    """Least element (integer encoding) of multiplicative order q - 1."""
    return _find_generator(F.order, F.mul)


def norm(F: FiniteField, d: int, x: int) -> int:
    """Norm from GF(q^d) = extension(F, d) down to F."""
    K = extension(F, d)
    if x == 0:
        return 0
    y = K.pow(x, (K.order - 1) // (F.order - 1))
    if d > 1 and y >= F.order:
        raise ArithmeticError("norm did not land in the base field")
    return y


def minimal_polynomial(F: FiniteField, d: int, x: int) -> Poly:
    """Minimal polynomial over F of x in extension(F, d)."""
    K = extension(F, d)
    conj = [x]
    y = K.pow(x, F.order)
    while y != x:
        conj.append(y)
        y = K.pow(y, F.order)
    poly: Poly = (1,)
    for c in conj:
        poly = poly_mul(K, poly, (K.neg(c), 1))
    if any(a >= F.order for a in poly):
        raise ArithmeticError("minimal polynomial has coefficients outside the base field")
    return poly


# ---------------------------------------------------------------- polynomials


def _trim(a: Sequence[int]) -> Poly:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def poly_deg(a: Poly) -> int:
    return len(a) - 1


def poly_add(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return _trim(out)


def poly_neg(F: FiniteField, a: Poly) -> Poly:
    return tuple(F.neg(c) for c in a)


def poly_sub(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, poly_neg(F, b))


def poly_scale(F: FiniteField, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F.mul(x, c) for x in a)


def poly_mul(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    add, mul = F.add, F.mul
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = add(out[i + j], mul(x, y))
    return _trim(out)


def poly_divmod(F: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    qt = [0] * (len(a) - db)
    add, mul, neg = F.add, F.mul, F.neg
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = mul(c, lead_inv)
        qt[i - db] = c
        nc = neg(c)
        for j in range(db + 1):
            if b[j]:
                r[i - db + j] = add(r[i - db + j], mul(nc, b[j]))
    return _trim(qt), _trim(r[:db])


def poly_mod(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return poly_divmod(F, a, b)[1]


def poly_monic(F: FiniteField, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return poly_scale(F, a, F.inv(a[-1]))


def poly_gcd(F: FiniteField, a: Poly, b: Poly) -> Poly:
    """Monic gcd."""
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_powmod(F: FiniteField, a: Poly, k: int, m: Poly) -> Poly:
    result: Poly = (1,) if len(m) > 1 else ()
    a = poly_mod(F, a, m)
    while k:
        if k & 1:
            result = poly_mod(F, poly_mul(F, result, a), m)
        k >>= 1
        if k:
            a = poly_mod(F, poly_mul(F, a, a), m)
    return result


def poly_deriv(F: FiniteField, a: Poly) -> Poly:
    return _trim([F.mul(c, i % F.p) if i % F.p else 0 for i, c in enumerate(a)][1:])


def poly_eval(F: FiniteField, a: Poly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_to_int(F: FiniteField, a: Poly) -> int:
    code = 0
    for c in reversed(a):
        code = code * F.order + c
    return code


def poly_from_int(F: FiniteField, code: int) -> Poly:
    out = []
    while code:
        code, r = divmod(code, F.order)
        out.append(r)
    return tuple(out)


def monic_from_code(F: FiniteField, d: int, code: int) -> Poly:
    """The monic degree-d polynomial whose lower coefficients encode to code."""
    out = []
    for _ in range(d):
        code, r = divmod(code, F.order)
        out.append(r)
    return tuple(out) + (1,)


def poly_to_text(a: Poly) -> str:
    return ",".join(str(c) for c in a) if a else "0"


def poly_from_text(F: FiniteField, text: str) -> Poly:
    try:
        coeffs = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad polynomial text {text!r}") from exc
    if any(not 0 <= c < F.order for c in coeffs):
        raise ValueError(f"coefficient out of range for {F!r} in {text!r}")
    return _trim(coeffs)


def poly_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms)


def sort_key(F: FiniteField, a: Poly) -> tuple[int, int]:
    return (len(a), poly_to_int(F, a))


# ----------------------------------------------------------- factorization

X: Poly = (0, 1)


def _frobenius_power(F: FiniteField, f: Poly, k: int) -> Poly:
    """x^(q^k) mod f."""
    h = poly_mod(F, X, f)
    for _ in range(k):
        h = poly_powmod(F, h, F.order, f)
    return h


def is_irreducible(F: FiniteField, f: Poly) -> bool:
    """Rabin's test."""
    n = poly_deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = poly_monic(F, f)
    if f[0] == 0:
        return False
    h = poly_mod(F, X, f)
    powers = [h]
    for _ in range(n):
        h = poly_powmod(F, h, F.order, f)
        powers.append(h)
    if powers[n] != poly_mod(F, X, f):
        return False
    for r in nt.prime_divisors(n):
        g = poly_gcd(F, f, poly_sub(F, powers[n // r], X))
        if len(g) > 1:
            return False
    return True


def _pth_root(F: FiniteField, a: Poly) -> Poly:
    # a(x) = b(x)^p; coefficient-wise inverse Frobenius is c -> c^(p^(e-1))
    k = F.p ** (F.e - 1)
    return tuple(F.pow(a[i], k) for i in range(0, len(a), F.p))


def squarefree_decomposition(F: FiniteField, f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g, m) with f = prod g^m, each g squarefree and the g pairwise coprime."""
    f = poly_monic(F, f)
    out: list[tuple[Poly, int]] = []
    df = poly_deriv(F, f)
    if not df:
        if len(f) == 1:
            return out
        return [(g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root(F, f))]
    c = poly_gcd(F, f, df)
    w = poly_divmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = poly_gcd(F, w, c)
        fac = poly_divmod(F, w, y)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = poly_divmod(F, c, y)[0]
        i += 1
    if len(c) > 1:
        out.extend((g, m * F.p) for g, m in squarefree_decomposition(F, _pth_root(F, c)))
    return out


def distinct_degree(F: FiniteField, f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of equal-degree irreducibles."""
    out = []
    h = poly_mod(F, X, f)
    i = 0
    while 2 * (i + 1) <= poly_deg(f):
        i += 1
        h = poly_powmod(F, h, F.order, f)
        g = poly_gcd(F, f, poly_sub(F, h, X))
        if len(g) > 1:
            out.append((g, i))
            f = poly_divmod(F, f, g)[0]
            h = poly_mod(F, h, f)
    if len(f) > 1:
        out.append((f, poly_deg(f)))
    return out


def _splitter(F: FiniteField, a: Poly, f: Poly, d: int) -> Poly:
    if F.p == 2:
        # absolute trace of GF(q^d) applied to a
        t = a
        acc = a
        for _ in range(F.e * d - 1):
            t = poly_mod(F, poly_mul(F, t, t), f)
            acc = poly_add(F, acc, t)
        return acc
    return poly_sub(F, poly_powmod(F, a, (F.order**d - 1) // 2, f), (1,))


def equal_degree(F: FiniteField, f: Poly, d: int) -> list[Poly]:
    """Split monic squarefree f, all of whose factors have degree d.

    Test polynomials are drawn in increasing integer order, so the search is
    deterministic and exhaustive.
    """
    n = poly_deg(f)
    if n == d:
        return [f]
    for code in range(F.order, F.order**n):
        a = poly_from_int(F, code)
        g = poly_gcd(F, f, _splitter(F, a, f, d))
        if 0 < poly_deg(g) < n:
            h = poly_divmod(F, f, g)[0]
            return equal_degree(F, g, d) + equal_degree(F, h, d)
    raise ArithmeticError(f"no splitting polynomial found for {f}")


@lru_cache(maxsize=65536)
def factor(F: FiniteField, f: Poly) -> tuple[tuple[Poly, int], ...]:
    """Monic irreducible factors with multiplicity, ordered by degree then code."""
    f = _trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    counts: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d):
                counts[irr] = counts.get(irr, 0) + m
    return tuple(sorted(counts.items(), key=lambda item: sort_key(F, item[0])))


# ------------------------------------------------------------- enumeration


def count_irreducibles(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over GF(q) (Gauss's formula)."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    total = sum(nt.moebius(d // e) * q**e for e in nt.divisors(d))
    return total // d


@lru_cache(maxsize=None)
def _irreducible_codes(F: FiniteField, d: int) -> tuple[int, ...]:
    q = F.order
    if d == 1:
        return tuple(range(q))
    if q**d > _SIEVE_LIMIT or q > _TABLE_ORDER:
        return tuple(c for c in range(q**d) if is_irreducible(F, monic_from_code(F, d, c)))
    add = np.array(F._add_table, dtype=np.int64)
    mul = np.array(F._mul_table, dtype=np.int64)
    reducible = np.zeros(q**d, dtype=bool)
    weights = q ** np.arange(d, dtype=np.int64)
    for k in range(1, d // 2 + 1):
        m = d - k
        idx = np.arange(q**m, dtype=np.int64)
        H = np.empty((q**m, m + 1), dtype=np.int64)
        for i in range(m):
            H[:, i] = (idx // q**i) % q
        H[:, m] = 1
        for code in _irreducible_codes(F, k):
            g = monic_from_code(F, k, code)
            P = np.zeros((q**m, d + 1), dtype=np.int64)
            for j, gj in enumerate(g):
                if gj:
                    P[:, j : j + m + 1] = add[P[:, j : j + m + 1], mul[gj, H]]
            reducible[P[:, :d] @ weights] = True
    return tuple(int(c) for c in np.flatnonzero(~reducible))


def irreducibles(F: FiniteField, d: int, exclude_x: bool = False) -> list[Poly]:
    """All monic irreducibles of degree d over F, in increasing integer order."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    polys = [monic_from_code(F, d, c) for c in _irreducible_codes(F, d)]
    if exclude_x and d == 1:
        polys = [f for f in polys if f != X]
    return polys


def iter_monic(F: FiniteField, d: int) -> Iterator[Poly]:
    for code in range(F.order**d):
        yield monic_from_code(F, d, code)


@lru_cache(maxsize=None)
def least_irreducible(F: FiniteField, d: int) -> Poly:
    for f in iter_monic(F, d):
        if is_irreducible(F, f):
            return f
    raise ArithmeticError(f"no irreducible of degree {d} over {F!r}")


def is_primitive(F: FiniteField, f: Poly) -> bool:
    """True iff f is irreducible and x has order q^d - 1 modulo f."""
    d = poly_deg(f)
    if f[0] == 0 or not is_irreducible(F, f):
        return False
    N = F.order**d - 1
    if N == 1:
        return True
    return all(poly_powmod(F, X, N // r, f) != (1,) for r in nt.prime_divisors(N))


@lru_cache(maxsize=None)
def singer_polynomial(F: FiniteField, d: int) -> Poly:
    """Least primitive polynomial of degree d whose roots have norm equal to the generator.

    A root g of f generates GF(q^d)* and its norm is (-1)^d f(0); f is then
    the minimal polynomial of a generator with the prescribed norm.
    """
    zeta = multiplicative_generator(F)
    const = zeta if d % 2 == 0 else F.neg(zeta)
    q = F.order
    for code in range(q ** (d - 1)):
        middle = poly_from_int(F, code)
        f = (const,) + middle + (0,) * (d - 1 - len(middle)) + (1,)
        if is_primitive(F, f):
            return f
    raise ArithmeticError(f"no primitive polynomial of degree {d} with norm {zeta} over {F!r}")
