"""Matrices over GF(q), the groups SL_n(q) <= G <= GL_n(q), and the witness elements.

Singer elements are companion matrices of primitive polynomials; every
witness element is block diagonal in Singer blocks raised to small powers,
twisted so its determinant is zeta^alpha and it lies in G.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import gf
from . import numtheory as nt
from .gf import FiniteField, Poly

Rows = tuple[tuple[int, ...], ...]
CharShape = tuple[tuple[int, int], ...]

ORDER_LIMIT = 2**63 - 1


@dataclass(frozen=True)
class Matrix:
    field: FiniteField
    rows: Rows

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: Matrix) -> Matrix:
        return Matrix(self.field, mat_mul(self.field, self.rows, other.rows))

    def __pow__(self, k: int) -> Matrix:
        return Matrix(self.field, mat_pow(self.field, self.rows, k))

    def det(self) -> int:
        return det(self.field, self.rows)

    def char_poly(self) -> Poly:
        return char_poly(self.field, self.rows)

    def inverse(self) -> Matrix:
        return Matrix(self.field, inverse(self.field, self.rows))

    def to_text(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, F: FiniteField, text: str) -> Matrix:
        try:
            rows = tuple(tuple(int(x) for x in row.split(",")) for row in text.strip().split(";"))
        except ValueError as exc:
            raise ValueError(f"bad matrix text {text!r}") from exc
        if any(not 0 <= x < F.order for row in rows for x in row):
            raise ValueError(f"entry out of range for {F!r}")
        return cls(F, rows)


def identity(F: FiniteField, n: int) -> Matrix:
    return Matrix(F, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def mat_mul(F: FiniteField, A: Rows, B: Rows) -> Rows:
    add, mul = F.add, F.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            acc = 0
            for a, b in zip(row, col):
                if a and b:
                    acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_pow(F: FiniteField, A: Rows, k: int) -> Rows:
    n = len(A)
    if k < 0:
        A, k = inverse(F, A), -k
    result = identity(F, n).rows
    while k:
        if k & 1:
            result = mat_mul(F, result, A)
        k >>= 1
        if k:
            A = mat_mul(F, A, A)
    return result


def det(F: FiniteField, A: Rows) -> int:
    M = [list(r) for r in A]
    n = len(M)
    result = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = F.neg(result)
        result = F.mul(result, M[c][c])
        inv = F.inv(M[c][c])
        for r in range(c + 1, n):
            if M[r][c]:
                f = F.neg(F.mul(M[r][c], inv))
                M[r] = [F.add(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return result


def inverse(F: FiniteField, A: Rows) -> Rows:
    n = len(A)
    M = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        M[c], M[piv] = M[piv], M[c]
        inv = F.inv(M[c][c])
        M[c] = [F.mul(inv, x) for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = F.neg(M[r][c])
                M[r] = [F.add(x, F.mul(f, y)) for x, y in zip(M[r], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def char_poly(F: FiniteField, A: Rows) -> Poly:
    """Characteristic polynomial det(xI - A) via reduction to Hessenberg form."""
    n = len(A)
    H = [list(r) for r in A]
    add, mul, neg = F.add, F.mul, F.neg
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        tinv = F.inv(H[m][m - 1])
        for i in range(m + 1, n):
            u = mul(H[i][m - 1], tinv)
            if u == 0:
                continue
            nu_ = neg(u)
            H[i] = [add(x, mul(nu_, y)) for x, y in zip(H[i], H[m])]
            for row in H:
                row[m] = add(row[m], mul(u, row[i]))
    polys: list[Poly] = [(1,)]
    for m in range(1, n + 1):
        p = gf.poly_mul(F, (neg(H[m - 1][m - 1]), 1), polys[m - 1])
        t = 1
        for i in range(1, m):
            t = mul(t, H[m - i][m - i - 1])
            c = mul(t, H[m - i - 1][m - 1])
            if c:
                p = gf.poly_sub(F, p, gf.poly_scale(F, polys[m - i - 1], c))
        polys.append(p)
    return polys[n]


def companion(F: FiniteField, f: Poly) -> Matrix:
    """Companion matrix of monic f: ones below the diagonal, last column -f_0..-f_{d-1}."""
    d = gf.poly_deg(f)
    if d < 1 or f[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    if f[0] == 0:
        raise ValueError("companion matrix of a polynomial divisible by x is singular")
    rows = []
    for i in range(d):
        row = [int(j + 1 == i) for j in range(d - 1)] + [F.neg(f[i])]
        rows.append(tuple(row))
    return Matrix(F, tuple(rows))


def multiplication_matrix(F: FiniteField, f: Poly, h: Poly) -> Matrix:
    """Matrix of y -> h*y on F[x]/(f) in the basis 1, x, ..., x^(d-1)."""
    d = gf.poly_deg(f)
    cols = []
    col = gf.poly_mod(F, h, f)
    for _ in range(d):
        cols.append(col + (0,) * (d - len(col)))
        col = gf.poly_mod(F, gf.poly_mul(F, col, gf.X), f)
    return Matrix(F, tuple(zip(*cols)))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ValueError("need at least one block")
    F = blocks[0].field
    n = sum(b.n for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b.rows:
            rows.append((0,) * offset + r + (0,) * (n - offset - b.n))
        offset += b.n
    return Matrix(F, tuple(rows))


def char_shape(M: Matrix) -> CharShape:
    """Sorted (degree, multiplicity) pairs, one per distinct irreducible factor of the char poly."""
    return shape_of_poly(M.field, M.char_poly())


def shape_of_poly(F: FiniteField, f: Poly) -> CharShape:
    return tuple(sorted((gf.poly_deg(g), m) for g, m in gf.factor(F, f)))


def shape_total(shape: CharShape) -> int:
    return sum(d * m for d, m in shape)


def invariant_dims(shape: CharShape) -> frozenset[int]:
    """Degrees of all monic divisors of a characteristic polynomial with this shape."""
    sums = 1
    for d, m in shape:
        acc = sums
        for _ in range(m):
            sums = sums << d
            acc |= sums
        sums = acc
    return frozenset(i for i in range(sums.bit_length()) if sums >> i & 1)


def acts_irreducibly(M: Matrix) -> bool:
    return gf.is_irreducible(M.field, M.char_poly())


def _order_bound(F: FiniteField, shape: CharShape) -> int:
    N = 1
    for d, _ in shape:
        N = math.lcm(N, F.order**d - 1)
    mult = max(m for _, m in shape)
    pk = 1
    while pk < mult:
        pk *= F.p
    return N * pk


def element_order(M: Matrix) -> int:
    """Exact multiplicative order, by reducing a known multiple prime by prime."""
    F = M.field
    if M.det() == 0:
        raise ValueError("singular matrix has no order")
    N = _order_bound(F, char_shape(M))
    if N > ORDER_LIMIT:
        raise OverflowError(f"order bound {N} exceeds {ORDER_LIMIT}")
    one = identity(F, M.n)
    for r, _ in nt.factorize(N) if N > 1 else ():
        while N % r == 0 and M ** (N // r) == one:
            N //= r
    return N


# ----------------------------------------------------------------- groups


@dataclass(frozen=True)
class GroupKind:
    """SL, GL, or the intermediate group of the given index in GL."""

    name: str = "GL"
    index: int = 1

    def __post_init__(self):
        if self.name not in ("SL", "GL", "intermediate"):
            raise ValueError(f"unknown group kind {self.name!r}")
        if self.name == "GL" and self.index != 1:
            raise ValueError("GL has index 1")
        if self.name == "intermediate" and self.index < 2:
            raise ValueError("intermediate index must be >= 2")

    def to_json(self):
        if self.name == "intermediate":
            return {"intermediate_index": self.index}
        return self.name

    @classmethod
    def from_json(cls, data) -> GroupKind:
        if data in ("SL", "GL"):
            return cls(data)
        if isinstance(data, dict) and set(data) == {"intermediate_index"}:
            m = data["intermediate_index"]
            if not isinstance(m, int) or isinstance(m, bool):
                raise ValueError("intermediate_index must be an integer")
            return cls("intermediate", m)
        raise ValueError(f"bad group {data!r}")

    @classmethod
    def parse(cls, text: str) -> GroupKind:
        """'GL', 'SL', or 'index:m'."""
        text = text.strip()
        if text.upper() in ("GL", "SL"):
            return cls(text.upper())
        if text.startswith("index:"):
            return cls("intermediate", int(text[6:]))
        raise ValueError(f"bad group kind {text!r}")

    def __str__(self) -> str:
        return f"index:{self.index}" if self.name == "intermediate" else self.name


GL = GroupKind("GL")
SL = GroupKind("SL")


@dataclass(frozen=True)
class GroupSpec:
    n: int
    field: FiniteField
    kind: GroupKind = GL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        q = self.field.order
        if self.kind.name == "intermediate":
            m = self.kind.index
            if (q - 1) % m or not 1 < m < q - 1:
                raise ValueError(f"no intermediate group of index {m} when q = {q}")

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def is_special(self) -> bool:
        return self.kind.name == "SL" or self.q == 2

    @property
    def index(self) -> int:
        """|GL_n(q) : G|."""
        if self.kind.name == "SL":
            return self.q - 1
        return self.kind.index

    @property
    def zeta(self) -> int:
        return multiplicative_generator_of(self.field)

    def order(self) -> int:
        return gl_order(self.n, self.q) // self.index

    def contains(self, M: Matrix) -> bool:
        d = M.det()
        if d == 0:
            return False
        # G is the preimage of the index-sized subgroup of GF(q)*
        return self.field.pow(d, (self.q - 1) // self.index) == 1


def multiplicative_generator_of(F: FiniteField) -> int:
    return gf.multiplicative_generator(F)


def gl_order(n: int, q: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def alpha(G: GroupSpec) -> int:
    """0 when G = SL_n(q) (including every G when q = 2), else -|GL_n(q):G|."""
    if G.is_special:
        return 0
    return -G.kind.index


# ------------------------------------------------------- witness elements


@lru_cache(maxsize=None)
def singer_gamma(d: int, F: FiniteField) -> Matrix:
    """d x d Singer element with determinant zeta."""
    if d < 1:
        raise ValueError(f"Singer degree must be >= 1, got {d}")
    return companion(F, gf.singer_polynomial(F, d))


@lru_cache(maxsize=None)
def gamma_power(d: int, F: FiniteField, e: int) -> Matrix:
    """Gamma_d ** e, computed as multiplication by x^e in F[x]/(f)."""
    f = gf.singer_polynomial(F, d)
    k = e % (F.order**d - 1)
    return multiplication_matrix(F, f, gf.poly_powmod(F, gf.X, k, f))


def _diag_gammas(G: GroupSpec, parts: Iterable[tuple[int, int]]) -> Matrix:
    return block_diag([gamma_power(d, G.field, e) for d, e in parts])


def sigma_k(G: GroupSpec, k: int) -> Matrix:
    """diag(Gamma_k^(alpha-1), Gamma_(n-k)); k = n/2 is allowed for the extra class when n = 2p."""
    n = G.n
    if not 1 <= k or 2 * k > n:
        raise ValueError(f"sigma needs 1 <= k <= n/2, got k={k}, n={n}")
    a = alpha(G)
    if 2 * k == n:
        F = G.field
        if gamma_power(k, F, a - 1).char_poly() == gamma_power(k, F, 1).char_poly():
            raise ValueError(
                f"sigma_{k} in n={n}, q={G.q}: the two blocks share a characteristic polynomial"
            )
    return _diag_gammas(G, [(k, a - 1), (n - k, 1)])


def t_j(G: GroupSpec, j: int) -> Matrix:
    """diag(Gamma_j^(alpha-2), Gamma_(j+1), Gamma_(n-2j-1)) for 1 <= j < (n-2)/4."""
    n = G.n
    if not 1 <= j or 4 * j >= n - 2:
        raise ValueError(f"T needs 1 <= j < (n-2)/4, got j={j}, n={n}")
    return _diag_gammas(G, [(j, alpha(G) - 2), (j + 1, 1), (n - 2 * j - 1, 1)])


def y_10p(G: GroupSpec) -> Matrix:
    """diag(Gamma_p^(alpha-2), Gamma_5, Gamma_(n-p-5)) for n = 10p, p > 5 prime."""
    n = G.n
    p, r = divmod(n, 10)
    if r or p <= 5 or not nt.is_prime(p):
        raise ValueError(f"Y needs n = 10p with p > 5 prime, got n={n}")
    return _diag_gammas(G, [(p, alpha(G) - 2), (5, 1), (n - p - 5, 1)])


def check_triple(n: int, parts: Sequence[int]) -> tuple[int, int, int]:
    if len(parts) != 3:
        raise ValueError(f"need three parts, got {parts!r}")
    a, b, c = parts
    if not 1 <= a <= b <= c or a + b + c != n:
        raise ValueError(f"parts {parts!r} are not an ordered partition of {n}")
    if math.gcd(math.gcd(a, b), c) != 1:
        raise ValueError(f"parts {parts!r} have a common divisor")
    return a, b, c


def g_lambda(G: GroupSpec, parts: Sequence[int]) -> Matrix:
    """diag(Gamma_a^(alpha-2), Gamma_b, Gamma_c) for a coprime three-part partition."""
    a, b, c = check_triple(G.n, parts)
    return _diag_gammas(G, [(a, alpha(G) - 2), (b, 1), (c, 1)])


@lru_cache(maxsize=256)
def omega_singer(G: GroupSpec) -> Matrix:
    """Gamma_n ** (alpha + q - 1); determinant zeta^alpha.

    Irreducibility is checked rather than assumed.
    """
    M = gamma_power(G.n, G.field, alpha(G) + G.q - 1)
    if not acts_irreducibly(M):
        raise ArithmeticError(f"Gamma_{G.n}^(alpha+q-1) is reducible for q={G.q}, {G.kind}")
    return M
