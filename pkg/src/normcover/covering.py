"""Subgroup classes, the explicit normal coverings, and the independent sets of classes.

Coverings and witnesses are symbolic and do not depend on q. A covering is a
list of subgroup classes (extension-field subgroups efs(p), subspace
stabilizers sss(k)); a witness is a list of element constructors whose
classes are claimed pairwise independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import matgroup as mg
from . import numtheory as nt
from .matgroup import CharShape, GroupKind, GroupSpec, Matrix, invariant_dims

METHODS = ("C_p", "C_p1p2", "D", "custom")
WITNESS_NAMES = ("Phi", "PhiPlus", "Psi", "Omega")


class PreconditionError(ValueError):
    """A construction was asked for outside the range where it is defined."""


# ------------------------------------------------------------ subgroup classes


@dataclass(frozen=True, order=True)
class EFS:
    degree: int

    def to_json(self) -> dict:
        return {"type": "efs", "degree": self.degree}

    def __str__(self) -> str:
        return f"efs({self.degree})"


@dataclass(frozen=True, order=True)
class SSS:
    dim: int

    def to_json(self) -> dict:
        return {"type": "sss", "dim": self.dim}

    def __str__(self) -> str:
        return f"sss({self.dim})"


ClassDescriptor = Union[EFS, SSS]


def _strict_int(data: dict, key: str) -> int:
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ValueError(f"{key} must be an integer, got {v!r}")
    return v


def _exact_keys(data, keys: set[str], what: str) -> None:
    if not isinstance(data, dict):
        raise ValueError(f"{what} must be an object")
    if set(data) != keys:
        raise ValueError(f"{what} has keys {sorted(data)}, expected {sorted(keys)}")


def class_from_json(data) -> ClassDescriptor:
    kind = data.get("type") if isinstance(data, dict) else None
    if kind == "efs":
        _exact_keys(data, {"type", "degree"}, "efs class")
        return EFS(_strict_int(data, "degree"))
    if kind == "sss":
        _exact_keys(data, {"type", "dim"}, "sss class")
        return SSS(_strict_int(data, "dim"))
    raise ValueError(f"unknown subgroup class {data!r}")


def member(shape: CharShape, c: ClassDescriptor) -> bool:
    """Sufficient condition for an element of this shape to lie in some subgroup of class c."""
    if isinstance(c, SSS):
        return c.dim in invariant_dims(shape)
    return all(d % c.degree == 0 for d, _ in shape)


# ----------------------------------------------------------------- coverings


@dataclass(frozen=True)
class CoveringCertificate:
    n: int
    group: GroupKind
    method: str
    classes: tuple[ClassDescriptor, ...]
    claimed_size: int

    def validate(self) -> None:
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if len(set(self.classes)) != len(self.classes):
            raise ValueError("certificate repeats a class")
        if self.claimed_size != len(self.classes):
            raise ValueError(f"claimed size {self.claimed_size} != {len(self.classes)} classes")
        for c in self.classes:
            if isinstance(c, EFS):
                if not nt.is_prime(c.degree) or self.n % c.degree:
                    raise ValueError(f"{c} is not a prime divisor of n={self.n}")
            elif not 1 <= c.dim <= self.n - 1:
                raise ValueError(f"{c} outside 1..{self.n - 1}")

    def without(self, c: ClassDescriptor) -> CoveringCertificate:
        rest = tuple(x for x in self.classes if x != c)
        return CoveringCertificate(self.n, self.group, "custom", rest, len(rest))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group.to_json(),
            "method": self.method,
            "classes": [c.to_json() for c in self.classes],
            "claimed_size": self.claimed_size,
        }

    @classmethod
    def from_json(cls, data) -> CoveringCertificate:
        _exact_keys(data, {"n", "group", "method", "classes", "claimed_size"}, "certificate")
        if not isinstance(data["classes"], list):
            raise ValueError("classes must be a list")
        if not isinstance(data["method"], str):
            raise ValueError("method must be a string")
        cert = cls(
            n=_strict_int(data, "n"),
            group=GroupKind.from_json(data["group"]),
            method=data["method"],
            classes=tuple(class_from_json(c) for c in data["classes"]),
            claimed_size=_strict_int(data, "claimed_size"),
        )
        cert.validate()
        return cert


def _cert(n: int, group: GroupKind, method: str, classes: list[ClassDescriptor]) -> CoveringCertificate:
    cert = CoveringCertificate(n, group, method, tuple(classes), len(classes))
    cert.validate()
    return cert


def _require_prime_divisor(n: int, p: int) -> None:
    if not nt.is_prime(p) or n % p:
        raise PreconditionError(f"{p} is not a prime divisor of {n}")


def build_C_p(n: int, p: int, group: GroupKind = mg.GL) -> CoveringCertificate:
    """{efs(p)} with sss(k) for k <= n/2 prime to p."""
    if n < 2:
        raise PreconditionError(f"n must be >= 2, got {n}")
    _require_prime_divisor(n, p)
    classes: list[ClassDescriptor] = [EFS(p)]
    classes += [SSS(k) for k in range(1, n // 2 + 1) if k % p]
    return _cert(n, group, "C_p", classes)


def size_C_p(n: int, p: int) -> int:
    _require_prime_divisor(n, p)
    eps = 1 if p == 2 and (n // 2) % 2 == 1 else 0
    return math.floor(Fraction(p - 1, p) * Fraction(n, 2)) + 1 + eps


def build_C_p1p2(n: int, p1: int, p2: int, group: GroupKind = mg.GL) -> CoveringCertificate:
    """{efs(p1), efs(p2)} with sss(k) for k < n/2 prime to p1 p2."""
    _require_prime_divisor(n, p1)
    _require_prime_divisor(n, p2)
    if p1 == p2:
        raise PreconditionError("the two primes must differ")
    classes: list[ClassDescriptor] = [EFS(p1), EFS(p2)]
    classes += [SSS(k) for k in range(1, (n + 1) // 2) if k % p1 and k % p2]
    return _cert(n, group, "C_p1p2", classes)


def size_C_p1p2(n: int, p1: int, p2: int) -> int:
    _require_prime_divisor(n, p1)
    _require_prime_divisor(n, p2)
    value = Fraction(p1 - 1, p1) * Fraction(p2 - 1, p2) * Fraction(n, 2) + 2
    if value.denominator != 1:
        raise ArithmeticError(f"two-prime covering size is not integral for n={n}")
    return int(value)


def build_D(n: int, group: GroupKind = mg.GL) -> CoveringCertificate:
    """sss(k) for k <= n/3, sss(k) for n/3 < k <= n/2 prime to n, efs(p) for every p | n."""
    if n <= 6:
        raise PreconditionError(f"covering D needs n > 6, got {n}")
    classes: list[ClassDescriptor] = [SSS(k) for k in range(1, n // 3 + 1)]
    classes += [SSS(k) for k in range(n // 3 + 1, n // 2 + 1) if math.gcd(k, n) == 1]
    classes += [EFS(p) for p in nt.prime_divisors(n)]
    return _cert(n, group, "D", classes)


def size_D(n: int) -> int:
    if n <= 6:
        raise PreconditionError(f"covering D needs n > 6, got {n}")
    return n // 3 + nt.partial_totient(6, 2, n) + nt.nu(n)


# ------------------------------------------------------------ witness members


@dataclass(frozen=True)
class Sigma:
    k: int

    def degrees(self, n: int) -> tuple[int, ...]:
        return (self.k, n - self.k)

    def validate(self, n: int) -> None:
        if not 1 <= self.k or 2 * self.k > n:
            raise ValueError(f"Sigma({self.k}) needs 1 <= k <= n/2 (n={n})")

    def realize(self, G: GroupSpec) -> Matrix:
        return mg.sigma_k(G, self.k)

    def to_json(self) -> dict:
        return {"type": "sigma", "k": self.k}


@dataclass(frozen=True)
class T:
    j: int

    def degrees(self, n: int) -> tuple[int, ...]:
        return (self.j, self.j + 1, n - 2 * self.j - 1)

    def validate(self, n: int) -> None:
        if not 1 <= self.j or 4 * self.j >= n - 2:
            raise ValueError(f"T({self.j}) needs 1 <= j < (n-2)/4 (n={n})")

    def realize(self, G: GroupSpec) -> Matrix:
        return mg.t_j(G, self.j)

    def to_json(self) -> dict:
        return {"type": "t", "j": self.j}


@dataclass(frozen=True)
class Y:
    p: int

    def degrees(self, n: int) -> tuple[int, ...]:
        return (self.p, 5, n - self.p - 5)

    def validate(self, n: int) -> None:
        if n != 10 * self.p or self.p <= 5 or not nt.is_prime(self.p):
            raise ValueError(f"Y({self.p}) needs n = 10p with p > 5 prime (n={n})")

    def realize(self, G: GroupSpec) -> Matrix:
        return mg.y_10p(G)

    def to_json(self) -> dict:
        return {"type": "y", "p": self.p}


@dataclass(frozen=True)
class GLambda:
    parts: tuple[int, int, int]

    def degrees(self, n: int) -> tuple[int, ...]:
        return self.parts

    def validate(self, n: int) -> None:
        mg.check_triple(n, self.parts)

    def realize(self, G: GroupSpec) -> Matrix:
        return mg.g_lambda(G, self.parts)

    def to_json(self) -> dict:
        return {"type": "g_lambda", "parts": list(self.parts)}


@dataclass(frozen=True)
class Gamma:
    """The Singer class Gamma_n ** (alpha + q - 1)."""

    exponent_symbol: str = "alpha+q-1"

    def degrees(self, n: int) -> tuple[int, ...]:
        return (n,)

    def validate(self, n: int) -> None:
        if self.exponent_symbol != "alpha+q-1":
            raise ValueError(f"unknown exponent symbol {self.exponent_symbol!r}")

    def realize(self, G: GroupSpec) -> Matrix:
        return mg.omega_singer(G)

    def to_json(self) -> dict:
        return {"type": "gamma", "exponent_symbol": self.exponent_symbol}


Member = Union[Sigma, T, Y, GLambda, Gamma]


def member_from_json(data) -> Member:
    kind = data.get("type") if isinstance(data, dict) else None
    if kind == "sigma":
        _exact_keys(data, {"type", "k"}, "sigma member")
        return Sigma(_strict_int(data, "k"))
    if kind == "t":
        _exact_keys(data, {"type", "j"}, "t member")
        return T(_strict_int(data, "j"))
    if kind == "y":
        _exact_keys(data, {"type", "p"}, "y member")
        return Y(_strict_int(data, "p"))
    if kind == "g_lambda":
        _exact_keys(data, {"type", "parts"}, "g_lambda member")
        parts = data["parts"]
        if not isinstance(parts, list) or len(parts) != 3:
            raise ValueError("parts must be a list of three integers")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in parts):
            raise ValueError("parts must be integers")
        return GLambda(tuple(parts))  # type: ignore[arg-type]
    if kind == "gamma":
        _exact_keys(data, {"type", "exponent_symbol"}, "gamma member")
        return Gamma(data["exponent_symbol"])
    raise ValueError(f"unknown witness member {data!r}")


def symbolic_shape(m: Member, n: int) -> CharShape:
    return tuple(sorted((d, 1) for d in m.degrees(n)))


@dataclass(frozen=True)
class KappaWitness:
    n: int
    group: GroupKind
    name: str
    members: tuple[Member, ...]

    def validate(self) -> None:
        if self.name not in WITNESS_NAMES:
            raise ValueError(f"unknown witness name {self.name!r}")
        if len(set(self.members)) != len(self.members):
            raise ValueError("witness repeats a member")
        for m in self.members:
            m.validate(self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group.to_json(),
            "name": self.name,
            "members": [m.to_json() for m in self.members],
        }

    @classmethod
    def from_json(cls, data) -> KappaWitness:
        _exact_keys(data, {"n", "group", "name", "members"}, "witness")
        if not isinstance(data["members"], list):
            raise ValueError("members must be a list")
        w = cls(
            n=_strict_int(data, "n"),
            group=GroupKind.from_json(data["group"]),
            name=data["name"],
            members=tuple(member_from_json(m) for m in data["members"]),
        )
        w.validate()
        return w


def _witness(n: int, group: GroupKind, name: str, members: list[Member]) -> KappaWitness:
    w = KappaWitness(n, group, name, tuple(members))
    w.validate()
    return w


def is_twice_odd_prime(n: int) -> bool:
    return n % 2 == 0 and n // 2 > 2 and nt.is_prime(n // 2)


def build_Phi(n: int, group: GroupKind = mg.GL) -> KappaWitness:
    """Sigma(p) for primes p | n with p < n/2, and Sigma(k) for k < n/2 prime to n.

    When n is prime no Sigma(p) exists; the Singer class takes its place so the
    set matches the single-prime covering it is compared against.
    """
    if n <= 2:
        raise PreconditionError(f"Phi needs n > 2, got {n}")
    members: list[Member] = [Sigma(p) for p in nt.prime_divisors(n) if 2 * p < n]
    members += [Sigma(k) for k in range(1, (n + 1) // 2) if math.gcd(n, k) == 1]
    if nt.is_prime(n):
        members.append(Gamma())
    return _witness(n, group, "Phi", members)


def size_Phi(n: int) -> int:
    if n <= 2:
        raise PreconditionError(f"Phi needs n > 2, got {n}")
    eps = 1 if is_twice_odd_prime(n) else 0
    return nt.euler_phi(n) // 2 + nt.nu(n) - eps


def build_PhiPlus(n: int, group: GroupKind = mg.GL) -> KappaWitness:
    """Phi together with Sigma(n/2), for n = 2p with p an odd prime."""
    if not is_twice_odd_prime(n):
        raise PreconditionError(f"PhiPlus needs n = 2p with p an odd prime, got {n}")
    phi = build_Phi(n, group)
    return _witness(n, group, "PhiPlus", list(phi.members) + [Sigma(n // 2)])


def psi_excluded(n: int) -> str | None:
    """Why Psi is undefined at n, or None when it is defined."""
    if nt.nu(n) < 3:
        return "needs at least 3 distinct prime divisors"
    for m in (6, 10):
        if n % m == 0 and nt.is_prime(n // m):
            return "not equal to 6p or 10p for any prime p"
    return None


def build_Psi(n: int, group: GroupKind = mg.GL) -> KappaWitness:
    reason = psi_excluded(n)
    if reason:
        raise PreconditionError(f"Psi at n={n}: {reason}")
    members: list[Member] = [T(j) for j in range(1, n) if 4 * j < n - 2 and j % 3 == 1]
    members += [Sigma(k) for k in range(1, n) if n < 4 * k and 2 * k < n and math.gcd(3 * n, k) == 1]
    members += [
        Sigma(6 * b) for b in range(1, n) if 12 * b < n and math.gcd(n, 6 * b) == 1
    ]
    members += [Sigma(nt.bertrand_witness(p, n)) for p in nt.prime_divisors(n)]
    return _witness(n, group, "Psi", members)


def size_Psi(n: int) -> int:
    reason = psi_excluded(n)
    if reason:
        raise PreconditionError(f"Psi at n={n}: {reason}")
    size = (n + 6) // 12 + nt.partial_totient(12, 1, 3 * n) + nt.nu(n)
    if math.gcd(n, 6) == 1:
        size += nt.partial_totient(12, 0, n)
    return size


def build_Omega(n: int, group: GroupKind = mg.GL) -> KappaWitness:
    if n < 3:
        raise PreconditionError(f"Omega needs n >= 3, got {n}")
    members: list[Member] = [Gamma()]
    members += [GLambda(t) for t in nt.enumerate_P(n)]
    return _witness(n, group, "Omega", members)


# ------------------------------------------------------- independence checks


@dataclass
class IndependenceReport:
    name: str
    n: int
    passed: bool
    checked: int = 0
    offending: tuple | None = None
    reason: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "passed": self.passed,
            "checked": self.checked,
            "offending": [m.to_json() for m in self.offending] if self.offending else None,
            "reason": self.reason,
        }


def structural_independence_check(w: KappaWitness) -> IndependenceReport:
    """No two members share a proper invariant dimension or an all-divisible prime degree.

    For Omega this instead checks the counting property its lower bound uses.
    """
    if w.name == "Omega":
        return omega_counting_check(w)
    n = w.n
    primes = nt.prime_divisors(n)
    info = []
    for m in w.members:
        shape = symbolic_shape(m, n)
        dims = invariant_dims(shape) - {0, n}
        efs = frozenset(p for p in primes if all(d % p == 0 for d in m.degrees(n)))
        info.append((m, dims, efs))
    checked = 0
    for i in range(len(info)):
        for j in range(i + 1, len(info)):
            a, da, ea = info[i]
            b, db, eb = info[j]
            checked += 1
            common = da & db
            if common:
                return IndependenceReport(
                    w.name, n, False, checked, (a, b), f"both stabilize dimension {min(common)}"
                )
            shared = ea & eb
            if shared:
                return IndependenceReport(
                    w.name, n, False, checked, (a, b), f"both lie in efs({min(shared)})"
                )
    return IndependenceReport(w.name, n, True, checked)


def omega_counting_check(w: KappaWitness) -> IndependenceReport:
    """Each sss(k) covers at most n/2 of the g_lambda members; each exceptional class at most n/4."""
    n = w.n
    lambdas = [m.parts for m in w.members if isinstance(m, GLambda)]
    half, quarter = Fraction(n, 2), Fraction(n, 4)
    per_dim = [0] * (n + 1)
    for t in lambdas:
        for k in invariant_dims(tuple((d, 1) for d in t)) - {0, n}:
            per_dim[k] += 1
    worst_sss = max(per_dim[1:n], default=0)
    for k in range(1, n):
        if per_dim[k] > half:
            return IndependenceReport(
                w.name, n, False, len(lambdas), None, f"sss({k}) covers {per_dim[k]} > n/2 members"
            )
    special = (2, (n - 2) // 2, (n - 2) // 2)
    has_special = n % 4 == 0 and special in lambdas
    wreath = sum(1 for t in lambdas if 2 * t[2] == n) + int(has_special)
    tensor = int(has_special)
    details = {"max_sss_hits": worst_sss, "wreath_hits": wreath, "tensor_hits": tensor}
    for label, hits in (("wreath", wreath), ("tensor", tensor)):
        if hits > quarter:
            return IndependenceReport(
                w.name, n, False, len(lambdas), None,
                f"exceptional {label} class covers {hits} > n/4 members", details,
            )
    return IndependenceReport(w.name, n, True, len(lambdas), None, "", details)


def omega_class_lower_bound(n: int) -> Fraction:
    """1 + 2 g(n) / n: classes needed to cover Omega when each covers at most n/2 of the g_lambda."""
    return 1 + Fraction(2 * nt.g_coprime_three_part(n), n)


def realize_member(m: Member, G: GroupSpec) -> Matrix:
    if G.n <= 0:
        raise ValueError("bad group")
    return m.realize(G)
