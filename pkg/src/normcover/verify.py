"""Brute-force checks: shape universes, covering certificates, tiny-group element checks.

Both membership predicates depend only on the characteristic shape, so a
certificate is verified over the finite set of realizable shapes rather than
over group elements. The element-level routines exist to cross-check that
reduction on groups small enough to enumerate.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import gf
from . import matgroup as mg
from .covering import ClassDescriptor, CoveringCertificate, KappaWitness, member
from .matgroup import CharShape, GroupSpec, Matrix

MAX_N = 12
MAX_Q = 5
ELEMENT_LIMIT = 10**7
MATRIX_ENUM_LIMIT = 10**6
CLOSURE_BUDGET = 10**7


class CeilingError(ValueError):
    """Input exceeds a configured size ceiling."""


class BudgetExceeded(RuntimeError):
    pass


# ------------------------------------------------------------- shape universe


@dataclass(frozen=True)
class ShapeUniverse:
    n: int
    q: int
    available: dict[int, int]
    shapes: tuple[CharShape, ...]

    def __len__(self) -> int:
        return len(self.shapes)

    def __iter__(self):
        return iter(self.shapes)

    def __contains__(self, shape) -> bool:
        return shape in self._index

    @property
    def _index(self) -> frozenset:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = frozenset(self.shapes)
            object.__setattr__(self, "_idx", idx)
        return idx


def _check_ceiling(n: int, q: int, max_n: int, max_q: int) -> None:
    if n < 1 or n > max_n:
        raise CeilingError(f"n={n} outside 1..{max_n}")
    if q < 2 or q > max_q:
        raise CeilingError(f"q={q} outside 2..{max_q}")
    gf.field_of_order(q)  # rejects non prime powers


def enumerate_shapes(n: int, q: int, max_n: int = MAX_N, max_q: int = MAX_Q) -> ShapeUniverse:
    """Every realizable characteristic shape of an invertible n x n matrix over GF(q)."""
    _check_ceiling(n, q, max_n, max_q)
    # monic irreducibles of each degree, excluding x
    avail = {d: gf.count_irreducibles(q, d) - (1 if d == 1 else 0) for d in range(1, n + 1)}
    types = [(d, m) for d in range(1, n + 1) for m in range(1, n // d + 1)]
    out: list[CharShape] = []

    def rec(i: int, remaining: int, used: dict[int, int], acc: list[tuple[int, int]]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        if i == len(types):
            return
        d, m = types[i]
        size = d * m
        limit = min(remaining // size, avail[d] - used.get(d, 0))
        for c in range(limit + 1):
            if c:
                used[d] = used.get(d, 0) + c
            rec(i + 1, remaining - c * size, used, acc + [(d, m)] * c)
            if c:
                used[d] -= c

    rec(0, n, {}, [])
    return ShapeUniverse(n, q, avail, tuple(sorted(set(out))))


# ------------------------------------------------------------- cover checking


@dataclass
class VerifyReport:
    n: int
    q: int
    total_shapes: int
    covered: int
    uncovered: list[CharShape]
    hits: dict[str, int]
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.uncovered

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "total_shapes": self.total_shapes,
            "covered": self.covered,
            "uncovered": [[list(p) for p in s] for s in self.uncovered],
            "hits": dict(self.hits),
        }

    @classmethod
    def from_json(cls, data) -> VerifyReport:
        keys = {"n", "q", "total_shapes", "covered", "uncovered", "hits"}
        if not isinstance(data, dict) or set(data) != keys:
            raise ValueError(f"verify report must have exactly the keys {sorted(keys)}")
        uncovered = [tuple(tuple(p) for p in s) for s in data["uncovered"]]
        r = cls(data["n"], data["q"], data["total_shapes"], data["covered"], uncovered, dict(data["hits"]))
        if r.covered + len(r.uncovered) != r.total_shapes:
            raise ValueError("covered + uncovered != total_shapes")
        return r


def _hits_for(shapes: Sequence[CharShape], classes: Sequence[ClassDescriptor]) -> list[tuple[int, ...]]:
    return [tuple(i for i, c in enumerate(classes) if member(s, c)) for s in shapes]


def _classify(universe: ShapeUniverse, classes: Sequence[ClassDescriptor], workers: int | None):
    shapes = list(universe)
    if not workers or workers <= 1 or len(shapes) < 64:
        return _hits_for(shapes, classes)
    size = -(-len(shapes) // workers)
    chunks = [shapes[i : i + size] for i in range(0, len(shapes), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_hits_for, chunks, itertools.repeat(list(classes)))
        return [h for part in parts for h in part]


def check_cover(
    cert: CoveringCertificate,
    q: int,
    workers: int | None = None,
    max_n: int = MAX_N,
    max_q: int = MAX_Q,
) -> VerifyReport:
    start = time.perf_counter()
    universe = enumerate_shapes(cert.n, q, max_n, max_q)
    classes = list(cert.classes)
    hit_lists = _classify(universe, classes, workers)
    counts = [0] * len(classes)
    uncovered = []
    for shape, hit in zip(universe, hit_lists):
        for i in hit:
            counts[i] += 1
        if not hit:
            uncovered.append(shape)
    return VerifyReport(
        n=cert.n,
        q=q,
        total_shapes=len(universe),
        covered=len(universe) - len(uncovered),
        uncovered=uncovered,
        hits={str(c): k for c, k in zip(classes, counts)},
        elapsed=time.perf_counter() - start,
    )


@dataclass
class ProbeEntry:
    cls: ClassDescriptor
    necessary: bool
    witness: CharShape | None

    def to_json(self) -> dict:
        return {
            "class": self.cls.to_json(),
            "necessary": self.necessary,
            "witness": [list(p) for p in self.witness] if self.witness else None,
        }


def check_cover_minimality_probe(cert: CoveringCertificate, q: int, **kw) -> list[ProbeEntry]:
    """For each class, a shape covered by that class alone (if any) at this q."""
    universe = enumerate_shapes(cert.n, q, kw.get("max_n", MAX_N), kw.get("max_q", MAX_Q))
    classes = list(cert.classes)
    sole: dict[int, CharShape] = {}
    for shape, hit in zip(universe, _hits_for(list(universe), classes)):
        if len(hit) == 1 and hit[0] not in sole:
            sole[hit[0]] = shape
    return [ProbeEntry(c, i in sole, sole.get(i)) for i, c in enumerate(classes)]


# ------------------------------------------------------------ element level


def all_matrices(F: gf.FiniteField, n: int) -> Iterable[Matrix]:
    rows = list(itertools.product(range(F.order), repeat=n))
    for choice in itertools.product(rows, repeat=n):
        yield Matrix(F, choice)


def all_invertible(F: gf.FiniteField, n: int) -> Iterable[Matrix]:
    for M in all_matrices(F, n):
        if M.det():
            yield M


@dataclass
class ElementReport:
    n: int
    q: int
    total_elements: int
    covered_elements: int
    uncovered_shapes: list[CharShape]
    shapes_seen: int
    shapes_outside_universe: list[CharShape]
    agrees_with_shapes: bool

    @property
    def ok(self) -> bool:
        return self.covered_elements == self.total_elements

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "total_elements": self.total_elements,
            "covered_elements": self.covered_elements,
            "uncovered_shapes": [[list(p) for p in s] for s in self.uncovered_shapes],
            "shapes_seen": self.shapes_seen,
            "shapes_outside_universe": [[list(p) for p in s] for s in self.shapes_outside_universe],
            "agrees_with_shapes": self.agrees_with_shapes,
        }


def exhaustive_element_check(cert: CoveringCertificate, q: int) -> ElementReport:
    """Run membership on every element of GL_n(q) and compare with the shape-level verdict."""
    n = cert.n
    if mg.gl_order(n, q) > ELEMENT_LIMIT or q ** (n * n) > MATRIX_ENUM_LIMIT:
        raise CeilingError(f"GL_{n}({q}) is too large to enumerate")
    F = gf.field_of_order(q)
    universe = enumerate_shapes(n, q, max(n, MAX_N), max(q, MAX_Q))
    shape_report = check_cover(cert, q, max_n=max(n, MAX_N), max_q=max(q, MAX_Q))
    seen: dict[CharShape, bool] = {}
    total = covered = 0
    for M in all_invertible(F, n):
        shape = mg.char_shape(M)
        ok = seen.get(shape)
        if ok is None:
            ok = any(member(shape, c) for c in cert.classes)
            seen[shape] = ok
        total += 1
        covered += ok
    outside = sorted(s for s in seen if s not in universe)
    uncovered = sorted(s for s, ok in seen.items() if not ok)
    # every realizable shape occurs, so both levels must flag exactly the same shapes
    agrees = not outside and set(seen) == set(universe) and uncovered == sorted(shape_report.uncovered)
    return ElementReport(n, q, total, covered, uncovered, len(seen), outside, agrees)


def invariant_dims_bruteforce(M: Matrix) -> frozenset[int]:
    """Dimensions of all M-invariant subspaces, by closing cyclic subspaces under sums."""
    F, n = M.field, M.n
    q = F.order
    vectors = list(itertools.product(range(q), repeat=n))

    def apply(v):
        return tuple(gf_dot(F, row, v) for row in M.rows)

    def span(gens) -> frozenset:
        space = {tuple([0] * n)}
        for g in gens:
            if g in space:
                continue
            new = set()
            for c in range(1, q):
                cg = tuple(F.mul(c, x) for x in g)
                for s in space:
                    new.add(tuple(F.add(a, b) for a, b in zip(s, cg)))
            space |= new
        return frozenset(space)

    cyclic = set()
    for v in vectors:
        gens, w = [], v
        for _ in range(n):
            gens.append(w)
            w = apply(w)
        cyclic.add(span(gens))
    spaces = set(cyclic) | {frozenset([tuple([0] * n)])}
    frontier = list(spaces)
    while frontier:
        nxt = []
        for a in frontier:
            for b in cyclic:
                s = span(list(a) + list(b)) if not b <= a else a
                if s not in spaces:
                    spaces.add(s)
                    nxt.append(s)
        frontier = nxt
    dims = set()
    for s in spaces:
        size, d = len(s), 0
        while size > 1:
            size //= q
            d += 1
        dims.add(d)
    return frozenset(dims)


def gf_dot(F: gf.FiniteField, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc = F.add(acc, F.mul(x, y))
    return acc


# ------------------------------------------------------------------- closure


def _flat_mul(F: gf.FiniteField, n: int):
    add_t = F._add_table
    mul_t = F._mul_table
    if add_t is None or mul_t is None:
        def mul(A, B):
            return sum(mg.mat_mul(F, _rows(A, n), _rows(B, n)), ())
        return mul
    idx = range(n)

    def mul(A, B):
        out = []
        for i in idx:
            base = i * n
            for j in idx:
                acc = 0
                for k in idx:
                    a = A[base + k]
                    if a:
                        b = B[k * n + j]
                        if b:
                            acc = add_t[acc][mul_t[a][b]]
                out.append(acc)
        return tuple(out)

    return mul


def _rows(A: tuple, n: int):
    return tuple(A[i * n : (i + 1) * n] for i in range(n))


def subgroup_closure_order(
    generators: Sequence[Matrix], budget: int = CLOSURE_BUDGET, stop_above: int | None = None
) -> int:
    """Order of the group generated, by breadth-first closure under right multiplication.

    With stop_above set, returns as soon as the closure exceeds that size.
    """
    if not generators:
        raise ValueError("need at least one generator")
    F, n = generators[0].field, generators[0].n
    mul = _flat_mul(F, n)
    gens = [sum(g.rows, ()) for g in generators]
    one = sum(mg.identity(F, n).rows, ())
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded(f"closure exceeded budget {budget}")
                if stop_above is not None and len(seen) > stop_above:
                    return len(seen)
                queue.append(y)
    return len(seen)


def random_element(G: GroupSpec, rng: random.Random) -> Matrix:
    F, n = G.field, G.n
    while True:
        rows = tuple(tuple(rng.randrange(F.order) for _ in range(n)) for _ in range(n))
        M = Matrix(F, rows)
        if G.contains(M):
            return M


@dataclass
class SpotFailure:
    first: object
    second: object
    sample: int
    order: int

    def to_json(self) -> dict:
        return {
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "sample": self.sample,
            "order": self.order,
        }


@dataclass
class SpotReport:
    n: int
    q: int
    group_order: int
    pairs: int
    samples: int
    trials: int = 0
    generated: int = 0
    failures: list[SpotFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.trials > 0 and self.generated == self.trials

    @property
    def rate(self) -> float:
        return self.generated / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "group_order": self.group_order,
            "pairs": self.pairs,
            "samples": self.samples,
            "trials": self.trials,
            "generated": self.generated,
            "failures": [f.to_json() for f in self.failures],
        }


def independence_spot_check(
    w: KappaWitness, G: GroupSpec, samples: int = 100, seed: int = 0
) -> SpotReport:
    """For each pair of distinct members x, y and random h in G, test whether <x, y^h> = G."""
    order = G.order()
    if order > ELEMENT_LIMIT:
        raise CeilingError(f"group order {order} exceeds {ELEMENT_LIMIT}")
    if w.n != G.n:
        raise ValueError("witness and group dimensions differ")
    rng = random.Random(seed)
    mats = [(m, m.realize(G)) for m in w.members]
    pairs = list(itertools.combinations(mats, 2))
    report = SpotReport(G.n, G.q, order, len(pairs), samples)
    for (a, x), (b, y) in pairs:
        for s in range(samples):
            h = random_element(G, rng)
            conj = h.inverse() @ y @ h
            # a subgroup larger than half the group is the whole group
            got = subgroup_closure_order([x, conj], stop_above=order // 2)
            report.trials += 1
            if got > order // 2:
                report.generated += 1
            else:
                report.failures.append(SpotFailure(a, b, s, got))
    return report
