"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import bounds as bd
from . import covering as cv
from . import gf
from . import matgroup as mg
from . import numtheory as nt
from . import verify as vf
from .matgroup import GroupKind, GroupSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _group_kind(text: str) -> GroupKind:
    try:
        return GroupKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _field(q: int) -> gf.FiniteField:
    try:
        return gf.field_of_order(q)
    except ValueError as exc:
        raise UsageError(f"q={q}: {exc}") from exc


def _group(n: int, q: int, kind: GroupKind) -> GroupSpec:
    try:
        return GroupSpec(n, _field(q), kind)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need_n(n: int, least: int = 2) -> None:
    if n < least:
        if n == 1:
            raise UsageError("n=1: the groups are cyclic, so no normal covering exists")
        raise UsageError(f"n must be >= {least}, got {n}")


# ---------------------------------------------------------------- commands


def cmd_bounds(args) -> int:
    _need_n(args.n)
    r = bd.report(args.n)
    print(_dump(r.to_json()) if args.json else r.render())
    return EXIT_OK


def build_certificate(n: int, method: str, kind: GroupKind, p: int | None = None) -> cv.CoveringCertificate:
    primes = nt.prime_divisors(n)
    if method == "single":
        if p is None:
            p = min(primes, key=lambda s: (cv.size_C_p(n, s), s))
        return cv.build_C_p(n, p, kind)
    if method == "two-primes":
        if len(primes) < 2:
            raise cv.PreconditionError(f"two-primes needs at least 2 prime divisors, n={n}")
        return cv.build_C_p1p2(n, primes[0], primes[1], kind)
    return cv.build_D(n, kind)


def cmd_cover(args) -> int:
    _need_n(args.n)
    cert = build_certificate(args.n, args.method, args.group, args.p)
    text = _dump(cert.to_json())
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"size: {cert.claimed_size}")
    else:
        print(text)
    return EXIT_OK


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def cmd_verify(args) -> int:
    try:
        cert = cv.CoveringCertificate.from_json(_load_json(args.certificate))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from exc
    _field(args.q)
    report = vf.check_cover(cert, args.q, workers=args.workers, max_n=args.max_n, max_q=args.max_q)
    print(_dump(report.to_json()))
    failed = not report.ok
    err = sys.stderr
    for shape in report.uncovered:
        print(f"uncovered shape: {[list(p) for p in shape]}", file=err)
    if args.probe_minimality:
        for e in vf.check_cover_minimality_probe(cert, args.q, max_n=args.max_n, max_q=args.max_q):
            note = f"needed, sole cover of {[list(p) for p in e.witness]}" if e.necessary else "redundant at this q"
            print(f"probe {e.cls}: {note}", file=err)
    if args.elements:
        er = vf.exhaustive_element_check(cert, args.q)
        print(
            f"elements: {er.covered_elements}/{er.total_elements} covered, "
            f"{er.shapes_seen} shapes seen, agrees with shape check: {er.agrees_with_shapes}",
            file=err,
        )
        failed = failed or not er.ok or not er.agrees_with_shapes
    return EXIT_FAIL if failed else EXIT_OK


_SETS = {
    "phi": cv.build_Phi,
    "phi-plus": cv.build_PhiPlus,
    "psi": cv.build_Psi,
    "omega": cv.build_Omega,
}


def cmd_witness(args) -> int:
    _need_n(args.n)
    if args.emit_matrices and args.q is None:
        raise UsageError("--emit-matrices needs --q")
    w = _SETS[args.set](args.n, args.group)
    check = cv.structural_independence_check(w)
    envelope = {"witness": w.to_json(), "structural_check": check.to_json(), "matrices": None}
    if args.q is not None:
        G = _group(args.n, args.q, args.group)
        envelope["matrices"] = [
            {"member": m.to_json(), "matrix": m.realize(G).to_text()} for m in w.members
        ]
    if args.out:
        Path(args.out).write_text(_dump(w.to_json()) + "\n")
    print(_dump(envelope))
    return EXIT_OK if check.passed else EXIT_FAIL


_ELEMENTS = ("gamma", "sigma", "t", "y", "g_lambda", "omega")


def cmd_element(args) -> int:
    _need_n(args.n, 1)
    G = _group(args.n, args.q, args.group)
    if args.kind == "gamma":
        M = mg.singer_gamma(args.n, G.field)
    elif args.kind == "sigma":
        M = mg.sigma_k(G, _required(args.k, "--k"))
    elif args.kind == "t":
        M = mg.t_j(G, _required(args.j, "--j"))
    elif args.kind == "y":
        M = mg.y_10p(G)
    elif args.kind == "g_lambda":
        parts = _required(args.parts, "--parts")
        M = mg.g_lambda(G, tuple(int(x) for x in parts.split(",")))
    else:
        M = mg.omega_singer(G)
    shape = mg.char_shape(M)
    info = {
        "n": args.n,
        "q": args.q,
        "group": args.group.to_json(),
        "kind": args.kind,
        "matrix": M.to_text(),
        "det": M.det(),
        "char_poly": gf.poly_to_text(M.char_poly()),
        "shape": [list(p) for p in shape],
        "in_group": G.contains(M),
    }
    if args.order:
        info["order"] = mg.element_order(M)
    if args.json:
        print(_dump(info))
    else:
        for key, value in info.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _required(value, flag: str):
    if value is None:
        raise UsageError(f"this element kind needs {flag}")
    return value


def cmd_partitions(args) -> int:
    _need_n(args.n, 1)
    triples = nt.enumerate_P(args.n)
    if args.json:
        out = {"n": args.n, "f": nt.f_three_part(args.n), "g": nt.g_coprime_three_part(args.n),
               "P": [list(t) for t in triples]}
        print(_dump(out))
        return EXIT_OK
    print(f"f({args.n}) = {nt.f_three_part(args.n)}")
    print(f"g({args.n}) = {nt.g_coprime_three_part(args.n)}")
    print(f"P({args.n}): {len(triples)} triples")
    for t in triples:
        print("  " + " ".join(map(str, t)))
    return EXIT_OK


TABLE_COLUMNS = ("n", "exact", "lo", "hi", "provenance_lo", "provenance_hi")


def table_rows(start: int, stop: int) -> list[dict]:
    rows = []
    for n in range(start, stop + 1):
        r = bd.report(n)
        lo, hi = r.best_lower, r.best_upper
        rows.append({
            "n": n,
            "exact": r.exact.value if r.exact else "",
            "lo": lo.value,
            "hi": hi.value,
            "provenance_lo": lo.provenance,
            "provenance_hi": hi.provenance,
        })
    return rows


def cmd_table(args) -> int:
    if args.start < 2 or args.stop < args.start:
        raise UsageError(f"bad range {args.start}..{args.stop}")
    rows = table_rows(args.start, args.stop)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print("| " + " | ".join(TABLE_COLUMNS) + " |")
        print("|" + "---|" * len(TABLE_COLUMNS))
        for row in rows:
            print("| " + " | ".join(str(row[c]) for c in TABLE_COLUMNS) + " |")
    return EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="normcover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="bounds and exact values for gamma(G)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cover", help="emit a covering certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("single", "two-primes", "D"), required=True)
    p.add_argument("--p", type=int, help="prime for --method single (default: best)")
    p.add_argument("--group", type=_group_kind, default=mg.GL)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="check a certificate covers every shape of GL_n(q)")
    p.add_argument("--certificate", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--elements", action="store_true", help="also enumerate group elements")
    p.add_argument("--probe-minimality", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--max-n", type=int, default=vf.MAX_N)
    p.add_argument("--max-q", type=int, default=vf.MAX_Q)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("witness", help="emit an independent set of classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", choices=tuple(_SETS), required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--group", type=_group_kind, default=mg.GL)
    p.add_argument("--emit-matrices", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("element", help="print a witness element as a matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--kind", choices=_ELEMENTS, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--parts", help="a,b,c")
    p.add_argument("--group", type=_group_kind, default=mg.GL)
    p.add_argument("--order", action="store_true", help="also compute the element order")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("partitions", help="three-part partition counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("table", help="bounds table over a range of n")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--format", choices=("csv", "md"), default="csv")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (cv.PreconditionError, vf.CeilingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
