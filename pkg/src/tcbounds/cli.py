"""Command-line front end.

    tcbounds bounds "K(3)" --invariant tc --json
    tcbounds ring "Gr(2,4)" --field q
    tcbounds cup-length "RP(3)" --witness
    tcbounds zcl "CP(2)" --field q
    tcbounds verify-paper
    tcbounds rules

Exit status: 0 on success, 1 when a check or bound is inconsistent, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bounds import EvalOptions, evaluate, list_facts, list_rules, ring_of
from .checks import run_checks
from .errors import (
    ExprSyntaxError,
    InconsistentBounds,
    TCBoundsError,
)
from .expr import Z2Product, render
from .invariants import cup_length, zero_divisor_cup_length
from .parser import parse_space_expr

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True)


def _cmd_bounds(args) -> int:
    expr = parse_space_expr(args.expr)
    inv = args.invariant or ("eqtc" if isinstance(expr, Z2Product) else "tc")
    fields = tuple(args.field.upper().split(",")) if args.field else ("GF2", "Q")
    opts = EvalOptions(fields=fields, disabled=frozenset(args.disable or ()),
                       max_tensor_dim=args.max_tensor_dim, strict=args.strict)
    res = evaluate(expr, inv, opts)
    if args.json:
        print(res.to_json())
        return EXIT_OK
    up = "unbounded" if res.upper is None else res.upper
    print(f"{inv}({render(res.expr)}) in [{res.lower}, {up}]" + ("  exact" if res.exact else ""))
    for s in res.derivation:
        val = "unbounded" if s.value is None else s.value
        tag = "  (informational)" if s.informational else ""
        note = f"  -- {s.note}" if s.note else ""
        print(f"  {s.side:5} {val!s:>9}  {s.rule:4} {s.kind:8} {s.cite}{note}{tag}")
    for n in res.notes:
        print(f"  note: {n}")
    return EXIT_OK


def _ring(args):
    return ring_of(parse_space_expr(args.expr), args.field or "GF2", args.max_tensor_dim)


def _cmd_ring(args) -> int:
    A = _ring(args)
    poincare = A.poincare()
    if args.json:
        doc = {
            "name": A.name,
            "field": A.field.name,
            "dimension": A.dim,
            "poincare": poincare,
            "basis": [A.parse_monomial_name(m) for m in A.basis],
            "presentation": A.presentation.to_dict(),
        }
        if args.table:
            doc["table"] = _table_rows(A)
        print(_dump(doc))
        return EXIT_OK
    print(f"# {A.name} over {A.field.name}, dimension {A.dim}")
    for d, n in enumerate(poincare):
        names = [A.parse_monomial_name(A.basis[i]) for i in A.by_degree.get(d, ())]
        print(f"H^{d}: {n}" + (f"  {' '.join(names)}" if names else ""))
    terms = [("1" if d == 0 else f"{'' if n == 1 else n}t" + (f"^{d}" if d > 1 else "")) for d, n in enumerate(poincare) if n]
    print("# Poincare polynomial: " + " + ".join(terms))
    if args.table:
        for row in _table_rows(A):
            print(f"{row[0]} * {row[1]} = {row[2]}")
    return EXIT_OK


def _table_rows(A) -> list[list[str]]:
    rows = []
    for i in range(A.dim):
        for j in range(i, A.dim):
            x, y = A.basis_element(i), A.basis_element(j)
            rows.append([repr(x), repr(y), repr(x * y)])
    return rows


def _cmd_length(args, which: str) -> int:
    A = _ring(args)
    if which == "cl":
        k, w = cup_length(A)
    else:
        k, w = zero_divisor_cup_length(A, method=args.method)
    if args.json:
        doc = {"ring": A.name, "field": A.field.name, which: k}
        if args.witness:
            doc["witness"] = w.to_json()
            doc["product"] = repr(w.value)
        print(_dump(doc))
        return EXIT_OK
    print(k)
    if args.witness:
        for f in w.factors:
            print(f"  ({f!r})")
        print(f"  = {w.value!r}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    outcomes = run_checks()
    if args.json:
        print(_dump([o.to_dict() for o in outcomes]))
    else:
        for o in outcomes:
            print(o.line())
        failed = sum(not o.ok for o in outcomes)
        print(f"# {len(outcomes) - failed}/{len(outcomes)} rows match")
    return EXIT_OK if all(o.ok for o in outcomes) else EXIT_MISMATCH


def _cmd_rules(args) -> int:
    if args.json:
        print(_dump({
            "rules": [dict(zip(("id", "direction", "statement", "source"), r)) for r in list_rules()],
            "facts": [dict(zip(("id", "statement", "source"), f)) for f in list_facts()],
        }))
        return EXIT_OK
    for rid, direction, statement, source in list_rules():
        print(f"{rid:4} {direction:11} {statement}  [{source}]")
    print()
    for fid, statement, source in list_facts():
        print(f"{fid:4} {'fact':11} {statement}  [{source}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcbounds", description="Cohomology rings and cat/TC bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="interval bounds with a derivation")
    b.add_argument("expr")
    b.add_argument("--invariant", choices=["cat", "tc", "eqcat", "eqtc"])
    b.add_argument("--field", help="restrict computed lengths to gf2, q or gf2,q")
    b.add_argument("--disable", action="append", metavar="RULE", help="switch off a rule (repeatable)")
    b.add_argument("--max-tensor-dim", type=int, default=20000)
    b.add_argument("--strict", action="store_true", help="fail instead of skipping unavailable rings")
    b.add_argument("--json", action="store_true")

    for name, helptext in (("ring", "basis and Poincare polynomial"),
                           ("cup-length", "cup-length with an optional certificate"),
                           ("zcl", "zero-divisor cup-length with an optional certificate")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("expr")
        s.add_argument("--field", choices=["gf2", "q", "GF2", "Q"], default="gf2")
        s.add_argument("--max-tensor-dim", type=int, default=20000)
        s.add_argument("--json", action="store_true")
        if name == "ring":
            s.add_argument("--table", action="store_true", help="print the multiplication table")
        else:
            s.add_argument("--witness", action="store_true")
        if name == "zcl":
            s.add_argument("--method", choices=["divisors", "kernel"], default="divisors")

    v = sub.add_parser("verify-paper", help="compare the replication table against the library")
    v.add_argument("--json", action="store_true")
    r = sub.add_parser("rules", help="list inference rules and cited facts")
    r.add_argument("--json", action="store_true")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    handlers = {
        "bounds": _cmd_bounds,
        "ring": _cmd_ring,
        "cup-length": lambda a: _cmd_length(a, "cl"),
        "zcl": lambda a: _cmd_length(a, "zcl"),
        "verify-paper": _cmd_verify,
        "rules": _cmd_rules,
    }
    try:
        return handlers[args.command](args)
    except ExprSyntaxError as exc:
        print(f"error: {exc}\n  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentBounds as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (TCBoundsError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
