"""Command-line surface: construct families, verify them, print bound
tables, run the packing bound ILP, run the exact oracle.

Every command emits one JSON document (CSV optionally for tables) with a
fixed schema: schema_version, command, parameters, payload, timing_ms.
Payloads are deterministic for fixed parameters; timing stays outside
the payload.  Exit codes: 0 success, 1 invalid family, 2 bad input,
3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .field_core import Subspace, field, prime_power
from .geometry import canonical_point
from . import bounds as bounds_mod
from .constructions import RecoveryFamily, canonical_target, construct
from .ilp import DualSolution, build_ilp_d2, check_dual, export_model, solve_ilp
from .oracle import SearchConfig, exact_N
from .verifier import verify_family

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INVALID_FAMILY = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _document(command: str, parameters: dict, payload: dict, started: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "payload": payload,
        "timing_ms": round(1000 * (time.monotonic() - started), 3),
    }


def _emit(doc: dict, out=None) -> None:
    json.dump(doc, out or sys.stdout, indent=2, sort_keys=False)
    (out or sys.stdout).write("\n")


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def family_payload(family: RecoveryFamily) -> dict:
    from .field_core import extension

    fld = field(family.q)
    p, e = prime_power(family.q)
    return {
        "q": family.q,
        "k": family.k,
        "d": family.d,
        "field": {
            "p": p,
            "e": e,
            "base_modulus": list(fld.modulus),
            "column_modulus": list(extension(fld, family.d).modulus),
        },
        "target": [list(row) for row in family.target.basis],
        "method": family.method,
        "formula_size": family.formula_size,
        "notes": list(family.notes),
        "sets": [sorted(list(p) for p in s) for s in sorted(family.sets, key=lambda s: sorted(s))],
    }


def family_from_payload(payload: dict) -> tuple[RecoveryFamily, list[str]]:
    warnings = []
    try:
        q, k, d = int(payload["q"]), int(payload["k"]), int(payload["d"])
        prime_power(q)
        if not 1 <= d <= k:
            raise ValueError("need 1 <= d <= k")
        fld = field(q)
        raw_target = [tuple(int(c) for c in row) for row in payload["target"]]
        target = Subspace.span(raw_target, fld, k) if raw_target else canonical_target(q, k, d)
        if target.dim != d:
            raise ValueError("target basis does not have dimension d")
        sets = []
        for raw_set in payload["sets"]:
            pts = set()
            for raw_pt in raw_set:
                vec = tuple(int(c) for c in raw_pt)
                if len(vec) != k or any(not 0 <= c < q for c in vec):
                    raise ValueError(f"bad point {raw_pt}")
                canon = canonical_point(vec, fld)
                if canon != vec:
                    warnings.append(f"normalized non-canonical representative {list(vec)}")
                pts.add(canon)
            sets.append(frozenset(pts))
        method = str(payload.get("method", "external"))
        fam = RecoveryFamily(q, k, d, target, sets, method)
        return fam, warnings
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed family document: {exc}") from exc


def cmd_construct(args) -> int:
    started = time.monotonic()
    try:
        prime_power(args.q)
        if not 1 <= args.d <= args.k:
            raise ValueError("need 1 <= d <= k")
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    family = construct(args.q, args.k, args.d)
    cert = verify_family(family)
    payload = {
        "family": family_payload(family),
        "certificate": cert.to_payload(),
    }
    doc = _document("construct", {"q": args.q, "k": args.k, "d": args.d}, payload, started)
    _emit(doc)
    return EXIT_OK if cert.valid else EXIT_INTERNAL


def cmd_bounds(args) -> int:
    started = time.monotonic()
    try:
        prime_power(args.q)
        k_range = _parse_range(args.k)
        d_range = _parse_range(args.d)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    records = bounds_mod.bound_table(args.q, k_range, d_range, args.upper_variant)
    if not records:
        raise CliError("empty parameter range")
    if args.format == "csv":
        print("q,k,d,lower,upper,exact,provenance")
        for r in records:
            exact = "" if r.exact is None else r.exact
            print(f"{r.q},{r.k},{r.d},{r.lower},{r.upper},{exact},{';'.join(r.provenance)}")
        return EXIT_OK
    payload = {"rows": [r.to_payload() for r in records]}
    doc = _document(
        "bounds",
        {"q": args.q, "k": args.k, "d": args.d, "upper_variant": args.upper_variant},
        payload,
        started,
    )
    _emit(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.monotonic()
    try:
        with open(args.path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read family document: {exc}") from exc
    payload = doc.get("payload", doc)
    family_doc = payload.get("family", payload)
    family, warnings = family_from_payload(family_doc)
    cert = verify_family(family)
    out = {"certificate": cert.to_payload(), "warnings": warnings}
    _emit(_document("verify", {"path": args.path}, out, started))
    return EXIT_OK if cert.valid else EXIT_INVALID_FAMILY


def cmd_ilp(args) -> int:
    started = time.monotonic()
    if args.k < 2:
        raise CliError("need k >= 2")
    model = build_ilp_d2(args.k)
    if args.emit_model:
        print(export_model(model))
        return EXIT_OK
    optimum, assignment = solve_ilp(model)
    dual = DualSolution(Fraction(1, 2), Fraction(1, 5), Fraction(1, 10))
    feasible, objective, violated = check_dual(dual, args.k)
    payload = {
        "optimum": optimum,
        "assignment": assignment,
        "rhs": list(model.rhs),
        "dual_certificate": {
            "z": [str(dual.z1), str(dual.z2), str(dual.z3)],
            "feasible": feasible,
            "objective": str(objective),
            "violated": violated,
        },
    }
    _emit(_document("ilp", {"k": args.k}, payload, started))
    return EXIT_OK


def cmd_oracle(args) -> int:
    started = time.monotonic()
    try:
        prime_power(args.q)
        if not 1 <= args.d <= args.k:
            raise ValueError("need 1 <= d <= k")
        cfg = SearchConfig(
            max_set_size=args.max_set_size,
            node_limit=int(args.node_limit) if args.node_limit else None,
            time_limit=args.time_limit,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    result = exact_N(args.q, args.k, args.d, cfg)
    cert = verify_family(result.witness)
    payload = {
        "value": result.value,
        "status": result.status,
        "nodes": result.nodes,
        "witness": family_payload(result.witness),
        "witness_certificate": cert.to_payload(),
    }
    doc = _document(
        "oracle",
        {"q": args.q, "k": args.k, "d": args.d, "threads": args.threads},
        payload,
        started,
    )
    _emit(doc)
    if not cert.valid:
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recovery-sets",
        description="Disjoint recovery sets for subspaces over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build and certify a recovery family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", choices=("json",), default="json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bounds", help="tabulate lower/upper/exact bounds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=str, required=True, help="value or range lo..hi")
    p.add_argument("--d", type=str, required=True, help="value or range lo..hi")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument(
        "--upper-variant",
        choices=("corrected", "printed"),
        default="corrected",
        help="middle term of the row-structure upper bound",
    )
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="re-verify a family JSON document")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ilp", help="solve the binary d=2 packing bound ILP")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--emit-model", action="store_true")
    p.set_defaults(func=cmd_ilp)

    p = sub.add_parser("oracle", help="exact maximum by exhaustive packing")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-set-size", type=int, default=None)
    p.add_argument("--node-limit", type=float, default=None)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("RECOVERY_SETS_THREADS", "1")),
        help="worker budget for the search (evaluation is serial; results "
        "are deterministic regardless)",
    )
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) is not None and getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
