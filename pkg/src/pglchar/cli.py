"""Command-line front end.

Subcommands: decompose, verify-identities, cross-check, orders, dcosets,
forms.  Exit codes: 0 success, 2 argument error, 3 capacity error, 4 internal
invariant violation (including a failed identity or route mismatch, which
signals a bug and must be loud).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import formulas, involutions, oracle, params, symchar
from .dualgroup import q_context
from .errors import CapacityError, InvariantViolation
from .formulas import Subgroup

CACHE_ENV_VAR = "PGLCHAR_CHI_CACHE"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["table", "json", "csv"], default="table")


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _emit_table(headers: list[str], rows: list[list], footers: list[str] = ()) -> None:
    table = [headers] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    for line in footers:
        print(line)


def _emit_csv(headers: list[str], rows: list[list], footers: list[str] = ()) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)
    sys.stdout.write(buf.getvalue())
    for line in footers:
        print(f"#{line}")


def _load_cache(args) -> None:
    path = args.cache or os.environ.get(CACHE_ENV_VAR)
    if path:
        symchar.load_cache(path)


def cmd_decompose(args) -> int:
    ctx = q_context(args.q)
    _load_cache(args)
    subgroup = Subgroup.parse(args.subgroup)
    with_degrees = not args.no_degrees
    if args.label:
        label = params.parse_label(ctx, args.n, args.label)
        mult = formulas.mult_irr(label, subgroup)
        degree = oracle.degree(ctx, label) if with_degrees else None
        report = formulas.DecompositionReport(
            subgroup,
            ctx,
            args.n,
            (formulas.Row(label, mult, degree),),
            mult * degree if with_degrees else None,
            mult * mult,
        )
    else:
        report = formulas.decompose(
            ctx,
            args.n,
            subgroup,
            include_zeros=args.include_zeros,
            with_degrees=with_degrees,
            unipotent_only=args.unipotent_only,
        )
    payload = report.to_json_dict()
    if args.format == "json":
        _emit_json(payload)
        return 0
    headers = ["label", "mult"] + (["degree"] if with_degrees else [])
    rows = []
    for row in report.rows:
        cells = [row.label.text(), row.mult]
        if with_degrees:
            cells.append(row.degree)
        rows.append(cells)
    footers = [
        f"sum(mult*degree) = {report.sum_mult_times_degree}",
        f"sum(mult^2) = {report.sum_mult_squared}",
    ]
    if args.format == "csv":
        _emit_csv(headers, rows, footers)
    else:
        _emit_table(headers, rows, footers)
    return 0


def cmd_verify_identities(args) -> int:
    _load_cache(args)
    results = involutions.check_identities(args.max_size)
    failures = 0
    rows = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        failures += not res.passed
        rows.append([res.name, str(res.nu), res.lhs, res.rhs, status])
    summary = f"identities: {len(results)} checks, {failures} failures"
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "max_size": args.max_size,
                "checks": [
                    {"identity": r[0], "nu": r[1], "lhs": r[2], "rhs": r[3], "status": r[4]}
                    for r in rows
                ],
                "failures": failures,
            }
        )
    elif args.format == "csv":
        _emit_csv(["identity", "nu", "lhs", "rhs", "status"], rows, [summary])
    else:
        _emit_table(["identity", "nu", "lhs", "rhs", "status"], rows, [summary])
    if failures:
        raise InvariantViolation(f"{failures} identity checks failed")
    return 0


def cmd_cross_check(args) -> int:
    ctx = q_context(args.q)
    _load_cache(args)
    if args.tier == "fast" and args.n > 2:
        raise CapacityError(f"n = {args.n} needs --tier slow")
    labels = params.enumerate_labels(ctx, args.n, True)
    mismatches = []
    rows = []
    for subgroup in Subgroup:
        bad_before = len(mismatches)
        for label in labels:
            routes = {"transition": formulas.mult_basic_via_transition(label, subgroup)}
            if subgroup is Subgroup.PGSP:
                routes["closed-form"] = formulas.mult_pgsp_basic(label)
            else:
                routes["closed-form"] = formulas.mult_pgo_basic(label, subgroup.eps)
                routes["involution"] = involutions.threeterm_bruteforce(label, subgroup.eps)
            if len(set(routes.values())) != 1:
                mismatches.append((subgroup.value, label.text(), routes))
        rows.append(
            [subgroup.value, len(labels), "agree" if len(mismatches) == bad_before else "MISMATCH"]
        )
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "q": args.q,
                "n": args.n,
                "labels": len(labels),
                "mismatches": [
                    {"subgroup": s, "label": l, "routes": r} for s, l, r in mismatches
                ],
            }
        )
    else:
        _emit_table(["subgroup", "labels", "status"], rows)
    if mismatches:
        raise InvariantViolation(f"{len(mismatches)} route mismatches")
    return 0


def cmd_orders(args) -> int:
    data = oracle.orders(args.q, args.n)
    if args.format == "json":
        _emit_json({"schema_version": 1, **data.to_json_dict()})
    else:
        _emit_table(["field", "value"], [[k, v] for k, v in data.to_json_dict().items()])
    return 0


def cmd_dcosets(args) -> int:
    count = oracle.double_cosets(args.q, args.n, args.h1, args.h2)
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "q": args.q,
                "n": args.n,
                "h1": args.h1,
                "h2": args.h2,
                "double_cosets": count,
            }
        )
    else:
        print(f"double cosets {args.h1}\\PGL_{args.n}(F_{args.q})/{args.h2}: {count}")
    return 0


def cmd_forms(args) -> int:
    orbits = oracle.enumerate_forms(args.q, args.n)
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "q": args.q,
                "n": args.n,
                "orbits": [o.to_json_dict() for o in orbits],
            }
        )
    else:
        _emit_table(
            ["kind", "orbit_size", "stabilizer_order"],
            [[o.kind, o.size, o.stabilizer_order] for o in orbits],
        )
    return 0


def _even_positive(text: str) -> int:
    value = int(text)
    if value < 2 or value % 2:
        raise argparse.ArgumentTypeError(f"n must be even and >= 2, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pglchar",
        description="Decomposition of Ind(1) from PGSp/PGO subgroups of PGL_n(F_q)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose an induced character")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_even_positive, required=True)
    p.add_argument("--subgroup", required=True, help="pgsp, pgo+ or pgo-")
    p.add_argument("--label", help="restrict to one label, e.g. '0/1:[2,1] + 1/2:[1]'")
    p.add_argument("--unipotent-only", action="store_true")
    p.add_argument("--include-zeros", action="store_true")
    p.add_argument("--no-degrees", action="store_true", help="skip the degree column")
    p.add_argument("--cache", help=f"character table cache path (or ${CACHE_ENV_VAR})")
    _add_common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify-identities", help="check the combinatorial identities")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--cache", help=f"character table cache path (or ${CACHE_ENV_VAR})")
    _add_common(p)
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("cross-check", help="three-route equality over all labels")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_even_positive, required=True)
    p.add_argument("--tier", choices=["fast", "slow"], default="fast")
    p.add_argument("--cache", help=f"character table cache path (or ${CACHE_ENV_VAR})")
    _add_common(p)
    p.set_defaults(func=cmd_cross_check)

    p = sub.add_parser("orders", help="closed-form group orders and indices")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_even_positive, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("dcosets", help="brute-force double-coset count")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_even_positive, required=True)
    p.add_argument("--h1", required=True, choices=["pgsp", "pgo+", "pgo-"])
    p.add_argument("--h2", required=True, choices=["pgsp", "pgo+", "pgo-"])
    _add_common(p)
    p.set_defaults(func=cmd_dcosets)

    p = sub.add_parser("forms", help="orbits on nondegenerate form classes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=_even_positive, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_forms)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
