"""Command-line front end.

Subcommands: table, poly, screen, sweep, oracle.  All file formats are
JSON (documents described below) or CSV; every numeric value in any
output is an exact integer or rational rendered as a decimal string or
"p/q", never a float.

Input documents:
  matrix     {"n": 22, "S": [[0, 22, 0], [5, 6, 11], [0, 10, 12]]}
  partition  {"n": 3, "m": 2, "cells": [[0, 7], [1, 2, 3, 4, 5, 6]]}
             (vertices are integers; bit i of a vertex is coordinate i)
  structure  {"n": 2, "m": 2, "values": [[2, 0], ["2", 0], ...]}
             (one m-vector per vertex; entries integers or "p/q")

Table output document (--format json):
  {"kind": "triangle", "n": ..., "m": ...,
   "index_order": "i-major,k-minor",
   "entries": {"r1,r2,r3": [m^3 values in flat order]}}
CSV output has a header row r1,r2,r3,i,j,k,value.

Exit codes: 0 success (for `screen`: candidate), 1 operational error or
failed consistency check, 2 `screen` certified nonexistent, 64 unusable
input (bad JSON, missing fields, malformed flags).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import krawtchouk, oracle, recursion, screen
from .exact_linalg import iter_index_triples
from .quotient import QuotientError, QuotientMatrix, validate_quotient
from .recursion import INTERWEIGHT, TRIANGLE, DistributionTable


class InputError(Exception):
    """Unusable input file or value: maps to exit code 64."""


def render_value(v) -> str:
    """Exact decimal or p/q text for an int or Fraction."""
    return str(Fraction(v))


def parse_rational(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise InputError(f"not an exact value: {v!r}")
    try:
        return Fraction(v)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"not an exact value: {v!r}") from exc


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from exc


def _require(doc: Any, field: str, path: str) -> Any:
    if not isinstance(doc, dict) or field not in doc:
        raise InputError(f"{path}: missing field {field!r}")
    return doc[field]


def load_matrix(path: str) -> tuple[int, list[list[int]]]:
    doc = _load_json(path)
    n = _require(doc, "n", path)
    S = _require(doc, "S", path)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{path}: n must be a positive integer")
    if (not isinstance(S, list) or not S
            or any(not isinstance(row, list) for row in S)):
        raise InputError(f"{path}: S must be a list of rows")
    return n, S


def load_partition(path: str) -> oracle.PartitionInstance:
    doc = _load_json(path)
    n = _require(doc, "n", path)
    m = _require(doc, "m", path)
    cells = _require(doc, "cells", path)
    if not isinstance(cells, list) or len(cells) != m:
        raise InputError(f"{path}: expected {m} cells")
    try:
        return oracle.PartitionInstance.from_cells(n, cells)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_structure(path: str) -> oracle.PerfectStructure:
    doc = _load_json(path)
    n = _require(doc, "n", path)
    m = _require(doc, "m", path)
    values = _require(doc, "values", path)
    if not isinstance(values, list):
        raise InputError(f"{path}: values must be a list")
    rows = []
    for row in values:
        if not isinstance(row, list) or len(row) != m:
            raise InputError(f"{path}: each value row must have {m} entries")
        rows.append([parse_rational(x) for x in row])
    try:
        return oracle.PerfectStructure.from_rows(n, rows)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _validated(n: int, S: Sequence[Sequence[int]]) -> QuotientMatrix:
    # QuotientError propagates to the operational-error handler (exit 1)
    return validate_quotient(S, n)


def table_document(table: DistributionTable) -> dict:
    entries: dict[str, list[str]] = {}
    for triple in table.triples():
        key = ",".join(str(r) for r in triple)
        entries[key] = [render_value(e)
                        for e in table.entries[triple].entries]
    return {
        "kind": table.kind,
        "n": table.n,
        "m": table.m,
        "index_order": "i-major,k-minor",
        "entries": entries,
    }


def write_table(table: DistributionTable, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(table_document(table), out, indent=2)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["r1", "r2", "r3", "i", "j", "k", "value"])
    for triple in table.triples():
        vec = table.entries[triple]
        for (i, j, k) in iter_index_triples(table.m):
            writer.writerow([triple[0], triple[1], triple[2], i, j, k,
                             render_value(vec.get(i, j, k))])


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


# ---------------------------------------------------------------------------
# subcommand handlers

def cmd_table(args: argparse.Namespace) -> int:
    n, S = load_matrix(args.input)
    Q = _validated(n, S)
    table = recursion.build_table(Q, args.kind, max_level=args.max_level)
    if args.cross_check:
        report = recursion.cross_check(table, Q)
        if not report.ok:
            print(f"cross-check failed: "
                  f"{len(report.derivation_mismatches)} derivation, "
                  f"{len(report.symmetry_mismatches)} symmetry, "
                  f"{len(report.marginal_mismatches)} marginal mismatches",
                  file=sys.stderr)
            return 1
    out, close = _open_out(args.out)
    try:
        write_table(table, args.format, out)
    finally:
        if close:
            out.close()
    return 0


_POLY_METHODS = {
    "recursion": krawtchouk.poly_recursive,
    "direct": krawtchouk.poly_direct,
    "genfun": krawtchouk.genfun_coeff,
}


def cmd_poly(args: argparse.Namespace) -> int:
    r = (args.r1, args.r2, args.r3)
    if min(r) < 0:
        raise InputError("polynomial indices must be nonnegative")
    if args.method == "all":
        polys = {name: fn(*r) for name, fn in _POLY_METHODS.items()}
        first = polys["recursion"]
        for name, p in polys.items():
            if p != first:
                print(f"method disagreement at {r}: {name} differs from "
                      f"recursion", file=sys.stderr)
                return 1
        poly = first
    else:
        poly = _POLY_METHODS[args.method](*r)
    if args.n is not None:
        specialized = poly.specialize_n(args.n)
        poly = krawtchouk.TriPoly(
            {(dx, dy, dz, 0): c for (dx, dy, dz), c in specialized.items()})
    print(poly.render())
    return 0


def _feasibility_json(rep) -> dict:
    return {
        "row_sum_ok": rep.row_sum_ok,
        "sizes": (None if rep.sizes is None
                  else [render_value(s) for s in rep.sizes]),
        "sizes_connected": rep.sizes_connected,
        "sizes_integral": rep.sizes_integral,
        "divisibility_ok": rep.divisibility_ok,
        "ci_bound_ok": rep.ci_bound_ok,
        "spectrum": {
            "char_coeffs": list(rep.spectrum.char_coeffs),
            "splits": rep.spectrum.splits,
            "eigenvalues": list(rep.spectrum.eigenvalues),
            "residual": (None if rep.spectrum.residual is None
                         else list(rep.spectrum.residual)),
        },
        "failures": list(rep.failures),
        "verdict": rep.verdict,
    }


def cmd_screen(args: argparse.Namespace) -> int:
    n, S = load_matrix(args.input)
    cert = screen.certify(S, n, max_level=args.max_level)
    doc = {
        "n": cert.n,
        "matrix": [list(row) for row in cert.matrix],
        "verdict": cert.verdict,
        "validation_error": cert.validation_error,
        "feasibility": (None if cert.feasibility is None
                        else _feasibility_json(cert.feasibility)),
        "first_violation": (None if cert.first_violation is None else {
            "triple": list(cert.first_violation.triple),
            "index": list(cert.first_violation.index),
            "value": render_value(cert.first_violation.value),
            "reason": cert.first_violation.reason,
        }),
        "violations_found": cert.violations_found,
        "levels_scanned": cert.levels_scanned,
    }
    print(json.dumps(doc, indent=2))
    return 0 if cert.verdict == "candidate" else 2


def cmd_sweep(args: argparse.Namespace) -> int:
    report = screen.sweep_ci(args.n_max, jobs=args.jobs)
    out, close = _open_out(args.out)
    try:
        for cand in report.candidates:
            rec = {
                "n": cand.n, "a": cand.a, "b": cand.b,
                "c": cand.c, "d": cand.d,
                "witness": (list(cand.witness) if cand.witness is not None
                            else "NO WITNESS FOUND"),
                "witness_value": (None if cand.witness_value is None
                                  else render_value(cand.witness_value)),
            }
            out.write(json.dumps(rec) + "\n")
    finally:
        if close:
            out.close()
    summary = (f"sweep n_max={report.n_max}: {report.total} candidates, "
               f"{report.with_witness} with witness, "
               f"{report.without_witness} without")
    print(summary, file=sys.stdout if close else sys.stderr)
    return 0 if report.without_witness == 0 else 1


def cmd_oracle_verify(args: argparse.Namespace) -> int:
    P = load_partition(args.partition)
    try:
        Q = oracle.verify_equitable(P)
    except oracle.NotEquitable as exc:
        print(json.dumps({
            "equitable": False,
            "vertex": exc.vertex,
            "got": list(exc.row_got),
            "expected": list(exc.row_expected),
        }, indent=2))
        return 1
    print(json.dumps({
        "equitable": True,
        "n": Q.n,
        "S": [list(row) for row in Q.rows],
    }, indent=2))
    return 0


def cmd_oracle_triangle(args: argparse.Namespace) -> int:
    P = load_partition(args.partition)
    table = oracle.brute_triangle(P, force=args.force)
    out, close = _open_out(args.out)
    try:
        write_table(table, args.format, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_oracle_interweight(args: argparse.Namespace) -> int:
    P = load_partition(args.partition)
    table = oracle.brute_interweight(P, args.vertex, force=args.force)
    out, close = _open_out(args.out)
    try:
        write_table(table, args.format, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_oracle_invariance(args: argparse.Namespace) -> int:
    P = load_partition(args.partition)
    result = oracle.strong_invariance_check(P)
    print(json.dumps({
        "status": result.status,
        "witness": (None if result.witness is None
                    else [list(w) if isinstance(w, tuple) else w
                          for w in result.witness]),
        "detail": result.detail,
    }, indent=2))
    return 0 if result.status == "holds" else 1


def _parse_pins(raw: list[str]) -> dict[int, int]:
    pins: dict[int, int] = {}
    for item in raw:
        try:
            v, label = item.split(":")
            pins[int(v)] = int(label)
        except ValueError as exc:
            raise InputError(f"bad pin {item!r}; expected VERTEX:CELL") from exc
    return pins


def cmd_oracle_search(args: argparse.Namespace) -> int:
    n, S = load_matrix(args.input)
    Q = _validated(n, S)
    result = oracle.search_partitions(n, Q, limit=args.limit,
                                      pins=_parse_pins(args.pin))
    print(json.dumps({
        "complete": result.complete,
        "count": len(result.partitions),
        "partitions": [p.cells() for p in result.partitions],
    }, indent=2))
    return 0


def cmd_oracle_ps_verify(args: argparse.Namespace) -> int:
    PS = load_structure(args.structure)
    n, S = load_matrix(args.input)
    Q = _validated(n, S)
    ok, vertex = oracle.verify_perfect_structure(PS, Q)
    print(json.dumps({"ok": ok, "vertex": vertex}, indent=2))
    return 0 if ok else 1


def cmd_oracle_ps_table(args: argparse.Namespace) -> int:
    PS = load_structure(args.structure)
    n, S = load_matrix(args.input)
    Q = _validated(n, S)
    initial = oracle.ps_initial_triangle(PS)
    table = recursion.build_table(Q, TRIANGLE, max_level=args.max_level,
                                  initial=initial)
    out, close = _open_out(args.out)
    try:
        write_table(table, args.format, out)
    finally:
        if close:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqcube",
        description="Exact distribution tables, polynomials and "
                    "nonexistence screens for equitable partitions of "
                    "hypercubes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="build a distribution table by recursion")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--kind", choices=(TRIANGLE, INTERWEIGHT), default=TRIANGLE)
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cross-check", action="store_true",
                   help="audit the table and fail on any inconsistency")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("poly", help="print a generalized Krawtchouk polynomial")
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.add_argument("--r3", type=int, required=True)
    p.add_argument("--n", type=int, default=None,
                   help="substitute a concrete dimension")
    p.add_argument("--method", choices=("recursion", "direct", "genfun", "all"),
                   default="all")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("screen", help="certify a candidate matrix")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--max-level", type=int, default=None)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("sweep", help="two-cell witness sweep")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None,
                   help="JSON-lines output file (default stdout)")
    p.set_defaults(func=cmd_sweep)

    po = sub.add_parser("oracle", help="brute-force checks on explicit objects")
    osub = po.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("verify", help="is a partition equitable?")
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_oracle_verify)

    p = osub.add_parser("triangle", help="triangle table by brute force")
    p.add_argument("--partition", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--force", action="store_true",
                   help="override the n <= 6 cost cap")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_triangle)

    p = osub.add_parser("interweight", help="anchored table by brute force")
    p.add_argument("--partition", required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--force", action="store_true",
                   help="override the n <= 7 cost cap")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_interweight)

    p = osub.add_parser("invariance",
                        help="are anchored tables constant on cells?")
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_oracle_invariance)

    p = osub.add_parser("search",
                        help="find partitions realizing a matrix")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("--pin", action="append", default=[],
                   metavar="VERTEX:CELL",
                   help="force an assignment (repeatable)")
    p.set_defaults(func=cmd_oracle_search)

    p = osub.add_parser("ps-verify", help="check a rational vertex structure")
    p.add_argument("--structure", required=True, help="structure JSON file")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.set_defaults(func=cmd_oracle_ps_verify)

    p = osub.add_parser("ps-table",
                        help="propagate a structure's triangle table")
    p.add_argument("--structure", required=True, help="structure JSON file")
    p.add_argument("--input", required=True, help="matrix JSON file")
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_oracle_ps_table)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return 0 if code in (0, None) else 64
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except (QuotientError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
