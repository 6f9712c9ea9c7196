"""Nonexistence certification and a systematic two-cell sweep.

`certify` runs every arithmetic screen on a candidate quotient matrix
and then builds its triangle table, scanning for an entry no actual
partition could produce (negative, or not divisible by the anchor cell
size).  The first such entry in the fixed scan order is the certificate
witness.

`sweep_ci` walks all two-cell candidates [[a, b], [c, d]] that pass the
row-sum and size-divisibility screens but violate the correlation-
immunity bound (oriented b > c >= 1, exactly 3(c - a) > n), and hunts
the r1 = 0 plane of each triangle table for a negative entry at index
(1, 1, 1), stopping at the first hit per candidate.  The point of the
sweep is that every such candidate is expected to produce a witness;
records without one are flagged loudly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .quotient import (FeasibilityReport, InvalidQuotient, QuotientMatrix,
                       feasibility_conditions, validate_quotient)
from .recursion import (TRIANGLE, Violation, build_table, initial_triangle,
                        iter_table_levels, scan_violations)


@dataclass(frozen=True)
class Certificate:
    """Outcome of screening one candidate matrix.

    verdict is "nonexistent" when any screen failed or a table violation
    was found, else "candidate" (which proves nothing).  When the matrix
    fails structural validation everything else is None.
    """

    matrix: tuple[tuple[int, ...], ...]
    n: int
    verdict: str
    validation_error: str | None
    feasibility: FeasibilityReport | None
    first_violation: Violation | None
    violations_found: int
    levels_scanned: int


def certify(S, n: int, max_level: int | None = None) -> Certificate:
    """Screen a candidate matrix and scan its triangle table.

    The table is scanned to max_level (default n) in deterministic order
    (level, then lexicographic triple, then lexicographic index), so the
    reported first violation is reproducible.  A matrix can fail
    feasibility and still get its table scanned; both findings end up in
    the certificate.
    """
    rows = tuple(tuple(r) for r in S)
    try:
        Q = validate_quotient(rows, n)
    except InvalidQuotient as exc:
        return Certificate(matrix=rows, n=n, verdict="nonexistent",
                           validation_error=str(exc), feasibility=None,
                           first_violation=None, violations_found=0,
                           levels_scanned=-1)
    if max_level is None:
        max_level = n
    report = feasibility_conditions(Q)
    first: Violation | None = None
    total = 0
    levels = -1
    if report.sizes is not None:
        table = build_table(Q, TRIANGLE, max_level=max_level)
        violations = scan_violations(table, sizes=report.sizes)
        total = len(violations)
        first = violations[0] if violations else None
        levels = max_level
    verdict = ("nonexistent"
               if first is not None or report.verdict == "rejected"
               else "candidate")
    return Certificate(matrix=rows, n=n, verdict=verdict,
                       validation_error=None, feasibility=report,
                       first_violation=first, violations_found=total,
                       levels_scanned=levels)


@dataclass(frozen=True)
class SweepCandidate:
    """One two-cell candidate and the witness hunt outcome."""

    n: int
    a: int
    b: int
    c: int
    d: int
    witness: tuple[int, int] | None  # (r2, r3) of the first negative entry
    witness_value: Fraction | None


@dataclass(frozen=True)
class SweepReport:
    n_max: int
    candidates: tuple[SweepCandidate, ...]
    total: int
    with_witness: int
    without_witness: int


def enumerate_ci_candidates(n_max: int) -> list[tuple[int, int, int, int, int]]:
    """All (n, a, b, c, d) with rows summing to n, oriented b > c >= 1,
    sizes divisible (so (b + c)/gcd(b, c) divides 2^n), and the
    correlation-immunity bound violated: 3(c - a) > n."""
    out = []
    for n in range(1, n_max + 1):
        for a in range(n - 1):
            b = n - a
            for c in range(1, b):
                d = n - c
                if (2 ** n) % ((b + c) // math.gcd(b, c)) != 0:
                    continue
                if 3 * (c - a) <= n:
                    continue
                out.append((n, a, b, c, d))
    return out


def hunt_witness(params: tuple[int, int, int, int, int]) -> SweepCandidate:
    """Build the triangle table of [[a, b], [c, d]] level by level and
    return the first (r2, r3), in order of increasing r2 + r3 then r2,
    where the entry T^{0,r2,r3}_{111} is negative."""
    n, a, b, c, d = params
    Q = validate_quotient(((a, b), (c, d)), n)
    initial = initial_triangle(_two_cell_sizes(n, b, c))
    for level_entries in iter_table_levels(Q, TRIANGLE, initial, n):
        for triple in sorted(level_entries):
            if triple[0] != 0:
                continue
            value = level_entries[triple].get(1, 1, 1)
            if value < 0:
                return SweepCandidate(n=n, a=a, b=b, c=c, d=d,
                                      witness=(triple[1], triple[2]),
                                      witness_value=Fraction(value))
    return SweepCandidate(n=n, a=a, b=b, c=c, d=d,
                          witness=None, witness_value=None)


def _two_cell_sizes(n: int, b: int, c: int) -> tuple[Fraction, Fraction]:
    total = 1 << n
    return (Fraction(total * c, b + c), Fraction(total * b, b + c))


def sweep_ci(n_max: int, jobs: int = 1) -> SweepReport:
    """Hunt witnesses for every qualifying two-cell candidate up to n_max.

    Candidates are independent; with jobs > 1 they are farmed out to a
    process pool and collected in enumeration order, so the report is
    identical for any job count.
    """
    params = enumerate_ci_candidates(n_max)
    if jobs > 1 and len(params) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(hunt_witness, params, chunksize=1))
    else:
        results = [hunt_witness(p) for p in params]
    with_w = sum(1 for r in results if r.witness is not None)
    return SweepReport(n_max=n_max, candidates=tuple(results),
                       total=len(results), with_witness=with_w,
                       without_witness=len(results) - with_w)
