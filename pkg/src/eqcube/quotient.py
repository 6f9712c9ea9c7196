"""Candidate quotient matrices: validation, cell sizes, feasibility screens.

An m-cell equitable partition of the n-cube is summarized by an m x m
matrix S whose entry S_ij counts the neighbors in cell j of any vertex
of cell i.  Rows must sum to n, and the double counting
|C_i| S_ij = |C_j| S_ji of edges between two cells forces the support of
S to be symmetric and determines the cell sizes from S alone.

Everything in this module only rejects candidates; passing every screen
here proves nothing about existence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_linalg import mat_mul


class QuotientError(ValueError):
    """A candidate matrix failed a structural requirement."""


class InvalidQuotient(QuotientError):
    """Not a quotient matrix at all: bad shape, row sums, or support."""


class SizesUndetermined(QuotientError):
    """Support graph is disconnected, so relative cell sizes are free."""


@dataclass(frozen=True)
class QuotientMatrix:
    """A validated m x m candidate quotient matrix for the n-cube."""

    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """1-based access S_ij."""
        return self.rows[i - 1][j - 1]


def validate_quotient(S: Sequence[Sequence[int]], n: int) -> QuotientMatrix:
    """Check shape, integrality, row sums and support symmetry.

    Raises InvalidQuotient naming the offending row or pair.
    """
    rows = tuple(tuple(row) for row in S)
    m = len(rows)
    if m == 0:
        raise InvalidQuotient("matrix has no rows")
    if any(len(row) != m for row in rows):
        raise InvalidQuotient(f"matrix is not square: {m} rows, "
                              f"row lengths {[len(r) for r in rows]}")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidQuotient(
                    f"entry ({i + 1},{j + 1}) = {v!r} is not a nonnegative integer")
    for i, row in enumerate(rows):
        s = sum(row)
        if s != n:
            raise InvalidQuotient(f"row {i + 1} sums to {s}, expected n = {n}")
    for i in range(m):
        for j in range(i + 1, m):
            if (rows[i][j] > 0) != (rows[j][i] > 0):
                raise InvalidQuotient(
                    f"support asymmetry at pair ({i + 1},{j + 1}): "
                    f"S_ij = {rows[i][j]}, S_ji = {rows[j][i]}")
    return QuotientMatrix(n=n, rows=rows)


def cell_sizes(Q: QuotientMatrix) -> tuple[Fraction, ...]:
    """Cell sizes forced by |C_i| S_ij = |C_j| S_ji and sum = 2^n.

    Sizes are propagated along a spanning tree of the support graph and
    every non-tree support edge is checked for consistency.  Raises
    SizesUndetermined if the support graph is disconnected and
    InvalidQuotient if some cycle gives contradictory ratios.  The
    result can be non-integral; callers decide what that means.
    """
    m = Q.m
    S = Q.rows
    ratio: list[Fraction | None] = [None] * m
    ratio[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(m):
            if i == j or S[i][j] == 0:
                continue
            # S_ji > 0 by support symmetry
            forced = ratio[i] * Fraction(S[i][j], S[j][i])
            if ratio[j] is None:
                ratio[j] = forced
                stack.append(j)
            elif ratio[j] != forced:
                raise InvalidQuotient(
                    f"inconsistent size ratios around cells "
                    f"{i + 1} and {j + 1}: {ratio[j]} vs {forced}")
    if any(r is None for r in ratio):
        missing = [i + 1 for i, r in enumerate(ratio) if r is None]
        raise SizesUndetermined(
            f"support graph is disconnected; cells {missing} unreachable "
            f"from cell 1")
    total = sum(ratio)
    scale = Fraction(2 ** Q.n) / total
    return tuple(r * scale for r in ratio)


def char_poly(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Coefficients of det(tI - A), descending, leading 1.  Exact integers.

    Faddeev-LeVerrier: every division is exact over the integers.
    """
    m = len(rows)
    A = tuple(tuple(row) for row in rows)
    coeffs = [1]
    M = tuple(tuple(0 for _ in range(m)) for _ in range(m))
    c = 1
    for k in range(1, m + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = mat_mul(A, M)
        M = tuple(tuple(AM[i][j] + (c if i == j else 0) for j in range(m))
                  for i in range(m))
        AMk = mat_mul(A, M)
        tr = sum(AMk[i][i] for i in range(m))
        q, r = divmod(-tr, k)
        assert r == 0, "characteristic polynomial division must be exact"
        c = q
        coeffs.append(c)
    return tuple(coeffs)


def _synth_div(coeffs: Sequence[int], e: int) -> tuple[tuple[int, ...], int]:
    """Divide a monic-descending integer polynomial by (t - e)."""
    out = [coeffs[0]]
    for a in coeffs[1:]:
        out.append(a + e * out[-1])
    return tuple(out[:-1]), out[-1]


@dataclass(frozen=True)
class SpectrumReport:
    """Result of factoring the characteristic polynomial over {n - 2w}."""

    char_coeffs: tuple[int, ...]
    splits: bool
    eigenvalues: tuple[int, ...]          # descending, with multiplicity
    residual: tuple[int, ...] | None      # unfactored part when not split


def spectrum_check(Q: QuotientMatrix) -> SpectrumReport:
    """Factor det(tI - S) over the n-cube eigenvalue set {n - 2w : 0 <= w <= n}.

    Every root must lie in that set for a partition to exist.  Division
    is exact synthetic division; repeated roots are divided out with
    multiplicity.
    """
    poly = char_poly(Q.rows)
    eigen: list[int] = []
    for w in range(Q.n + 1):
        e = Q.n - 2 * w
        while len(poly) > 1:
            quot, rem = _synth_div(poly, e)
            if rem != 0:
                break
            eigen.append(e)
            poly = quot
    splits = len(poly) == 1
    return SpectrumReport(
        char_coeffs=char_poly(Q.rows),
        splits=splits,
        eigenvalues=tuple(eigen),
        residual=None if splits else tuple(poly),
    )


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of the arithmetic screens applicable to a candidate matrix.

    Flags are None where the test does not apply (divisibility and the
    ci bound only constrain two-cell matrices, the latter only with
    distinct off-diagonal entries).
    """

    n: int
    row_sum_ok: bool
    sizes: tuple[Fraction, ...] | None
    sizes_connected: bool
    sizes_integral: bool | None
    divisibility_ok: bool | None
    ci_bound_ok: bool | None
    spectrum: SpectrumReport
    failures: tuple[str, ...] = field(default=())

    @property
    def verdict(self) -> str:
        return "rejected" if self.failures else "candidate"


def feasibility_conditions(Q: QuotientMatrix) -> FeasibilityReport:
    """Run every applicable screen on a validated candidate.

    Two-cell matrices [[a, b], [c, d]] get two extra tests: (b + c) must
    divide 2^n after clearing gcd(b, c) (cell sizes 2^n c/(b+c) and
    2^n b/(b+c) must be integers), and when b != c (oriented so b > c,
    swapping the two cells if needed) a correlation-immunity bound
    requires c - a <= n/3, checked exactly as 3(c - a) <= n.
    """
    failures: list[str] = []
    sizes: tuple[Fraction, ...] | None
    try:
        sizes = cell_sizes(Q)
        connected = True
        integral: bool | None = all(s.denominator == 1 for s in sizes)
        if not integral:
            failures.append("non-integral cell sizes")
    except SizesUndetermined:
        sizes = None
        connected = False
        integral = None
        failures.append("cell sizes undetermined (disconnected support)")

    divisibility_ok: bool | None = None
    ci_ok: bool | None = None
    if Q.m == 2:
        a, b = Q.rows[0]
        c, d = Q.rows[1]
        if b > 0 and c > 0:
            g = math.gcd(b, c)
            divisibility_ok = (2 ** Q.n) % ((b + c) // g) == 0
            if not divisibility_ok:
                failures.append(
                    f"(b + c)/gcd(b, c) = {(b + c) // g} does not divide 2^{Q.n}")
            if b != c:
                if b < c:
                    a, b, c, d = d, c, b, a
                ci_ok = 3 * (c - a) <= Q.n
                if not ci_ok:
                    failures.append(
                        f"correlation-immunity bound violated: "
                        f"3(c - a) = {3 * (c - a)} > n = {Q.n}")

    spec = spectrum_check(Q)
    if not spec.splits:
        failures.append(
            f"characteristic polynomial does not split over the cube "
            f"spectrum; residual {list(spec.residual)}")

    return FeasibilityReport(
        n=Q.n,
        row_sum_ok=True,
        sizes=sizes,
        sizes_connected=connected,
        sizes_integral=integral,
        divisibility_ok=divisibility_ok,
        ci_bound_ok=ci_ok,
        spectrum=spec,
        failures=tuple(failures),
    )
