"""Level-by-level construction of triangle and interweight distributions.

Fix a partition of the n-cube with quotient matrix S and cells C_1..C_m.
Index an ordered vertex triple (v, x, y) by the nonnegative solution of

    d(x, y) = r2 + r3,   d(v, y) = r1 + r3,   d(v, x) = r1 + r2,

which exists iff the pairwise distances have even perimeter and satisfy
the triangle inequality.  T^{r1,r2,r3} is the m^3 row vector whose
(i, j, k) entry counts such triples with v in C_i, x in C_j, y in C_k;
W^{r1,r2,r3} counts the same pairs (x, y) anchored at one fixed vertex
v of C_i, so T = W * D' with D' the diagonal cell-size lift.

Both families satisfy three exchange identities coupling an S-lifted
vector to its neighbors in the index lattice.  Solved for the highest
term they climb the table from level 0 (level = r1 + r2 + r3):

  T^{a,b,c} = [ T^{a-1,b,c} L1 - (b+1) T^{a-1,b+1,c-1}
                - (c+1) T^{a-1,b-1,c+1} - (n-a-b-c+2) T^{a-2,b,c} ] / a

and cyclically with L2 (slot 2) when climbing b, L3 (slot 3) when
climbing c.  L2 and L3 are the slot lifts of S; L1 is the slot-1 lift
of S for the triangle family but of S^T for the interweight family
(anchoring at v breaks the symmetry of the first slot).  Out-of-range
triples (negative part, or level > n) are zero.

Any triple with two or three positive parts is reachable by several
routes; `cross_check` verifies that all of them agree and checks the
index symmetries, the T = W * D' relation and exact multinomial
marginals on top.

Entries are exact rationals throughout.  For a partition that actually
exists every T entry is a count divisible by the anchor cell size, so a
negative or non-integral entry refutes existence (`scan_violations`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .exact_linalg import (LiftedMatrix, TensorVector, apply_lift, diag_lift,
                           iter_index_triples, kron_lift)
from .quotient import QuotientMatrix, cell_sizes

Triple = tuple[int, int, int]

TRIANGLE = "triangle"
INTERWEIGHT = "interweight"


def initial_triangle(sizes: Sequence) -> TensorVector:
    """Level-0 triangle vector: entry (i, i, i) = |C_i|, rest zero."""
    m = len(sizes)
    vec = [0] * m ** 3
    for i in range(m):
        vec[(i * m + i) * m + i] = sizes[i]
    return TensorVector(m, vec)


def initial_interweight(m: int) -> TensorVector:
    """Level-0 interweight vector: entry (i, i, i) = 1, rest zero."""
    vec = [0] * m ** 3
    for i in range(m):
        vec[(i * m + i) * m + i] = 1
    return TensorVector(m, vec)


def lifts_for(Q: QuotientMatrix, kind: str) -> tuple[LiftedMatrix, ...]:
    """The three slot lifts driving a table of the given kind."""
    L1 = kron_lift(Q.rows, 1)
    if kind == INTERWEIGHT:
        L1 = L1.T
    return (L1, kron_lift(Q.rows, 2), kron_lift(Q.rows, 3))


def iter_triples_of_level(level: int) -> Iterator[Triple]:
    """Triples (r1, r2, r3) with r1 + r2 + r3 = level, lexicographic."""
    for r1 in range(level + 1):
        for r2 in range(level - r1 + 1):
            yield (r1, r2, level - r1 - r2)


def derive_entry(lookup: Callable[[Triple], TensorVector],
                 lifts: tuple[LiftedMatrix, ...],
                 n: int, triple: Triple, via: int) -> TensorVector:
    """One step of the solved exchange identity, climbing part `via`.

    `lookup` must return the table vector for any triple of level at
    most level(triple) - 1 (zero when out of range).  Requires
    triple[via - 1] > 0.
    """
    a, b, c = triple
    lead = triple[via - 1]
    if lead <= 0:
        raise ValueError(f"cannot climb part {via} of {triple}")
    k = n - a - b - c + 2
    if via == 1:
        base = apply_lift(lookup((a - 1, b, c)), lifts[0])
        t1 = lookup((a - 1, b + 1, c - 1)) * (b + 1)
        t2 = lookup((a - 1, b - 1, c + 1)) * (c + 1)
        t3 = lookup((a - 2, b, c)) * k
    elif via == 2:
        base = apply_lift(lookup((a, b - 1, c)), lifts[1])
        t1 = lookup((a + 1, b - 1, c - 1)) * (a + 1)
        t2 = lookup((a - 1, b - 1, c + 1)) * (c + 1)
        t3 = lookup((a, b - 2, c)) * k
    elif via == 3:
        base = apply_lift(lookup((a, b, c - 1)), lifts[2])
        t1 = lookup((a + 1, b - 1, c - 1)) * (a + 1)
        t2 = lookup((a - 1, b + 1, c - 1)) * (b + 1)
        t3 = lookup((a, b, c - 2)) * k
    else:
        raise ValueError(f"via must be 1, 2 or 3, got {via}")
    return (base - t1 - t2 - t3) / lead


def canonical_via(triple: Triple) -> int:
    """Derivation route used when building: first positive part."""
    for via, part in enumerate(triple, start=1):
        if part > 0:
            return via
    raise ValueError("level-0 triple has no derivation route")


@dataclass
class DistributionTable:
    """All vectors T^{r1,r2,r3} (or W^...) up to a level bound.

    `standard_initial` records whether level 0 was the canonical one for
    the kind; marginal identities only hold in that case.
    """

    kind: str
    n: int
    m: int
    max_level: int
    entries: dict[Triple, TensorVector]
    standard_initial: bool = True

    def entry(self, triple: Triple) -> TensorVector:
        got = self.entries.get(triple)
        if got is not None:
            return got
        r1, r2, r3 = triple
        if min(triple) < 0 or r1 + r2 + r3 > self.n:
            return TensorVector.zero(self.m)
        raise KeyError(f"triple {triple} above max_level {self.max_level}")

    def triples(self) -> list[Triple]:
        """Stored triples in scan order: by level, then lexicographic."""
        return sorted(self.entries, key=lambda t: (sum(t), t))


def iter_table_levels(Q: QuotientMatrix, kind: str,
                      initial: TensorVector,
                      max_level: int) -> Iterator[dict[Triple, TensorVector]]:
    """Yield the table one level at a time, keeping two levels of state."""
    n = Q.n
    lifts = lifts_for(Q, kind)
    zero = TensorVector.zero(Q.m)
    prev: dict[Triple, TensorVector] = {}
    cur: dict[Triple, TensorVector] = {(0, 0, 0): initial}
    yield cur
    for level in range(1, max_level + 1):
        older, prev = prev, cur

        def lookup(t: Triple) -> TensorVector:
            got = prev.get(t)
            if got is None:
                got = older.get(t, zero)
            return got

        cur = {}
        for triple in iter_triples_of_level(level):
            cur[triple] = derive_entry(lookup, lifts, n, triple,
                                       canonical_via(triple))
        yield cur


def build_table(Q: QuotientMatrix, kind: str = TRIANGLE,
                max_level: int | None = None,
                initial: TensorVector | None = None) -> DistributionTable:
    """Construct the full distribution table up to max_level (default n)."""
    if kind not in (TRIANGLE, INTERWEIGHT):
        raise ValueError(f"unknown table kind {kind!r}")
    n = Q.n
    if max_level is None:
        max_level = n
    if not 0 <= max_level <= n:
        raise ValueError(f"max_level must lie in [0, {n}], got {max_level}")
    standard = initial is None
    if initial is None:
        if kind == TRIANGLE:
            initial = initial_triangle(cell_sizes(Q))
        else:
            initial = initial_interweight(Q.m)
    elif initial.m != Q.m:
        raise ValueError(f"initial vector has m={initial.m}, matrix m={Q.m}")
    entries: dict[Triple, TensorVector] = {}
    for level_entries in iter_table_levels(Q, kind, initial, max_level):
        entries.update(level_entries)
    return DistributionTable(kind=kind, n=n, m=Q.m, max_level=max_level,
                             entries=entries, standard_initial=standard)


def weight_distribution(Q: QuotientMatrix) -> tuple[tuple[tuple, ...], ...]:
    """Matrices W^0..W^n with W^w_ij = #{y in C_j : d(v, y) = w}, v in C_i.

    Climbs W^{w+1} = (W^w S - (n - w + 1) W^{w-1}) / (w + 1) from
    W^0 = I.  Equals the interweight slice W^{w,0,0}_{ijj}.
    """
    n, m = Q.n, Q.m
    S = Q.rows
    prev: tuple[tuple, ...] = tuple(tuple(0 for _ in range(m)) for _ in range(m))
    cur: tuple[tuple, ...] = tuple(tuple(1 if i == j else 0 for j in range(m))
                                   for i in range(m))
    out = [cur]
    for w in range(n):
        nxt = tuple(
            tuple(Fraction(
                sum(cur[i][t] * S[t][j] for t in range(m))
                - (n - w + 1) * prev[i][j], w + 1)
                for j in range(m))
            for i in range(m))
        prev, cur = cur, nxt
        out.append(cur)
    return tuple(out)


@dataclass(frozen=True)
class Violation:
    """A table entry incompatible with any actual partition."""

    triple: Triple
    index: tuple[int, int, int]
    value: Fraction
    reason: str  # "negative" or "non-integer"


def scan_violations(table: DistributionTable,
                    sizes: Sequence | None = None) -> list[Violation]:
    """All violating entries in deterministic order.

    Order: level, then lexicographic triple, then lexicographic index.
    Negative entries always violate.  Integrality is tested on
    entry / sizes[i] for triangle tables (counts per anchor vertex) and
    on the entry itself for interweight tables.
    """
    out: list[Violation] = []
    for triple in table.triples():
        vec = table.entries[triple]
        for (i, j, k) in iter_index_triples(table.m):
            v = vec.get(i, j, k)
            if v < 0:
                out.append(Violation(triple, (i, j, k), Fraction(v), "negative"))
                continue
            if table.kind == TRIANGLE:
                if sizes is None:
                    continue
                per_anchor = Fraction(v) / sizes[i - 1]
            else:
                per_anchor = Fraction(v)
            if per_anchor.denominator != 1:
                out.append(Violation(triple, (i, j, k), Fraction(v), "non-integer"))
    return out


@dataclass
class CrossCheckReport:
    """Findings of the internal-consistency audit of a table."""

    checks_run: tuple[str, ...]
    derivation_mismatches: list[tuple[Triple, int]]
    symmetry_mismatches: list[tuple[Triple, tuple[int, int, int], str]]
    pairing_mismatches: list[Triple]
    marginal_mismatches: list[tuple[Triple, int]]

    @property
    def ok(self) -> bool:
        return not (self.derivation_mismatches or self.symmetry_mismatches
                    or self.pairing_mismatches or self.marginal_mismatches)


def cross_check(table: DistributionTable, Q: QuotientMatrix,
                companion: DistributionTable | None = None) -> CrossCheckReport:
    """Audit a table against every identity it must satisfy.

    (a) every alternative climbing route reproduces the stored vector;
    (b) index symmetries.  Triangle tables count unordered structure, so
        both the swap and the cyclic relabeling hold:
        X^{r1,r2,r3}_{ijk} = X^{r2,r1,r3}_{jik} = X^{r2,r3,r1}_{jki}.
        Interweight tables are anchored in the first slot; the anchor
        cannot trade places with a leg, and the only valid symmetry is
        the exchange of the two legs: X^{r1,r2,r3}_{ijk} = X^{r1,r3,r2}_{ikj};
    (c) T = W * D' entrywise, when the companion table of the other
        kind is supplied (both must use standard initial vectors);
    (d) multinomial marginals, for standard initial vectors only:
        sum_{j,k} X^{r1,r2,r3}_{ijk} = f_i * n! / (r1! r2! r3! (n-s)!)
        with f_i = |C_i| for triangle tables and 1 for interweight.

    Failures are reported as findings, not raised: an audit of a table
    for a matrix with no partition is exactly when one wants the list.
    """
    lifts = lifts_for(Q, table.kind)
    n, m = table.n, table.m
    checks = ["derivations", "symmetry"]

    deriv: list[tuple[Triple, int]] = []
    for triple in table.triples():
        if sum(triple) == 0:
            continue
        for via in (1, 2, 3):
            if triple[via - 1] <= 0:
                continue
            redone = derive_entry(table.entry, lifts, n, triple, via)
            if redone != table.entries[triple]:
                deriv.append((triple, via))

    sym: list[tuple[Triple, tuple[int, int, int], str]] = []
    for triple in table.triples():
        r1, r2, r3 = triple
        vec = table.entries[triple]
        if table.kind == TRIANGLE:
            swapped = table.entry((r2, r1, r3))
            cycled = table.entry((r2, r3, r1))
            for (i, j, k) in iter_index_triples(m):
                v = vec.get(i, j, k)
                if v != swapped.get(j, i, k):
                    sym.append((triple, (i, j, k), "swap"))
                if v != cycled.get(j, k, i):
                    sym.append((triple, (i, j, k), "cyclic"))
        else:
            exchanged = table.entry((r1, r3, r2))
            for (i, j, k) in iter_index_triples(m):
                if vec.get(i, j, k) != exchanged.get(i, k, j):
                    sym.append((triple, (i, j, k), "exchange"))

    pairing: list[Triple] = []
    if companion is not None:
        if companion.kind == table.kind:
            raise ValueError("companion table must be of the other kind")
        tri = table if table.kind == TRIANGLE else companion
        inter = companion if table.kind == TRIANGLE else table
        if tri.standard_initial and inter.standard_initial:
            checks.append("pairing")
            D = diag_lift(cell_sizes(Q))
            for triple in sorted(set(tri.entries) & set(inter.entries),
                                 key=lambda t: (sum(t), t)):
                if tri.entries[triple] != apply_lift(inter.entries[triple], D):
                    pairing.append(triple)

    marg: list[tuple[Triple, int]] = []
    if table.standard_initial:
        checks.append("marginals")
        if table.kind == TRIANGLE:
            factors = cell_sizes(Q)
        else:
            factors = (Fraction(1),) * m
        for triple in table.triples():
            r1, r2, r3 = triple
            count = (math.factorial(n)
                     // (math.factorial(r1) * math.factorial(r2)
                         * math.factorial(r3)
                         * math.factorial(n - r1 - r2 - r3)))
            vec = table.entries[triple]
            for i in range(1, m + 1):
                total = sum(vec.get(i, j, k)
                            for j in range(1, m + 1) for k in range(1, m + 1))
                if total != factors[i - 1] * count:
                    marg.append((triple, i))

    return CrossCheckReport(
        checks_run=tuple(checks),
        derivation_mismatches=deriv,
        symmetry_mismatches=sym,
        pairing_mismatches=pairing,
        marginal_mismatches=marg,
    )
