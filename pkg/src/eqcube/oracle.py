"""Brute-force ground truth on explicit vertex sets of small cubes.

Vertices of the n-cube are integers 0 .. 2^n - 1; bit i is coordinate i
and Hamming distance is the popcount of an XOR.  Everything here counts
directly over vertex tuples, with no recursion and no lifts, so it can
stand against the analytic machinery as an independent witness.  Costs
are exponential (8^n vertex triples for the triangle count), hence the
hard caps with an explicit override flag.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_linalg import TensorVector, flat_index
from .quotient import QuotientMatrix, validate_quotient
from .recursion import INTERWEIGHT, TRIANGLE, DistributionTable, Triple


def hamming(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def neighbors(v: int, n: int) -> list[int]:
    return [v ^ (1 << i) for i in range(n)]


def _distance_triple_index(d_xy: int, d_vy: int, d_vx: int) -> Triple | None:
    """Solve d(x,y) = r2 + r3, d(v,y) = r1 + r3, d(v,x) = r1 + r2.

    Returns None when the system has no nonnegative solution; on the
    cube it always does for realized distances (even perimeter plus the
    triangle inequality).
    """
    s = d_xy + d_vy + d_vx
    if s % 2:
        return None
    half = s // 2
    r1, r2, r3 = half - d_xy, half - d_vy, half - d_vx
    if r1 < 0 or r2 < 0 or r3 < 0:
        return None
    return (r1, r2, r3)


@dataclass(frozen=True)
class PartitionInstance:
    """An explicit partition of the n-cube into m labeled cells.

    `color[v]` is the 1-based cell label of vertex v.
    """

    n: int
    m: int
    color: tuple[int, ...]

    @classmethod
    def from_cells(cls, n: int, cells: Sequence[Iterable[int]]) -> "PartitionInstance":
        if not 1 <= n <= 14:
            raise ValueError(f"explicit partitions are stored for n <= 14; got {n}")
        size = 1 << n
        color = [0] * size
        m = len(cells)
        for label, cell in enumerate(cells, start=1):
            empty = True
            for v in cell:
                if not 0 <= v < size:
                    raise ValueError(f"vertex {v} outside the {n}-cube")
                if color[v]:
                    raise ValueError(f"vertex {v} assigned to two cells")
                color[v] = label
                empty = False
            if empty:
                raise ValueError(f"cell {label} is empty")
        missing = [v for v in range(size) if color[v] == 0]
        if missing:
            raise ValueError(f"vertices not covered: {missing[:8]}")
        return cls(n=n, m=m, color=tuple(color))

    def cells(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.m)]
        for v, c in enumerate(self.color):
            out[c - 1].append(v)
        return out

    def cell_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.m
        for c in self.color:
            sizes[c - 1] += 1
        return tuple(sizes)


def singleton_partition(n: int) -> PartitionInstance:
    """Every vertex its own cell; the quotient is the cube's adjacency matrix."""
    size = 1 << n
    return PartitionInstance(n=n, m=size,
                             color=tuple(range(1, size + 1)))


def parity_partition(n: int) -> PartitionInstance:
    """Two cells by coordinate-sum parity (even weight = cell 1)."""
    color = tuple(1 if v.bit_count() % 2 == 0 else 2 for v in range(1 << n))
    return PartitionInstance(n=n, m=2, color=color)


class NotEquitable(ValueError):
    """Witness that a partition is not equitable."""

    def __init__(self, vertex: int, row_got: tuple[int, ...],
                 row_expected: tuple[int, ...]) -> None:
        self.vertex = vertex
        self.row_got = row_got
        self.row_expected = row_expected
        super().__init__(
            f"vertex {vertex} sees neighbor counts {row_got}, but its cell "
            f"requires {row_expected}")


def verify_equitable(P: PartitionInstance) -> QuotientMatrix:
    """Check neighbor-count regularity; return the quotient matrix.

    Raises NotEquitable with the first offending vertex otherwise.
    """
    rows: dict[int, tuple[int, ...]] = {}
    for v in range(1 << P.n):
        counts = [0] * P.m
        for u in neighbors(v, P.n):
            counts[P.color[u] - 1] += 1
        counts = tuple(counts)
        label = P.color[v]
        seen = rows.get(label)
        if seen is None:
            rows[label] = counts
        elif seen != counts:
            raise NotEquitable(v, counts, seen)
    S = [list(rows[label]) for label in range(1, P.m + 1)]
    return validate_quotient(S, P.n)


def multi_neighborhood(X: "Mapping[int, int] | Iterable[int]",
                       n: int) -> dict[int, int]:
    """Multiset of neighbors of a multiset of vertices.

    Accepts a plain iterable (multiplicities 1 each occurrence) or a
    vertex -> multiplicity mapping; returns the latter form.
    """
    if isinstance(X, Mapping):
        items = X.items()
    else:
        counts: dict[int, int] = {}
        for v in X:
            counts[v] = counts.get(v, 0) + 1
        items = counts.items()
    out: dict[int, int] = {}
    for v, mult in items:
        for u in neighbors(v, n):
            out[u] = out.get(u, 0) + mult
    return {v: c for v, c in out.items() if c}


def spectrum_of_multiset(X: "Mapping[int, int] | Iterable[int]",
                         P: PartitionInstance) -> tuple[int, ...]:
    """Cell-wise totals of a vertex multiset: component i sums the
    multiplicities over C_i."""
    if not isinstance(X, Mapping):
        tmp: dict[int, int] = {}
        for v in X:
            tmp[v] = tmp.get(v, 0) + 1
        X = tmp
    out = [0] * P.m
    for v, mult in X.items():
        out[P.color[v] - 1] += mult
    return tuple(out)


def _empty_counts(n: int, m: int) -> dict[Triple, list]:
    out: dict[Triple, list] = {}
    for level in range(n + 1):
        for r1 in range(level + 1):
            for r2 in range(level - r1 + 1):
                out[(r1, r2, level - r1 - r2)] = [0] * m ** 3
    return out


def brute_triangle(P: PartitionInstance, force: bool = False) -> DistributionTable:
    """Count all 8^n ordered vertex triples into a triangle table.

    Capped at n <= 6 unless force=True; the loop is cubic in 2^n.
    """
    if P.n > 6 and not force:
        raise ValueError(f"n = {P.n} exceeds the brute-force cap of 6; "
                         f"pass force=True to run anyway")
    n, m = P.n, P.m
    size = 1 << n
    counts = _empty_counts(n, m)
    color = P.color
    for v in range(size):
        i = color[v] - 1
        for x in range(size):
            j = color[x] - 1
            d_vx = hamming(v, x)
            base = (i * m + j) * m
            for y in range(size):
                triple = _distance_triple_index(hamming(x, y),
                                                hamming(v, y), d_vx)
                counts[triple][base + color[y] - 1] += 1
    entries = {t: TensorVector(m, vec) for t, vec in counts.items()}
    return DistributionTable(kind=TRIANGLE, n=n, m=m, max_level=n,
                             entries=entries, standard_initial=True)


def brute_interweight(P: PartitionInstance, v: int,
                      force: bool = False) -> DistributionTable:
    """Count vertex pairs (x, y) anchored at v into an interweight table.

    Only the slice i = color(v) is populated; other anchors contribute
    nothing to a single-vertex table.  Capped at n <= 7 unless force.
    """
    if P.n > 7 and not force:
        raise ValueError(f"n = {P.n} exceeds the brute-force cap of 7; "
                         f"pass force=True to run anyway")
    n, m = P.n, P.m
    size = 1 << n
    if not 0 <= v < size:
        raise ValueError(f"vertex {v} outside the {n}-cube")
    counts = _empty_counts(n, m)
    color = P.color
    i = color[v] - 1
    for x in range(size):
        j = color[x] - 1
        d_vx = hamming(v, x)
        base = (i * m + j) * m
        for y in range(size):
            triple = _distance_triple_index(hamming(x, y),
                                            hamming(v, y), d_vx)
            counts[triple][base + color[y] - 1] += 1
    entries = {t: TensorVector(m, vec) for t, vec in counts.items()}
    return DistributionTable(kind=INTERWEIGHT, n=n, m=m, max_level=n,
                             entries=entries, standard_initial=True)


@dataclass(frozen=True)
class InvarianceResult:
    """Whether per-vertex interweight tables are constant on every cell."""

    status: str  # "holds", "fails", or "inapplicable"
    witness: tuple | None = None
    detail: str = ""


def strong_invariance_check(P: PartitionInstance) -> InvarianceResult:
    """Compare the anchored tables of all members of each cell.

    For an equitable partition they must coincide cell-wise.  If the
    partition is not even equitable the check is inapplicable and says
    so instead of raising.
    """
    try:
        verify_equitable(P)
    except NotEquitable as exc:
        return InvarianceResult(status="inapplicable",
                                witness=(exc.vertex,),
                                detail=str(exc))
    reference: dict[int, tuple[int, DistributionTable]] = {}
    for v in range(1 << P.n):
        label = P.color[v]
        table = brute_interweight(P, v, force=True)
        if label not in reference:
            reference[label] = (v, table)
            continue
        v0, table0 = reference[label]
        for triple in sorted(table.entries, key=lambda t: (sum(t), t)):
            if table.entries[triple] != table0.entries[triple]:
                return InvarianceResult(
                    status="fails",
                    witness=(label, v0, v, triple),
                    detail=f"cell {label}: anchors {v0} and {v} disagree "
                           f"at {triple}")
    return InvarianceResult(status="holds")


def distance_distribution(X: Sequence[int]) -> list[int]:
    """Sorted multiset of pairwise distances of at least two vertices."""
    if len(X) < 2:
        raise ValueError("need at least two vertices")
    return sorted(hamming(u, v) for u, v in itertools.combinations(X, 2))


def set_triangle_multiset(X: Sequence[int], n: int) -> list[Triple]:
    """Sorted triangle indices of all unordered 3-subsets of X.

    Each 3-subset {u, v, w} has pairwise distances with even perimeter
    on the cube, giving index parts (semiperimeter - distance); the
    parts are reported in ascending order per subset, and the list of
    triples is sorted.
    """
    if len(X) < 3:
        raise ValueError("need at least three vertices")
    out: list[Triple] = []
    for u, v, w in itertools.combinations(X, 3):
        a, b, c = hamming(u, v), hamming(u, w), hamming(v, w)
        s = a + b + c
        if s % 2:
            raise ValueError(
                f"odd distance perimeter for {{{u}, {v}, {w}}}; "
                f"not a cube configuration")
        half = s // 2
        out.append(tuple(sorted((half - a, half - b, half - c))))
    return sorted(out)


# ---------------------------------------------------------------------------
# perfect structures: rational cell-valued vertex functions

@dataclass(frozen=True)
class PerfectStructure:
    """A function from vertices to rational m-vectors such that the
    neighbor sum at every vertex equals the vertex's own value times S."""

    n: int
    m: int
    values: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, n: int, rows: Sequence[Sequence]) -> "PerfectStructure":
        size = 1 << n
        if len(rows) != size:
            raise ValueError(f"expected {size} value rows, got {len(rows)}")
        vals = tuple(tuple(Fraction(x) for x in row) for row in rows)
        m = len(vals[0])
        if any(len(row) != m for row in vals):
            raise ValueError("value rows have inconsistent lengths")
        return cls(n=n, m=m, values=vals)


def verify_perfect_structure(PS: PerfectStructure,
                             Q: QuotientMatrix) -> tuple[bool, int | None]:
    """Check sum_{u ~ x} value(u) = value(x) * S at every vertex.

    Returns (True, None) or (False, first offending vertex).
    """
    if Q.m != PS.m or Q.n != PS.n:
        raise ValueError("structure and matrix dimensions disagree")
    S = Q.rows
    for x in range(1 << PS.n):
        want = tuple(sum(PS.values[x][t] * S[t][j] for t in range(PS.m))
                     for j in range(PS.m))
        got = [Fraction(0)] * PS.m
        for u in neighbors(x, PS.n):
            for j in range(PS.m):
                got[j] += PS.values[u][j]
        if tuple(got) != want:
            return (False, x)
    return (True, None)


def ps_initial_triangle(PS: PerfectStructure) -> TensorVector:
    """Level-0 vector sum_v value(v) (x) value(v) (x) value(v)."""
    m = PS.m
    vec = [Fraction(0)] * m ** 3
    for v in range(1 << PS.n):
        row = PS.values[v]
        for i in range(m):
            if row[i] == 0:
                continue
            for j in range(m):
                if row[j] == 0:
                    continue
                part = row[i] * row[j]
                base = (i * m + j) * m
                for k in range(m):
                    vec[base + k] += part * row[k]
    return TensorVector(m, vec)


def ps_brute_interweight(PS: PerfectStructure, v: int) -> dict[Triple, TensorVector]:
    """Anchored pair sums for a perfect structure: at index (r1, r2, r3),
    entry (i, j, k) is value(v)_i * sum over pairs (x, y) at the matching
    distances of value(x)_j * value(y)_k."""
    n, m = PS.n, PS.m
    size = 1 << n
    if not 0 <= v < size:
        raise ValueError(f"vertex {v} outside the {n}-cube")
    counts: dict[Triple, list] = {
        t: [Fraction(0)] * m ** 3 for t in _empty_counts(n, m)}
    anchor = PS.values[v]
    for x in range(size):
        d_vx = hamming(v, x)
        rx = PS.values[x]
        for y in range(size):
            triple = _distance_triple_index(hamming(x, y), hamming(v, y), d_vx)
            ry = PS.values[y]
            vec = counts[triple]
            for i in range(m):
                if anchor[i] == 0:
                    continue
                for j in range(m):
                    part = anchor[i] * rx[j]
                    if part == 0:
                        continue
                    base = (i * m + j) * m
                    for k in range(m):
                        vec[base + k] += part * ry[k]
    return {t: TensorVector(m, vec) for t, vec in counts.items()}


# ---------------------------------------------------------------------------
# exhaustive search for partitions with a prescribed quotient matrix

@dataclass
class SearchResult:
    partitions: list[PartitionInstance]
    complete: bool  # False when the node budget ran out


def search_partitions(n: int, S: Sequence[Sequence[int]] | QuotientMatrix,
                      limit: int = 1,
                      pins: Mapping[int, int] | None = None,
                      max_nodes: int = 50_000_000) -> SearchResult:
    """Backtracking search for explicit partitions realizing S.

    Vertices are assigned in index order, cells tried in label order, so
    results are deterministic.  `pins` forces vertex -> cell choices
    before the search starts.  Pruning: a vertex's assigned-neighbor
    counts may never exceed its row of S.  No symmetry reduction is
    attempted; `limit` bounds the number of partitions returned and
    `max_nodes` the number of assignments tried (exceeding it returns
    the partial result with complete=False).
    """
    Q = S if isinstance(S, QuotientMatrix) else validate_quotient(S, n)
    if Q.n != n:
        raise ValueError(f"matrix is for n = {Q.n}, search asked for n = {n}")
    m = Q.m
    rows = Q.rows
    size = 1 << n
    color = [0] * size  # 0 = unassigned
    # assigned-neighbor counts per vertex and cell label
    counts = [[0] * (m + 1) for _ in range(size)]
    nbrs = [neighbors(v, n) for v in range(size)]
    pins = dict(pins or {})
    for v, label in pins.items():
        if not 0 <= v < size:
            raise ValueError(f"pinned vertex {v} outside the {n}-cube")
        if not 1 <= label <= m:
            raise ValueError(f"pinned label {label} outside 1..{m}")

    found: list[PartitionInstance] = []
    nodes = 0
    budget_ok = True

    def feasible(v: int, label: int) -> bool:
        row = rows[label - 1]
        # v's already-assigned neighbors must not overflow row `label`
        cnt = counts[v]
        for j in range(1, m + 1):
            if cnt[j] > row[j - 1]:
                return False
        # and v must not overflow any assigned neighbor's row
        for u in nbrs[v]:
            cu = color[u]
            if cu and counts[u][label] + 1 > rows[cu - 1][label - 1]:
                return False
        return True

    def place(v: int, label: int) -> None:
        color[v] = label
        for u in nbrs[v]:
            counts[u][label] += 1

    def unplace(v: int, label: int) -> None:
        color[v] = 0
        for u in nbrs[v]:
            counts[u][label] -= 1

    def extend(v: int) -> bool:
        """Depth-first over vertices; returns False to stop the search."""
        nonlocal nodes, budget_ok
        if v == size:
            if len(set(color)) < m:
                return True  # some cell empty; not a partition into m cells
            inst = PartitionInstance(n=n, m=m, color=tuple(color))
            try:
                got = verify_equitable(inst)
            except NotEquitable:
                return True
            if got.rows == rows:
                found.append(inst)
                if len(found) >= limit:
                    return False
            return True
        pinned = pins.get(v)
        labels = (pinned,) if pinned is not None else range(1, m + 1)
        for label in labels:
            nodes += 1
            if nodes > max_nodes:
                budget_ok = False
                return False
            if not feasible(v, label):
                continue
            place(v, label)
            keep_going = extend(v + 1)
            unplace(v, label)
            if not keep_going:
                return False
        return True

    extend(0)
    return SearchResult(partitions=found, complete=budget_ok)
