"""Exact rational vectors and structured Kronecker lifts.

The central object is a length-m^3 row vector U indexed by triples
(i, j, k) with 1 <= i, j, k <= m, laid out with i slowest and k fastest:

    U = (U_111, U_112, ..., U_11m, U_121, ..., U_mmm).

A "lift" of an m x m matrix S acts on one of the three tensor slots of
such a vector: position 1 is S (x) I (x) I, position 2 is I (x) S (x) I,
and position 3 is I (x) I (x) S ((x) = Kronecker product).  Lifts are
stored structurally (base matrix, slot, transpose flag) and applied by
index contraction in O(m^4) time; the dense m^3 x m^3 matrix is only
ever built by `materialize`, a debugging and testing aid.

All arithmetic is over `fractions.Fraction`.  Nothing here rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction

Scalar = "int | Fraction"


def flat_index(m: int, i: int, j: int, k: int) -> int:
    """Position of entry (i, j, k) (1-based) in the flat layout."""
    return ((i - 1) * m + (j - 1)) * m + (k - 1)


def iter_index_triples(m: int) -> Iterator[tuple[int, int, int]]:
    """All (i, j, k) in flat-layout order: i slowest, k fastest."""
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                yield (i, j, k)


class TensorVector:
    """Row vector of m^3 exact rationals indexed by (i, j, k), 1-based.

    Treat instances as immutable; all operations return new vectors.
    """

    __slots__ = ("m", "entries")

    def __init__(self, m: int, entries: Iterable) -> None:
        entries = tuple(entries)
        if len(entries) != m ** 3:
            raise ValueError(
                f"expected {m ** 3} entries for m={m}, got {len(entries)}")
        self.m = m
        self.entries = entries

    @classmethod
    def zero(cls, m: int) -> "TensorVector":
        return cls(m, (0,) * m ** 3)

    @classmethod
    def unit(cls, m: int, triple: tuple[int, int, int]) -> "TensorVector":
        i, j, k = triple
        pos = flat_index(m, i, j, k)
        return cls(m, tuple(1 if p == pos else 0 for p in range(m ** 3)))

    def get(self, i: int, j: int, k: int):
        return self.entries[flat_index(self.m, i, j, k)]

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def _check_mate(self, other: "TensorVector") -> None:
        if self.m != other.m:
            raise ValueError(f"dimension mismatch: m={self.m} vs m={other.m}")

    def __add__(self, other: "TensorVector") -> "TensorVector":
        self._check_mate(other)
        return TensorVector(self.m, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "TensorVector") -> "TensorVector":
        self._check_mate(other)
        return TensorVector(self.m, (a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, c) -> "TensorVector":
        return TensorVector(self.m, (e * c for e in self.entries))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "TensorVector":
        if c == 0:
            raise ZeroDivisionError("division of tensor vector by zero")
        return TensorVector(self.m, (Fraction(e, 1) / c for e in self.entries))

    def __neg__(self) -> "TensorVector":
        return TensorVector(self.m, (-e for e in self.entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.m == other.m and all(
            a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self) -> int:  # entries may mix int/Fraction; normalize
        return hash((self.m, tuple(Fraction(e) for e in self.entries)))

    def __repr__(self) -> str:
        return f"TensorVector(m={self.m}, {list(self.entries)!r})"


def _as_rows(S: Sequence[Sequence]) -> tuple[tuple, ...]:
    rows = tuple(tuple(row) for row in S)
    if any(len(row) != len(rows) for row in rows):
        raise ValueError("matrix is not square")
    return rows


@dataclass(frozen=True)
class LiftedMatrix:
    """An m x m matrix acting on one slot of a TensorVector.

    `base` is the matrix, `position` in {1, 2, 3} the slot it contracts,
    `transposed` whether the transpose acts instead.
    """

    base: tuple[tuple, ...]
    position: int
    transposed: bool = False

    @property
    def m(self) -> int:
        return len(self.base)

    @property
    def T(self) -> "LiftedMatrix":
        return LiftedMatrix(self.base, self.position, not self.transposed)


def kron_lift(S: Sequence[Sequence], position: int) -> LiftedMatrix:
    """Lift of S at the given slot: e.g. position 2 means I (x) S (x) I."""
    if position not in (1, 2, 3):
        raise ValueError(f"position must be 1, 2 or 3, got {position}")
    return LiftedMatrix(_as_rows(S), position)


def diag_lift(sizes: Sequence) -> LiftedMatrix:
    """Diagonal lift: multiplies entry (i, j, k) by sizes[i].

    Equals kron_lift(diag(sizes), 1).  Entries must be positive.
    """
    sizes = tuple(sizes)
    if any(not s > 0 for s in sizes):
        raise ValueError(f"diagonal entries must be positive, got {sizes}")
    m = len(sizes)
    base = tuple(tuple(sizes[i] if i == j else 0 for j in range(m))
                 for i in range(m))
    return LiftedMatrix(base, 1)


def apply_lift(U: TensorVector, L: LiftedMatrix) -> TensorVector:
    """Row-vector product U * L without materializing L.

    Contracting slot p replaces index t with index i there:
    position 1 gives V_ijk = sum_t U_tjk S_ti (or S_it when transposed),
    and similarly at the other slots.  O(m^4) scalar products.
    """
    m = L.m
    if U.m != m:
        raise ValueError(f"dimension mismatch: vector m={U.m}, lift m={m}")
    S = L.base
    # View U as shape (A, m, B): the contracted slot has stride B.
    if L.position == 1:
        A, B = 1, m * m
    elif L.position == 2:
        A, B = m, m
    else:
        A, B = m * m, 1
    ent = U.entries
    out = [0] * (m ** 3)
    for a in range(A):
        arow = a * m * B
        for b in range(B):
            off = arow + b
            for i in range(m):
                acc = 0
                for t in range(m):
                    s = S[i][t] if L.transposed else S[t][i]
                    if s:
                        acc += ent[off + t * B] * s
                out[off + i * B] = acc
    return TensorVector(m, out)


def commutes(A: LiftedMatrix, B: LiftedMatrix) -> bool:
    """Exact commutation test: AB = BA on every basis vector of length m^3."""
    if A.m != B.m:
        raise ValueError(f"dimension mismatch: m={A.m} vs m={B.m}")
    m = A.m
    for triple in iter_index_triples(m):
        e = TensorVector.unit(m, triple)
        if apply_lift(apply_lift(e, A), B) != apply_lift(apply_lift(e, B), A):
            return False
    return True


def materialize(L: LiftedMatrix) -> tuple[tuple, ...]:
    """Dense m^3 x m^3 matrix of the lift.  Debug and test aid only.

    Row r is the image of the r-th basis row vector, so for any U,
    U * L == vec_mat(U.entries, materialize(L)).
    """
    m = L.m
    rows = []
    for triple in iter_index_triples(m):
        rows.append(apply_lift(TensorVector.unit(m, triple), L).entries)
    return tuple(rows)


# ---------------------------------------------------------------------------
# dense exact helpers (tests, characteristic polynomials, materialized checks)

def mat_identity(size: int) -> tuple[tuple, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(size))
                 for i in range(size))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[tuple, ...]:
    rows_a, rows_b = len(A), len(B)
    if any(len(r) != rows_b for r in A):
        raise ValueError("inner dimensions do not match")
    cols_b = len(B[0])
    out = []
    for r in A:
        out.append(tuple(
            sum(r[t] * B[t][c] for t in range(rows_b)) for c in range(cols_b)))
    return tuple(out)


def mat_add(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[tuple, ...]:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A: Sequence[Sequence], c) -> tuple[tuple, ...]:
    return tuple(tuple(a * c for a in row) for row in A)


def vec_mat(v: Sequence, M: Sequence[Sequence]) -> tuple:
    if len(v) != len(M):
        raise ValueError("inner dimensions do not match")
    cols = len(M[0])
    return tuple(sum(v[t] * M[t][c] for t in range(len(v))) for c in range(cols))


def kron3(X: Sequence[Sequence], Y: Sequence[Sequence],
          Z: Sequence[Sequence]) -> tuple[tuple, ...]:
    """Kronecker product X (x) Y (x) Z of three square matrices (test aid)."""
    mx, my, mz = len(X), len(Y), len(Z)
    size = mx * my * mz
    out = []
    for r in range(size):
        i1, rest = divmod(r, my * mz)
        j1, k1 = divmod(rest, mz)
        row = []
        for c in range(size):
            i2, rest2 = divmod(c, my * mz)
            j2, k2 = divmod(rest2, mz)
            row.append(X[i1][i2] * Y[j1][j2] * Z[k1][k2])
        out.append(tuple(row))
    return tuple(out)
