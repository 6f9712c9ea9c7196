"""Trivariate generalized Krawtchouk polynomials over Q[n].

P^{r1,r2,r3}(x, y, z) is the polynomial of degree at most r1 + r2 + r3
that maps the level-0 vector of any distribution table to its level
(r1, r2, r3) vector when x, y, z are replaced by the three slot lifts
of the quotient matrix (`eval_at_lifts`).  Three independent
constructions are provided and their agreement is part of the tests:

* `poly_recursive` climbs the same exchange identities that drive the
  table recursion, using the cyclic substitution
  P^{0,b,c}(x, y, z) = P^{b,c,0}(y, z, x) when the first part is zero;

* `poly_direct` expands a closed triple sum of signed quadrinomial
  coefficients in the four quarter arguments (n +- x +- y +- z)/4;

* `genfun_coeff` reads the coefficient of X^{r1} Y^{r2} Z^{r3} off the
  truncated four-factor product

      prod_f (1 +- X +- Y +- Z)^{(n +- x +- y +- z)/4},

  expanding each factor by the generalized binomial series.

At r2 = r3 = 0 the family degenerates to the classical Krawtchouk
polynomial: P^{r,0,0}(x, y, z) = K_r((n - x)/2).

Polynomials are exact: monomials x^i y^j z^k n^d with Fraction
coefficients.  `render` produces the canonical text form (graded-lex
monomial order, common denominator pulled out).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exact_linalg import TensorVector, apply_lift, iter_index_triples
from .quotient import QuotientMatrix, cell_sizes
from .recursion import (INTERWEIGHT, TRIANGLE, initial_interweight,
                        initial_triangle, lifts_for)

Mono = "tuple[int, int, int, int]"  # exponents of x, y, z, n


class TriPoly:
    """Polynomial in x, y, z and the dimension symbol n over Q.

    Stored as a dict mapping exponent 4-tuples (x, y, z, n) to nonzero
    rational coefficients.  Treat instances as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None) -> None:
        self.terms = {mono: c for mono, c in (terms or {}).items() if c != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, c) -> "TriPoly":
        return cls({(0, 0, 0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree_xyz(self) -> int:
        if not self.terms:
            return 0
        return max(dx + dy + dz for (dx, dy, dz, _) in self.terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "TriPoly") -> "TriPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return TriPoly(out)

    def __sub__(self, other: "TriPoly") -> "TriPoly":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) - c
        return TriPoly(out)

    def __neg__(self) -> "TriPoly":
        return TriPoly({mono: -c for mono, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TriPoly):
            out: dict = {}
            for (a1, b1, c1, d1), u in self.terms.items():
                for (a2, b2, c2, d2), v in other.terms.items():
                    mono = (a1 + a2, b1 + b2, c1 + c2, d1 + d2)
                    out[mono] = out.get(mono, 0) + u * v
            return TriPoly(out)
        return TriPoly({mono: c * other for mono, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "TriPoly":
        return TriPoly({mono: Fraction(v) / c for mono, v in self.terms.items()})

    def __pow__(self, e: int) -> "TriPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = ONE
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((m, Fraction(c)) for m, c in self.terms.items()))

    def __repr__(self) -> str:
        return f"TriPoly({self.render()!r})"

    # -- substitutions -------------------------------------------------

    def rotated(self) -> "TriPoly":
        """The polynomial p(y, z, x): substitute x->y, y->z, z->x."""
        return TriPoly({(c_, a, b, d): v
                        for (a, b, c_, d), v in self.terms.items()})

    def substitute_x(self, repl: "TriPoly") -> "TriPoly":
        """Substitute repl for x; only valid when y and z are absent."""
        out = ZERO
        for (dx, dy, dz, dn), c in self.terms.items():
            if dy or dz:
                raise ValueError("substitute_x requires a polynomial in x alone")
            out = out + TriPoly({(0, 0, 0, dn): c}) * repl ** dx
        return out

    def specialize_n(self, n_value: int) -> dict[tuple[int, int, int], Fraction]:
        """Collapse the n variable at a fixed dimension."""
        out: dict[tuple[int, int, int], Fraction] = {}
        for (dx, dy, dz, dn), c in self.terms.items():
            key = (dx, dy, dz)
            out[key] = out.get(key, Fraction(0)) + Fraction(c) * n_value ** dn
        return {k: v for k, v in out.items() if v != 0}

    # -- canonical text form --------------------------------------------

    def render(self) -> str:
        """Canonical string: graded-lex in (x, y, z) descending, n-parts
        with leading-positive orientation, common denominator pulled out."""
        if not self.terms:
            return "0"
        groups: dict[tuple[int, int, int], dict[int, Fraction]] = {}
        den = 1
        for (dx, dy, dz, dn), c in self.terms.items():
            c = Fraction(c)
            groups.setdefault((dx, dy, dz), {})[dn] = c
            den = den * c.denominator // math.gcd(den, c.denominator)
        ordered = sorted(groups,
                         key=lambda e: (-(e[0] + e[1] + e[2]),
                                        (-e[0], -e[1], -e[2])))
        pieces: list[tuple[int, str]] = []
        for mono in ordered:
            nterms = sorted(((dn, int(c * den))
                             for dn, c in groups[mono].items()),
                            key=lambda t: -t[0])
            if nterms[0][1] < 0 and nterms[-1][1] > 0:
                nterms.reverse()
            if mono == (0, 0, 0):
                for dn, c in nterms:
                    pieces.append((1 if c > 0 else -1, _n_term(abs(c), dn)))
            elif len(nterms) == 1:
                dn, c = nterms[0]
                pieces.append((1 if c > 0 else -1,
                               _scaled_mono(abs(c), dn, mono)))
            else:
                dn0, c0 = nterms[0]
                inner = ("-" if c0 < 0 else "") + _n_term(abs(c0), dn0)
                for dn, c in nterms[1:]:
                    inner += ("-" if c < 0 else "+") + _n_term(abs(c), dn)
                pieces.append((1, f"({inner})*{_mono_str(mono)}"))
        body = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            body += (" - " if sign < 0 else " + ") + text
        return f"({body})/{den}" if den != 1 else body


def _mono_str(mono: tuple[int, int, int]) -> str:
    parts = []
    for name, e in zip("xyz", mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _n_term(c: int, dn: int) -> str:
    if dn == 0:
        return str(c)
    npart = "n" if dn == 1 else f"n^{dn}"
    return npart if c == 1 else f"{c}*{npart}"


def _scaled_mono(c: int, dn: int, mono: tuple[int, int, int]) -> str:
    ms = _mono_str(mono)
    if dn == 0:
        return ms if c == 1 else f"{c}*{ms}"
    return f"{_n_term(c, dn)}*{ms}"


ZERO = TriPoly()
ONE = TriPoly({(0, 0, 0, 0): 1})
X = TriPoly({(1, 0, 0, 0): 1})
Y = TriPoly({(0, 1, 0, 0): 1})
Z = TriPoly({(0, 0, 1, 0): 1})
N = TriPoly({(0, 0, 0, 1): 1})


def falling_factorial(p: TriPoly, length: int) -> TriPoly:
    """p (p - 1) ... (p - length + 1); the empty product is 1."""
    out = ONE
    for t in range(length):
        out = out * (p - TriPoly.const(t))
    return out


# ---------------------------------------------------------------------------
# route 1: the exchange-identity recursion

_P_CACHE: dict[tuple[int, int, int], TriPoly] = {}


def poly_recursive(r1: int, r2: int, r3: int) -> TriPoly:
    """Route 1: climb the solved exchange identity for the first part,

        P^{a,b,c} = [ x P^{a-1,b,c} - (n-a-b-c+2) P^{a-2,b,c}
                      - (b+1) P^{a-1,b+1,c-1} - (c+1) P^{a-1,b-1,c+1} ] / a,

    rotating the parts cyclically when the first one is zero.
    """
    if min(r1, r2, r3) < 0:
        raise ValueError(f"negative part in ({r1}, {r2}, {r3})")
    return _P(r1, r2, r3)


def _P(a: int, b: int, c: int) -> TriPoly:
    if a < 0 or b < 0 or c < 0:
        return ZERO
    key = (a, b, c)
    got = _P_CACHE.get(key)
    if got is not None:
        return got
    if a == b == c == 0:
        out = ONE
    elif a > 0:
        out = (X * _P(a - 1, b, c)
               - (N + TriPoly.const(2 - a - b - c)) * _P(a - 2, b, c)
               - (b + 1) * _P(a - 1, b + 1, c - 1)
               - (c + 1) * _P(a - 1, b - 1, c + 1)) / a
    else:
        out = _P(b, c, a).rotated()
    _P_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# route 2: the closed triple sum

# quarter arguments (n + s1 x + s2 y + s3 z)/4 for the four sign patterns
_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
_QUARTERS = tuple(
    (N + s1 * X + s2 * Y + s3 * Z) / 4 for (s1, s2, s3) in _SIGNS)


@lru_cache(maxsize=None)
def _quarter_ff(f: int, length: int) -> TriPoly:
    if length == 0:
        return ONE
    return _quarter_ff(f, length - 1) * (
        _QUARTERS[f] - TriPoly.const(length - 1))


@lru_cache(maxsize=None)
def _quad(f: int, a: int, b: int, c: int) -> TriPoly:
    """Quadrinomial coefficient of the f-th quarter argument:
    ff(delta_f, a+b+c) / (a! b! c!)."""
    return _quarter_ff(f, a + b + c) / (
        math.factorial(a) * math.factorial(b) * math.factorial(c))


def _tuples_sum_at_most(r: int) -> Iterator[tuple[int, int, int]]:
    for i in range(r + 1):
        for j in range(r - i + 1):
            for k in range(r - i - j + 1):
                yield (i, j, k)


@lru_cache(maxsize=None)
def _scaled_ff(f: int, length: int) -> TriPoly:
    """4^length times the length-term falling factorial of the f-th quarter
    argument.  Integer coefficients throughout."""
    if length == 0:
        return ONE
    s1, s2, s3 = _SIGNS[f]
    linear = TriPoly({(0, 0, 0, 1): 1, (1, 0, 0, 0): s1, (0, 1, 0, 0): s2,
                      (0, 0, 1, 0): s3, (0, 0, 0, 0): -4 * (length - 1)})
    return _scaled_ff(f, length - 1) * linear


@lru_cache(maxsize=None)
def _ff_product(sa: int, sb: int, sc: int, s0: int) -> TriPoly:
    return ((_scaled_ff(1, sa) * _scaled_ff(2, sb))
            * (_scaled_ff(3, sc) * _scaled_ff(0, s0)))


def poly_direct(r1: int, r2: int, r3: int) -> TriPoly:
    """Route 2: signed sum of quadrinomial products over nine indices.

    The three index groups feed the last three quarter arguments; the
    first one takes what is left of (r1, r2, r3).  The falling-factorial
    part of a quadrinomial depends only on the total of its three indices,
    so the polynomial factors are shared across splits with equal group
    totals; each split itself contributes an integer multinomial weight,
    and one exact division restores the common denominator at the end.
    """
    if min(r1, r2, r3) < 0:
        raise ValueError(f"negative part in ({r1}, {r2}, {r3})")
    weights: dict[tuple[int, int, int], int] = {}
    for (i1, i2, i3) in _tuples_sum_at_most(r1 + r2 + r3):
        if i1 > r1 or i2 > r2 or i3 > r3:
            continue
        for (j1, j2, j3) in _tuples_sum_at_most(r1 - i1 + r2 - i2 + r3 - i3):
            if i1 + j1 > r1 or i2 + j2 > r2 or i3 + j3 > r3:
                continue
            w_ij = (math.comb(r1, i1) * math.comb(r1 - i1, j1)
                    * math.comb(r2, i2) * math.comb(r2 - i2, j2)
                    * math.comb(r3, i3) * math.comb(r3 - i3, j3))
            for k1 in range(r1 - i1 - j1 + 1):
                for k2 in range(r2 - i2 - j2 + 1):
                    for k3 in range(r3 - i3 - j3 + 1):
                        sign = -1 if (i2 + i3 + j1 + j3 + k1 + k2) % 2 else 1
                        w = (w_ij * math.comb(r1 - i1 - j1, k1)
                             * math.comb(r2 - i2 - j2, k2)
                             * math.comb(r3 - i3 - j3, k3))
                        key = (i1 + i2 + i3, j1 + j2 + j3, k1 + k2 + k3)
                        weights[key] = weights.get(key, 0) + sign * w
    total = ZERO
    R = r1 + r2 + r3
    for (sa, sb, sc), w in sorted(weights.items()):
        if w:
            total = total + w * _ff_product(sa, sb, sc, R - sa - sb - sc)
    denom = (4 ** R * math.factorial(r1) * math.factorial(r2)
             * math.factorial(r3))
    return total / denom


# ---------------------------------------------------------------------------
# route 3: generating-function coefficient extraction

@lru_cache(maxsize=None)
def _genfun_product(R: int) -> dict[tuple[int, int, int], TriPoly]:
    """Truncated product of the four factors (1 + s1 X + s2 Y + s3 Z)^delta_f,
    keeping series terms of total degree at most R.  Coefficient of
    X^a Y^b Z^c in factor f is quad(delta_f; a, b, c) s1^a s2^b s3^c."""
    acc: dict[tuple[int, int, int], TriPoly] = {(0, 0, 0): ONE}
    for f in range(4):
        s1, s2, s3 = _SIGNS[f]
        factor = {
            (a, b, c): (s1 ** a * s2 ** b * s3 ** c) * _quad(f, a, b, c)
            for (a, b, c) in _tuples_sum_at_most(R)
        }
        nxt: dict[tuple[int, int, int], TriPoly] = {}
        for (a1, b1, c1), p1 in acc.items():
            for (a2, b2, c2), p2 in factor.items():
                e = (a1 + a2, b1 + b2, c1 + c2)
                if e[0] + e[1] + e[2] > R:
                    continue
                prod = p1 * p2
                nxt[e] = nxt[e] + prod if e in nxt else prod
        acc = nxt
    return acc


def genfun_coeff(r1: int, r2: int, r3: int) -> TriPoly:
    """Route 3: coefficient of X^{r1} Y^{r2} Z^{r3} in the generating
    function, via truncated generalized-binomial expansion."""
    if min(r1, r2, r3) < 0:
        raise ValueError(f"negative part in ({r1}, {r2}, {r3})")
    prod = _genfun_product(r1 + r2 + r3)
    return prod.get((r1, r2, r3), ZERO)


# ---------------------------------------------------------------------------
# classical specialization

def classical_krawtchouk(r: int) -> TriPoly:
    """K_r as a polynomial in x (and n):
    K_r(x) = sum_i (-1)^i binom(x, i) binom(n - x, r - i)."""
    if r < 0:
        raise ValueError("negative degree")
    out = ZERO
    for i in range(r + 1):
        term = (falling_factorial(X, i) / math.factorial(i)) * (
            falling_factorial(N - X, r - i) / math.factorial(r - i))
        out = out + (-1) ** i * term
    return out


# ---------------------------------------------------------------------------
# lift evaluation

def _default_initial(Q: QuotientMatrix, mode: str) -> TensorVector:
    if mode == TRIANGLE:
        return initial_triangle(cell_sizes(Q))
    if mode == INTERWEIGHT:
        return initial_interweight(Q.m)
    raise ValueError(f"unknown mode {mode!r}")


def _apply_poly(P: TriPoly, Q: QuotientMatrix, mode: str, n_value: int,
                initial: TensorVector) -> TensorVector:
    lifts = lifts_for(Q, mode)
    coeffs = P.specialize_n(n_value)
    cache: dict[tuple[int, int, int], TensorVector] = {(0, 0, 0): initial}

    def power(e: tuple[int, int, int]) -> TensorVector:
        got = cache.get(e)
        if got is not None:
            return got
        i, j, k = e
        if i > 0:
            vec = apply_lift(power((i - 1, j, k)), lifts[0])
        elif j > 0:
            vec = apply_lift(power((i, j - 1, k)), lifts[1])
        else:
            vec = apply_lift(power((i, j, k - 1)), lifts[2])
        cache[e] = vec
        return vec

    out = TensorVector.zero(Q.m)
    for e in sorted(coeffs):
        out = out + power(e) * coeffs[e]
    return out


def eval_at_lifts(P: TriPoly, Q: QuotientMatrix, mode: str = TRIANGLE,
                  n_value: int | None = None,
                  initial: TensorVector | None = None) -> TensorVector:
    """Apply P(L1, L2, L3) to the level-0 vector of the given mode.

    The lifts commute pairwise, so monomials are well defined.  With the
    default initial vector and n_value = Q.n this reproduces the table
    entry at (r1, r2, r3) whenever r1 + r2 + r3 <= n; at index sum n + 1
    the image is the zero vector even though P(L1, L2, L3) itself need
    not vanish as a matrix.
    """
    if n_value is None:
        n_value = Q.n
    if initial is None:
        initial = _default_initial(Q, mode)
    return _apply_poly(P, Q, mode, n_value, initial)


def lift_image_is_zero(P: TriPoly, Q: QuotientMatrix, mode: str = TRIANGLE,
                       n_value: int | None = None) -> bool:
    """Whether P(L1, L2, L3) is the zero matrix: checks every basis row
    without materializing, short-circuiting at the first nonzero image."""
    if n_value is None:
        n_value = Q.n
    m = Q.m
    for triple in iter_index_triples(m):
        e = TensorVector.unit(m, triple)
        if not _apply_poly(P, Q, mode, n_value, e).is_zero():
            return False
    return True


def materialize_poly_at_lifts(P: TriPoly, Q: QuotientMatrix,
                              mode: str = TRIANGLE,
                              n_value: int | None = None) -> tuple[tuple, ...]:
    """Dense m^3 x m^3 matrix P(L1, L2, L3).  Debug and test aid only."""
    if n_value is None:
        n_value = Q.n
    m = Q.m
    rows = []
    for triple in iter_index_triples(m):
        e = TensorVector.unit(m, triple)
        rows.append(_apply_poly(P, Q, mode, n_value, e).entries)
    return tuple(rows)
