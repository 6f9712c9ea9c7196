"""Distribution tables: recursion, scanning, internal consistency."""

import math
from fractions import Fraction

import pytest

from eqcube.exact_linalg import TensorVector, iter_index_triples
from eqcube.quotient import cell_sizes, validate_quotient
from eqcube.recursion import (INTERWEIGHT, TRIANGLE, DistributionTable,
                              build_table, canonical_via, cross_check,
                              derive_entry, initial_interweight,
                              initial_triangle, iter_table_levels,
                              iter_triples_of_level, lifts_for,
                              scan_violations, weight_distribution)

Q_PAIR = validate_quotient([[0, 3], [1, 2]], 3)
Q22 = validate_quotient([[0, 22, 0], [5, 6, 11], [0, 10, 12]], 22)


def test_initial_vectors():
    assert list(initial_triangle((2, 6)).entries) == [2, 0, 0, 0, 0, 0, 0, 6]
    assert list(initial_triangle((12, 20)).entries) == [12, 0, 0, 0, 0, 0, 0, 20]
    assert list(initial_triangle((1,)).entries) == [1]
    assert list(initial_interweight(2).entries) == [1, 0, 0, 0, 0, 0, 0, 1]
    assert list(initial_interweight(1).entries) == [1]
    w3 = initial_interweight(3)
    assert w3.get(1, 1, 1) == w3.get(2, 2, 2) == w3.get(3, 3, 3) == 1
    assert sum(w3.entries) == 3


def test_iter_triples_of_level_is_lexicographic():
    assert list(iter_triples_of_level(0)) == [(0, 0, 0)]
    assert list(iter_triples_of_level(2)) == [
        (0, 0, 2), (0, 1, 1), (0, 2, 0), (1, 0, 1), (1, 1, 0), (2, 0, 0)]


def test_canonical_via_takes_first_positive_part():
    assert canonical_via((2, 0, 1)) == 1
    assert canonical_via((0, 3, 1)) == 2
    assert canonical_via((0, 0, 4)) == 3
    with pytest.raises(ValueError):
        canonical_via((0, 0, 0))


def test_build_table_level_zero_only():
    t = build_table(Q_PAIR, TRIANGLE, max_level=0)
    assert list(t.entries) == [(0, 0, 0)]
    assert list(t.entries[(0, 0, 0)].entries) == [2, 0, 0, 0, 0, 0, 0, 6]


def test_build_table_rejects_level_beyond_dimension():
    with pytest.raises(ValueError):
        build_table(Q_PAIR, TRIANGLE, max_level=4)
    with pytest.raises(ValueError):
        build_table(Q_PAIR, "weights")


def test_pair_partition_triangle_values():
    # enumeration over the realizing partition (cell 1 = {000, 111})
    # fixes every count; two levels spot-checked here, the rest in the
    # oracle equivalence tests
    t = build_table(Q_PAIR, TRIANGLE)
    assert list(t.entries[(0, 0, 1)].entries) == [0, 6, 0, 0, 0, 0, 6, 12]
    assert t.entries[(1, 0, 0)].get(1, 2, 2) == 6
    assert t.entries[(0, 3, 0)].get(1, 2, 2) == 0
    assert t.entries[(0, 3, 0)].get(1, 1, 2) == 0
    assert sum(v for tr in t.entries for v in t.entries[tr].entries) == 8 ** 3


def test_entry_out_of_range_is_zero_above_level_is_error():
    t = build_table(Q_PAIR, TRIANGLE, max_level=1)
    assert t.entry((-1, 0, 0)).is_zero()
    assert t.entry((2, 1, 1)).is_zero()  # sum over n
    with pytest.raises(KeyError):
        t.entry((1, 1, 0))


def test_table_triples_scan_order():
    t = build_table(Q_PAIR, TRIANGLE, max_level=2)
    assert t.triples() == [(0, 0, 0),
                           (0, 0, 1), (0, 1, 0), (1, 0, 0),
                           (0, 0, 2), (0, 1, 1), (0, 2, 0),
                           (1, 0, 1), (1, 1, 0), (2, 0, 0)]


def test_iter_table_levels_streams_the_same_table():
    whole = build_table(Q_PAIR, INTERWEIGHT)
    seen = {}
    for level in iter_table_levels(Q_PAIR, INTERWEIGHT,
                                   initial_interweight(2), 3):
        seen.update(level)
    assert seen == whole.entries


def test_weight_distribution_pair_partition():
    # anchored counts for cell 1 = {000, 111}: from 000 the three
    # distance-1 and the three distance-2 words all lie in cell 2, the
    # single distance-3 word is 111
    W = weight_distribution(Q_PAIR)
    assert [w[0] for w in W] == [(1, 0), (0, 3), (0, 3), (1, 0)]
    assert [w[1] for w in W] == [(0, 1), (1, 2), (1, 2), (0, 1)]


def test_weight_distribution_single_cell_is_binomial():
    W = weight_distribution(validate_quotient([[4]], 4))
    assert [w[0][0] for w in W] == [math.comb(4, r) for r in range(5)]


def test_weight_distribution_22_cube_shows_no_contradiction():
    W = weight_distribution(Q22)
    for mat in W:
        for row in mat:
            for v in row:
                assert v >= 0 and Fraction(v).denominator == 1


def test_scan_violations_empty_for_realizable_matrix():
    t = build_table(Q_PAIR, TRIANGLE)
    assert scan_violations(t, sizes=cell_sizes(Q_PAIR)) == []


def test_scan_violations_negative_entries():
    Q = validate_quotient([[0, 5], [3, 2]], 5)
    v = scan_violations(build_table(Q, TRIANGLE), sizes=cell_sizes(Q))
    assert v, "negative entries expected"
    first = v[0]
    assert first.triple == (0, 2, 2)
    assert first.index == (2, 1, 1)
    assert first.value == -120
    assert first.reason == "negative"
    assert all(x.reason == "negative" for x in v)


def test_scan_violations_non_integer_entries():
    Q = validate_quotient([[0, 3], [2, 1]], 3)
    v = scan_violations(build_table(Q, TRIANGLE), sizes=cell_sizes(Q))
    ni = [x for x in v if x.reason == "non-integer"]
    assert ni
    assert ni[0].triple == (0, 0, 2)
    assert ni[0].index == (1, 1, 1)
    assert ni[0].value == Fraction(24, 5)


def test_scan_violations_order_is_level_triple_index():
    Q = validate_quotient([[0, 5], [3, 2]], 5)
    v = scan_violations(build_table(Q, TRIANGLE), sizes=cell_sizes(Q))
    keys = [(sum(x.triple), x.triple, x.index) for x in v]
    assert keys == sorted(keys)


def test_scan_violations_finds_the_22_cube_witness():
    t = build_table(Q22, TRIANGLE, max_level=17)
    v = scan_violations(t, sizes=cell_sizes(Q22))
    assert any(x.triple == (0, 8, 9) and x.index == (1, 1, 1)
               and x.reason == "negative" for x in v)


@pytest.mark.parametrize("kind", [TRIANGLE, INTERWEIGHT])
def test_cross_check_clean_on_pair_partition(kind):
    other = INTERWEIGHT if kind == TRIANGLE else TRIANGLE
    table = build_table(Q_PAIR, kind)
    companion = build_table(Q_PAIR, other)
    rep = cross_check(table, Q_PAIR, companion=companion)
    assert rep.ok
    assert rep.checks_run == ("derivations", "symmetry", "pairing",
                              "marginals")


def test_cross_check_consistent_even_for_nonexistent_matrix():
    # recursion consistency does not depend on a partition existing
    Q = validate_quotient([[0, 5], [3, 2]], 5)
    rep = cross_check(build_table(Q, TRIANGLE), Q)
    assert rep.ok
    assert "pairing" not in rep.checks_run


def test_cross_check_single_cell_marginals():
    Q = validate_quotient([[4]], 4)
    rep = cross_check(build_table(Q, TRIANGLE), Q)
    assert rep.ok and "marginals" in rep.checks_run


def test_cross_check_skips_marginals_for_external_initial():
    # sum of tensor cubes (2,0) and (1,1): symmetric, but not the
    # size-diagonal, so the marginal identity cannot be expected
    ext = TensorVector(2, [9, 1, 1, 1, 1, 1, 1, 1])
    t = build_table(Q_PAIR, TRIANGLE, initial=ext)
    assert not t.standard_initial
    rep = cross_check(t, Q_PAIR)
    assert rep.checks_run == ("derivations", "symmetry")
    assert rep.ok


def test_cross_check_reports_tampered_entry():
    t = build_table(Q_PAIR, TRIANGLE)
    bad = dict(t.entries)
    bad[(0, 0, 3)] = bad[(0, 0, 3)] + TensorVector.unit(2, (1, 1, 1))
    tampered = DistributionTable(kind=TRIANGLE, n=3, m=2, max_level=3,
                                 entries=bad)
    rep = cross_check(tampered, Q_PAIR)
    assert not rep.ok
    assert any(t_ == (0, 0, 3) for (t_, _via) in rep.derivation_mismatches)


def test_marginal_totals_are_multinomial():
    t = build_table(Q22, TRIANGLE, max_level=4)
    sizes = cell_sizes(Q22)
    n = 22
    for triple in t.triples():
        r1, r2, r3 = triple
        count = (math.factorial(n)
                 // (math.factorial(r1) * math.factorial(r2)
                     * math.factorial(r3)
                     * math.factorial(n - r1 - r2 - r3)))
        vec = t.entries[triple]
        for i in (1, 2, 3):
            got = sum(vec.get(i, j, k) for j in (1, 2, 3) for k in (1, 2, 3))
            assert got == sizes[i - 1] * count


def test_triangle_equals_interweight_times_sizes():
    tri = build_table(Q_PAIR, TRIANGLE)
    inter = build_table(Q_PAIR, INTERWEIGHT)
    sizes = cell_sizes(Q_PAIR)
    for triple in tri.triples():
        for (i, j, k) in iter_index_triples(2):
            assert (tri.entries[triple].get(i, j, k)
                    == inter.entries[triple].get(i, j, k) * sizes[i - 1])


@pytest.mark.parametrize("kind", [TRIANGLE, INTERWEIGHT])
def test_one_level_past_the_dimension_vanishes(kind):
    table = build_table(Q_PAIR, kind)
    lifts = lifts_for(Q_PAIR, kind)

    def lookup(t):
        return table.entry(t)

    for triple in iter_triples_of_level(4):
        got = derive_entry(lookup, lifts, 3, triple, canonical_via(triple))
        assert got.is_zero(), triple
