from itertools import product
from math import comb

import pytest

from latlab.errors import SpecError
from latlab.fields import (
    DEFAULT_MODULI,
    FiniteField,
    distinct_root_histogram,
    field_for_order,
    parse_field,
)


def test_parse_field():
    f = parse_field("GF(7)")
    assert (f.p, f.e) == (7, 1)
    f = parse_field("GF(25;x^2+x+2)")
    assert (f.p, f.e, f.modulus) == (5, 2, (2, 1, 1))
    with pytest.raises(SpecError):
        parse_field("GF(6)")
    with pytest.raises(SpecError):
        parse_field("GF(9;x^2+2x+1)")  # (x+1)^2 is reducible


def test_builtin_moduli_are_irreducible():
    for q in DEFAULT_MODULI:
        f = field_for_order(q)
        assert f.order == q
        assert len(f.elements()) == q


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_field_axioms_exhaustive(q):
    f = field_for_order(q)
    elems = f.elements()
    one, zero = f.one, f.zero
    for a in elems:
        assert f.mul(a, one) == a
        assert f.add(a, f.neg(a)) == zero
        if a != zero:
            assert f.mul(a, f.inv(a)) == one
    for a, b, c in product(elems, repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a, b in product(elems, repeat=2):
        assert f.mul(a, b) == f.mul(b, a)


def test_field_pow_matches_repeated_mul():
    f = field_for_order(9)
    for a in f.elements():
        acc = f.one
        for n in range(5):
            assert f.pow(a, n) == acc
            acc = f.mul(acc, a)


def test_histogram_totals():
    # each subset of size k+1 lands in exactly one bucket
    for q, k in [(5, 1), (7, 1), (7, 2), (9, 2), (11, 2), (8, 1), (13, 3)]:
        f = field_for_order(q)
        hist = distinct_root_histogram(f, k)
        assert len(hist) == q**k
        assert sum(hist.values()) == comb(q, k + 1)


def test_histogram_q5_k1_total_ten():
    hist = distinct_root_histogram(field_for_order(5), 1)
    assert sum(hist.values()) == 10


def test_histogram_q7_k2_pair_sum():
    hist = distinct_root_histogram(field_for_order(7), 2)
    assert sum(n * (n - 1) // 2 for n in hist.values()) == 7


def test_histogram_rejects_degenerate_power_sums():
    with pytest.raises(ValueError, match="power sums degenerate"):
        distinct_root_histogram(field_for_order(9), 3)  # k = p = 3


def test_histogram_buckets_match_direct_root_count():
    # cross-check one bucket against a direct scan over constants a_0
    f = field_for_order(7)
    k = 2
    hist = distinct_root_histogram(f, k)
    a1, a2 = (3,), (5,)
    direct = 0
    for a0 in f.elements():
        roots = 0
        for x in f.elements():
            # x^3 + a2 x^2 + a1 x + a0
            val = f.add(f.add(f.pow(x, 3), f.mul(a2, f.pow(x, 2))),
                        f.add(f.mul(a1, x), a0))
            if val == f.zero:
                roots += 1
        if roots == k + 1:
            direct += 1
    assert hist[(a1, a2)] == direct


def test_histogram_independent_of_partitioning():
    # bucketing subsets in chunks and merging must equal the single sweep
    from itertools import combinations

    f = field_for_order(7)
    k = 2
    whole = distinct_root_histogram(f, k)
    elems = f.elements()
    merged = {key: 0 for key in whole}
    subsets = list(combinations(elems, k + 1))
    for chunk_start in range(0, len(subsets), 9):
        for subset in subsets[chunk_start:chunk_start + 9]:
            poly = [f.one]
            for x in subset:
                nxt = [f.neg(f.mul(x, poly[0]))]
                for i in range(1, len(poly)):
                    nxt.append(f.add(poly[i - 1], f.neg(f.mul(x, poly[i]))))
                nxt.append(poly[-1])
                poly = nxt
            merged[tuple(poly[1:k + 1])] += 1
    assert merged == whole


def test_modulus_validation():
    with pytest.raises(SpecError):
        FiniteField(4, 1, (0, 1))  # 4 not prime
    with pytest.raises(SpecError):
        FiniteField(2, 2, (0, 0, 1))  # x^2 reducible
