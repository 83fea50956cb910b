import random

import pytest

from latlab import families, intlinalg
from latlab.errors import ConstructionError
from latlab.lattice import (
    ConstraintSystem,
    build,
    contains,
    enumerate_by_basis_oracle,
    has_m_lattice_sidon_property,
    minimum,
    sign_canonical,
    square_patterns,
    vectors_of_norm,
)


def _cs(n, rows, labels=None):
    return ConstraintSystem(tuple(labels or (str(i) for i in range(n))), tuple(rows))


def test_build_examples():
    lat = families.build_family("Ld:7")
    assert (lat.rank, lat.det) == (7, 540)
    lat = families.build_family("LA:Z/7")
    assert (lat.rank, lat.det) == (6, 343)
    lat = families.build_family("T:3")
    assert (lat.rank, lat.det) == (7, 64)


def test_build_trivial_lattice():
    with pytest.raises(ConstructionError, match="trivial lattice"):
        build(_cs(1, [((1,), 0)]))


def test_square_patterns():
    assert square_patterns(4) == [(2,), (1, 1, 1, 1)]
    assert square_patterns(3) == [(1, 1, 1)]
    assert square_patterns(8) == [(2, 2), (2, 1, 1, 1, 1), (1,) * 8]


def test_vectors_of_norm_counts():
    assert vectors_of_norm(families.build_family("Ld:6"), 4).count == 22
    assert vectors_of_norm(families.build_family("Ld:7"), 2).count == 0
    assert vectors_of_norm(families.build_family("Od:7"), 4).count == 29


def test_vectors_are_canonical_sorted_and_satisfy():
    lat = families.build_family("Ld:6")
    mvs = vectors_of_norm(lat, 4)
    assert list(mvs.vectors) == sorted(set(mvs.vectors))
    for v in mvs.vectors:
        assert v == sign_canonical(v)
        assert sum(x * x for x in v) == 4
        assert contains(lat, v)
        assert tuple(-x for x in v) not in mvs.vectors


def test_minimum_examples():
    found = minimum(families.build_family("Ld:8"))
    assert found[0] == 4 and found[1].count == 50
    found = minimum(families.build_family("Craig:q=7,k=2"))
    assert found[0] == 6 and found[1].count == 7


def test_minimum_exceeds_cap():
    lat = families.build_family("Craig:q=7,k=2")
    assert minimum(lat, 5) is None


def test_contains_examples():
    lat = families.build_family("Ld:7")
    assert contains(lat, (1, -1, 0, 0, 0, -1, 1, 0, 0))
    assert not contains(lat, (1, 0, 0, 0, 0, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        contains(lat, (1, 0))
    md = families.build_family("Md:7")
    assert contains(md, (2, 0, 0, 0, 0, 0, 0, 0))


def test_det_invariant_under_unimodular_change():
    lat = families.build_family("LA:Z/8")
    rng = random.Random(3)
    B = [list(r) for r in lat.basis]
    for _ in range(4):
        U = intlinalg.identity(len(B))
        for _ in range(20):
            i, j = rng.randrange(len(B)), rng.randrange(len(B))
            if i != j:
                c = rng.choice([-1, 1, 2])
                for t in range(len(B)):
                    U[i][t] += c * U[j][t]
        assert intlinalg.gram_det(intlinalg.mat_mul(U, B)) == lat.det


def test_oracle_2z_squared():
    lat = build(_cs(2, [((1, 0), 2), ((0, 1), 2)]))
    sets = enumerate_by_basis_oracle(lat, 4)
    assert sets[4].vectors == ((0, 2), (2, 0))
    assert all(sets[m].count == 0 for m in (1, 2, 3))


def test_oracle_matches_direct_enumeration():
    for spec in ("Ld:6", "LA:Z/8", "Md:7", "T:3", "Craig:q=5,k=2"):
        lat = families.build_family(spec)
        oracle = enumerate_by_basis_oracle(lat, 6)
        for m in range(1, 7):
            assert oracle[m] == vectors_of_norm(lat, m), (spec, m)


def test_oracle_la_z8_36_pairs():
    lat = families.build_family("LA:Z/8")
    assert enumerate_by_basis_oracle(lat, 4)[4].count == 36


def test_even_families_have_even_norms():
    for spec in ("Ld:8", "Od:8", "Md:8", "LA:Z/8", "Mneg:Z/12", "Craig:q=7,k=2"):
        lat = families.build_family(spec)
        for m in (1, 3, 5, 7):
            assert vectors_of_norm(lat, m).count == 0, (spec, m)


def test_sidon_property_ops():
    cs = families.make(families.parse_family("Sidon:Z/7:set=0,1,3"))
    assert has_m_lattice_sidon_property(cs, 2) is True
    ld = families.make(families.parse_family("Ld:7"))
    assert has_m_lattice_sidon_property(ld, 2) is False
    craig = families.make(families.parse_family("Craig:q=7,k=2"))
    assert has_m_lattice_sidon_property(craig, 2) is True


def test_sidon_set_lattice_matches_enumeration_to_norm_5():
    cs = families.make(families.parse_family("Sidon:Z/7:set=0,1,3"))
    lat = build(cs)
    for m in range(1, 6):
        assert vectors_of_norm(lat, m).count == 0


def test_inverse_pair_lattice_minimum_is_four():
    # antipodal index pairs x, -x give e_x + e_(-x) - e_y - e_(-y); the
    # minimum is 4 for every odd q >= 5, with C((q-1)/2, 2) pairs
    lat = families.build_family("SidonInv:q=11")
    assert lat.rank == 9
    found = minimum(lat)
    assert found[0] == 4 and found[1].count == 10
    assert (0, 0, 1, -1, 0, 0, -1, 1, 0, 0) in found[1].vectors


def test_inverse_pair_lattice_matches_explicit_constraints():
    # same lattice as hand-written rows over the subset {(x, 1/x)} of (Z/11)^2
    inv = families.build_family("SidonInv:q=11")
    subset = [(x, pow(x, -1, 11)) for x in range(1, 11)]
    rows = [((1,) * 10, 0),
            (tuple(s[0] for s in subset), 11),
            (tuple(s[1] for s in subset), 11)]
    lat = build(_cs(10, rows))
    assert lat.basis == inv.basis and lat.det == inv.det
    # and the explicit Sidon tag rejects the set, since it is not Sidon
    spec = families.parse_family(
        "Sidon:Z/11+Z/11:set=" + ",".join(f"{x},{pow(x, -1, 11)}" for x in range(1, 11))
    )
    with pytest.raises(ConstructionError, match="not a Sidon set"):
        families.make(spec)


def test_enumeration_matches_box_oracle_on_random_systems():
    # independent completeness oracle: scan the full coordinate box that can
    # hold any vector of norm <= 8 and filter by the constraint rows
    from itertools import product

    from latlab.errors import ConstructionError

    rng = random.Random(2024)
    checked = 0
    while checked < 12:
        n = rng.randrange(2, 5)
        rows = []
        for _ in range(rng.randrange(1, 3)):
            weights = tuple(rng.randrange(-4, 5) for _ in range(n))
            if not any(weights):
                continue
            rows.append((weights, rng.choice((0, 0, 2, 3, 5))))
        if not rows:
            continue
        try:
            lat = build(_cs(n, rows))
        except ConstructionError:
            continue
        checked += 1
        expected = {m: set() for m in range(1, 9)}
        for v in product(range(-2, 3), repeat=n):
            norm = sum(x * x for x in v)
            if 1 <= norm <= 8 and lat.constraints.satisfied_by(v):
                expected[norm].add(sign_canonical(v))
        for m in range(1, 9):
            got = set(vectors_of_norm(lat, m).vectors)
            assert got == expected[m], (rows, m)
        oracle = enumerate_by_basis_oracle(lat, 8)
        for m in range(1, 9):
            assert set(oracle[m].vectors) == expected[m], (rows, m)


def test_lattice_json_uses_decimal_strings():
    from latlab.lattice import lattice_to_json, mvs_to_json

    lat = families.build_family("Ld:7")
    js = lattice_to_json(lat)
    assert js["det"] == "540" and js["rank"] == "7"
    assert all(isinstance(x, str) for row in js["basis"] for x in row)
    mvs = vectors_of_norm(lat, 4)
    mj = mvs_to_json(mvs)
    assert mj["count"] == "34" and mj["norm"] == "4"
