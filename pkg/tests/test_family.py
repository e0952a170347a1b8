import json
from itertools import combinations

import pytest

from emckit import (
    Family,
    complement,
    construct_A,
    construct_B,
    count_disjoint_pairs,
    degree,
    degree_profile,
    enumerate_ksets,
    has_matching_of_size,
    kset,
    matching_number,
    restrict,
    star,
)
from emckit.io import FamilyFormatError, family_from_dict, family_to_dict

from conftest import brute_matching_number, random_family


def test_family_invariants():
    F = Family.from_sets(6, 2, [[3, 4], [1, 2]])
    assert F.members == (kset([1, 2]), kset([3, 4]))
    assert kset([3, 4]) in F and kset([1, 3]) not in F
    with pytest.raises(ValueError):
        Family.from_sets(6, 2, [[1, 2], [1, 2]])
    with pytest.raises(ValueError):
        Family.from_sets(6, 2, [[1, 2, 3]])
    with pytest.raises(ValueError):
        Family.from_sets(4, 2, [[4, 5]])


def test_degree_examples():
    assert degree(star(6, 2, 1), 1) == 5
    # construct_B(7,2,3): edges meeting {1,2}; at 1 that is {1,j} for j=2..7
    assert degree(construct_B(7, 2, 3), 1) == 6
    empty = Family(6, 2)
    assert all(degree(empty, x) == 0 for x in range(1, 7))
    with pytest.raises(ValueError):
        degree(empty, 7)


def test_degree_sum(rng):
    for _ in range(50):
        F = random_family(rng, 7, 3)
        prof = degree_profile(F)
        assert sum(prof.degrees.values()) == 3 * len(F)
        assert prof.min_degree <= prof.max_degree


def test_restrict_examples(rng):
    B = construct_B(7, 2, 3)
    assert restrict(B) == B
    assert restrict(B, {7}).sets() == [[1, 7], [2, 7]]
    for _ in range(20):
        F = random_family(rng, 6, 3)
        for x in range(1, 7):
            assert len(restrict(F, {x})) + len(restrict(F, (), {x})) == len(F)
    with pytest.raises(ValueError):
        restrict(B, {1}, {1})


def test_restrict_two_point_links():
    F = Family.full(6, 3)
    assert len(restrict(F, {5, 6})) == 4
    assert len(restrict(F, {5}, {6})) == 6


def test_matching_number_examples():
    assert matching_number(Family(6, 2)) == 0
    assert matching_number(star(7, 3, 4)) == 1
    assert matching_number(construct_A(6, 2, 3)) == 2
    assert brute_matching_number(Family.full(6, 2)) == 3
    assert matching_number(Family.full(6, 2)) == 3


def test_matching_number_against_brute_force(rng):
    for n, k in [(6, 2), (7, 2), (7, 3), (8, 2), (9, 3)]:
        for _ in range(30):
            F = random_family(rng, n, k)
            assert matching_number(F) == brute_matching_number(F)


def test_matching_number_ceiling_and_monotone(rng):
    for _ in range(40):
        F = random_family(rng, 8, 2)
        nu = matching_number(F)
        assert nu <= 8 // 2
        extra = [c for c in enumerate_ksets(8, 2) if c not in F][:3]
        assert matching_number(F.with_members(F.members + tuple(extra))) >= nu


def test_has_matching_examples():
    assert has_matching_of_size(Family(6, 2), 0)
    assert not has_matching_of_size(construct_A(6, 2, 3), 3)
    assert not has_matching_of_size(construct_B(7, 2, 3), 3)
    assert has_matching_of_size(construct_B(7, 2, 3), 2)


def test_has_matching_exhaustive_small():
    """All families of at most 6 edges on [6], against brute force."""
    edges = list(enumerate_ksets(6, 2))
    for r in range(0, 7):
        for combo in combinations(edges, r):
            F = Family(6, 2, combo)
            nu = brute_matching_number(F)
            assert matching_number(F) == nu
            for s in range(0, 5):
                assert has_matching_of_size(F, s) == (nu >= s)


def test_disjoint_pairs_examples(rng):
    assert count_disjoint_pairs(star(7, 3, 2)) == 0
    assert count_disjoint_pairs(construct_A(6, 2, 3)) == 15
    assert count_disjoint_pairs(Family.full(4, 2)) == 3
    for _ in range(30):
        F = random_family(rng, 7, 3)
        naive = sum(1 for a, b in combinations(F.members, 2) if not a & b)
        assert count_disjoint_pairs(F) == naive


def test_disjoint_pairs_iff_intersecting(rng):
    for _ in range(60):
        F = random_family(rng, 6, 2, density=0.2)
        if len(F) >= 2:
            assert (count_disjoint_pairs(F) == 0) == (matching_number(F) <= 1)


def test_complement():
    assert complement(Family(6, 2)) == Family.full(6, 2)
    F = construct_B(7, 2, 3)
    assert complement(complement(F)) == F
    assert len(F) + len(complement(F)) == 21


def test_json_roundtrip():
    F = construct_B(7, 2, 3)
    assert family_from_dict(json.loads(json.dumps(family_to_dict(F)))) == F
    assert family_to_dict(Family.from_sets(6, 2, [[1, 2], [1, 3]])) == {
        "n": 6, "k": 2, "sets": [[1, 2], [1, 3]]}


@pytest.mark.parametrize("bad", [
    {"n": 6, "k": 2, "sets": [[1, 2], [1, 2]]},
    {"n": 6, "k": 2, "sets": [[2, 1]]},
    {"n": 6, "k": 2, "sets": [[1, 7]]},
    {"n": 6, "k": 2, "sets": [[1, 2, 3]]},
    {"n": 6, "k": 2, "sets": [["1", 2]]},
    {"n": 6, "sets": []},
    [],
])
def test_json_rejects_malformed(bad):
    with pytest.raises(FamilyFormatError):
        family_from_dict(bad)
