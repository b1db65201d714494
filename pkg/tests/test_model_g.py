import itertools
import random
from fractions import Fraction

import pytest

from multiset_metrics import (
    APoint,
    DistanceInterval,
    EnumerationLimitError,
    FPrimeSet,
    GClass,
    class_members,
    d_F,
    d_G,
    d_G_lower,
    d_G_upper,
    discrete_space,
    distinct_partitions,
    hausdorff,
    is_uniformly_discrete,
    project,
    table_space,
)
from multiset_metrics.model_g import class_size


def brute_distinct_partitions(n):
    return {
        tuple(sorted(c, reverse=True))
        for k in range(1, n + 1)
        for c in itertools.combinations(range(1, n + 1), k)
        if sum(c) == n
    }


@pytest.mark.parametrize("n", range(0, 19))
def test_distinct_partitions_match_subset_sums(n):
    got = distinct_partitions(n)
    assert len(got) == len(set(got))
    expected = brute_distinct_partitions(n) if n else {()}
    assert set(got) == expected
    assert list(got) == sorted(got, reverse=True)


def test_partition_counts():
    # OEIS A000009
    assert [len(distinct_partitions(n)) for n in range(1, 16)] == [1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15, 18, 22, 27]


def test_class_example():
    space = discrete_space(2, 1, label="xy")
    g = GClass(space.multiset({0: 6, 1: 2}))
    members = class_members(g)
    X, Y = 0, 1
    expected = {
        FPrimeSet.of([(1, X), (2, X), (3, X), (2, Y)], "xy"),
        FPrimeSet.of([(1, X), (5, X), (2, Y)], "xy"),
        FPrimeSet.of([(2, X), (4, X), (2, Y)], "xy"),
        FPrimeSet.of([(6, X), (2, Y)], "xy"),
    }
    assert len(members) == 4 and set(members) == expected
    assert class_size(g) == 4
    assert all(project(U) == g for U in members)


def test_three_splits_two_ways():
    space = discrete_space(2, 1, label="xy")
    members = class_members(GClass(space.multiset({0: 3})))
    assert set(members) == {FPrimeSet.of([(3, 0)], "xy"), FPrimeSet.of([(1, 0), (2, 0)], "xy")}


def test_singleton_classes_exactly_when_multiplicities_at_most_two():
    space = discrete_space(2, 1, label="xy")
    for a in range(0, 11):
        for b in range(0, 11):
            g = GClass(space.multiset({0: a, 1: b}))
            assert (len(class_members(g)) == 1) == (a <= 2 and b <= 2)


def test_empty_class():
    space = discrete_space(2, 1)
    g = GClass(space.multiset())
    assert g.is_empty and len(class_members(g)) == 1
    U = class_members(g)[0]
    assert project(U) == g


def test_partition_bound():
    space = discrete_space(2, 1)
    with pytest.raises(EnumerationLimitError):
        class_members(GClass(space.multiset({0: 31})))


def test_worked_example(two_point):
    e = GClass(two_point.multiset({"x": 3}))
    f = GClass(two_point.multiset({"y": 3}))
    assert d_F(two_point, FPrimeSet.of([(3, 0)], "two"), FPrimeSet.of([(3, 1)], "two")) == 3
    upper, chain = d_G_upper(two_point, e, f, hops=0)
    assert upper <= 2
    assert chain == ((FPrimeSet.of([(1, 0), (2, 0)], "two"), FPrimeSet.of([(1, 1), (2, 1)], "two")),)
    assert d_G_lower(two_point, e, f) == 1
    iv = d_G(two_point, e, f)
    assert iv.lower == 1 and iv.upper == 2 and not iv.exact


def test_chain_value_is_sum_of_links(spaces):
    rng = random.Random(4)
    for space in spaces[:3]:
        for _ in range(6):
            e = GClass(space.multiset({rng.randrange(len(space)): rng.randint(1, 4)}))
            f = GClass(space.multiset({rng.randrange(len(space)): rng.randint(1, 4)}))
            value, chain = d_G_upper(space, e, f, hops=1)
            assert value == sum(d_F(space, U, V) for U, V in chain)
            assert project(chain[0][0]) == e and project(chain[-1][1]) == f
            for (_, V), (U, _) in zip(chain, chain[1:]):
                assert project(V) == project(U)


def random_class(rng, space, max_mult=4):
    return GClass(space.multiset({rng.randrange(len(space)): rng.randint(1, max_mult) for _ in range(rng.randint(1, 2))}))


def test_sandwich_and_monotone_hops(spaces):
    rng = random.Random(8)
    for space in spaces[:4]:
        for _ in range(8):
            e, f = random_class(rng, space), random_class(rng, space)
            u0, _ = d_G_upper(space, e, f, hops=0)
            u1, _ = d_G_upper(space, e, f, hops=1)
            lo = d_G_lower(space, e, f)
            assert lo <= u1 <= u0
            members = [(U, V) for U in class_members(e) for V in class_members(f)]
            assert u0 == min(d_F(space, U, V) for U, V in members)


def test_lower_bound_is_hausdorff_of_root_sets(spaces):
    rng = random.Random(2)
    for space in spaces:
        for _ in range(20):
            e, f = random_class(rng, space), random_class(rng, space)
            assert d_G_lower(space, e, f) == hausdorff(space.dist, e.canonical.root_set, f.canonical.root_set)


def test_lower_bound_with_empty_class(line3):
    e0 = GClass(line3.multiset())
    e = GClass(line3.multiset({"x": 2}))
    assert d_G_lower(line3, e0, e) == line3.M
    assert d_G_lower(line3, e0, e0) == 0
    assert d_G(line3, e0, e).upper == line3.M * 2


def test_identity(line3):
    e = GClass(line3.multiset({"x": 4, "y": 1}))
    iv = d_G(line3, e, e)
    assert iv.exact and iv.upper == 0


def test_interval_validation():
    with pytest.raises(ValueError):
        DistanceInterval(Fraction(2), Fraction(1), False)
    with pytest.raises(ValueError):
        DistanceInterval(Fraction(1), Fraction(2), True)


def test_candidate_limit(line3):
    e = GClass(line3.multiset({"x": 9, "y": 9}))
    f = GClass(line3.multiset({"z": 9}))
    with pytest.raises(EnumerationLimitError):
        d_G_upper(line3, e, f, hops=1, max_classes=50)


def test_round_trip_through_classes(spaces):
    rng = random.Random(6)
    for space in spaces:
        for _ in range(20):
            g = random_class(rng, space, 6)
            assert all(project(U) == g for U in class_members(g))


def test_uniformly_discrete(line3):
    cert = is_uniformly_discrete(line3)
    assert cert.uniformly_discrete and cert.separation == 1 and cert.d_G_is_metric
    assert not is_uniformly_discrete(line3.with_M(Fraction(1, 2))).d_G_is_metric


def test_intermediate_class_beats_direct_link():
    # found by random search; hand check: the direct link pays 2M + 2 = 20/3 for 3e_2,
    # while {1e_0} -> {1e_0, 1e_2, 2e_2} costs M + 2 and {1e_0, 3e_2} -> {1e_0, 1e_2, 3e_2} costs 2
    third = Fraction(1, 3)
    space = table_space([[0, 14 * third, 2], [14 * third, 0, 8 * third], [2, 8 * third, 0]], 7 * third)
    e = GClass(space.multiset({0: 1}))
    f = GClass(space.multiset({0: 1, 2: 4}))
    direct, _ = d_G_upper(space, e, f, hops=0)
    chained, chain = d_G_upper(space, e, f, hops=1)
    assert direct == Fraction(20, 3) and chained == Fraction(19, 3)
    assert [d_F(space, U, V) for U, V in chain] == [Fraction(13, 3), 2]
    assert d_G_lower(space, e, f) == 2
