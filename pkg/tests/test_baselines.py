import itertools
import random
from fractions import Fraction

import pytest

from multiset_metrics import EnumerationLimitError, bag_distance, d_E, discrete_space, matching_distance, mu_metric
from multiset_metrics.checks import check_metric, random_multiset


def test_bag_example(line3):
    e, f = line3.multiset({"x": 3}), line3.multiset({"y": 1})
    assert bag_distance(e, f) == 3
    assert bag_distance(e, e) == 0


def test_mu_examples(line3):
    e, f = line3.multiset({"x": 3}), line3.multiset({"y": 1})
    assert mu_metric(None, e, f) == 4
    assert mu_metric({0: 1, 1: 2}, e, f) == 5
    assert mu_metric({0: Fraction(1, 2), 1: 1}, e, e + f) == 1
    with pytest.raises(ValueError):
        mu_metric({0: 1}, e, f)
    with pytest.raises(ValueError):
        mu_metric({0: 1, 1: 0}, e, f)


def test_bag_and_mu_differ(line3):
    ex, ey = line3.unit("x"), line3.unit("y")
    assert bag_distance(ex, ey) == 1 and mu_metric(None, ex, ey) == 2


def test_matching(line3):
    assert matching_distance(line3, line3.multiset({"x": 1, "z": 1}), line3.multiset({"y": 2})) == 1
    assert matching_distance(line3, line3.multiset({"x": 2}), line3.multiset({"y": 1, "z": 1})) == 2
    assert matching_distance(line3, line3.multiset(), line3.multiset()) == 0
    with pytest.raises(ValueError):
        matching_distance(line3, line3.unit("x"), line3.multiset())
    with pytest.raises(EnumerationLimitError):
        matching_distance(line3, line3.multiset({"x": 9}), line3.multiset({"y": 9}))


def test_matching_against_all_bijections(spaces):
    rng = random.Random(1)
    for space in spaces:
        for _ in range(30):
            k = rng.randint(1, 5)
            e, f = random_multiset(rng, space, k, k), random_multiset(rng, space, k, k)
            es, fs = e.elements(), f.elements()
            slow = min(max(space.dist(a, b) for a, b in zip(es, p)) for p in itertools.permutations(fs))
            assert matching_distance(space, e, f) == slow


def test_dE_generalizes_bag():
    M = Fraction(3, 2)
    space = discrete_space(4, M, M)
    rng = random.Random(0)
    for _ in range(200):
        a, c = random_multiset(rng, space, 6), random_multiset(rng, space, 6)
        assert d_E(space, a, c) == M * bag_distance(a, c)


@pytest.mark.parametrize("metric", ["bag", "mu", "matching"])
def test_baselines_are_metrics(spaces, metric):
    assert check_metric(spaces[2], metric, samples=200, seed=0).ok
