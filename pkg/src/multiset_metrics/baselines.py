"""Reference multiset metrics used for comparison."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from more_itertools import distinct_permutations

from .errors import EnumerationLimitError
from .ground import GroundSpace, as_fraction
from .multiset import Multiset

MATCHING_BOUND = 8


def bag_distance(e: Multiset, f: Multiset) -> int:
    """max(C(e - f), C(f - e)); ignores the ground metric."""
    return max((e - f).cardinality, (f - e).cardinality)


def matching_distance(space: GroundSpace, e: Multiset, f: Multiset, bound: int = MATCHING_BOUND) -> Fraction:
    """Bottleneck cost of the best slot-for-slot bijection between equal-size multisets."""
    if e.space != space.label or f.space != space.label:
        raise ValueError(f"multisets must belong to space {space.label!r}")
    if e.cardinality != f.cardinality:
        raise ValueError(f"matching distance needs equal cardinalities, got {e.cardinality} and {f.cardinality}")
    if e.cardinality > bound:
        raise EnumerationLimitError(f"matching distance enumerates bijections; cardinality bound is {bound}")
    if not e:
        return Fraction(0)
    e_seq = e.elements()
    return min(
        max(space.dist(x, y) for x, y in zip(e_seq, arrangement))
        for arrangement in distinct_permutations(f.elements())
    )


def mu_metric(weights: Mapping[int, Any] | None, e: Multiset, f: Multiset) -> Fraction:
    """Weighted size of the symmetric difference, sum of weight(s) * (e ^ f)(s).

    ``weights=None`` means every weight is 1, giving C(e ^ f).
    """
    diff = e ^ f
    if weights is None:
        return Fraction(diff.cardinality)
    lam = {}
    for s in (e | f).root_set:
        if s not in weights:
            raise ValueError(f"no weight given for element {s}")
        lam[s] = as_fraction(weights[s])
        if lam[s] <= 0:
            raise ValueError(f"weight of element {s} must be positive, got {lam[s]}")
    return sum((lam[s] * k for s, k in diff.items()), Fraction(0))
