"""Multisets as multiplicity functions: d_E, d_Em and their brute-force check.

For C(a) <= C(c), d_E(a, c) is the cheapest way to pair every copy in ``a``
with a distinct copy in ``c``, plus M for each unpaired copy of ``c``.
d_Em divides by the larger cardinality.  d_E is a metric iff sup d <= 2M;
d_Em iff sup d <= M.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from more_itertools import distinct_permutations

from .errors import EnumerationLimitError, SpaceMismatchError, ThetaThresholdWarning
from .ground import GroundSpace
from .multiset import Multiset
from .transport import Flow, TransportInstance, build_instance, solve_min_cost

ORACLE_BOUND = 7

METRIC_THRESHOLDS = {"dE": 2, "dEm": 1, "dA": 2, "dAm": 2, "dF": 2, "dFm": 2, "dG": 2}


def metric_guaranteed(space: GroundSpace, metric: str) -> bool:
    """Whether ``metric`` satisfies the metric axioms at this space's theta."""
    return space.theta <= METRIC_THRESHOLDS[metric]


def warn_if_not_metric(space: GroundSpace, metric: str) -> bool:
    if metric_guaranteed(space, metric):
        return False
    warnings.warn(
        f"{metric} is not a metric on {space.label!r}: theta = {space.theta} exceeds "
        f"{METRIC_THRESHOLDS[metric]}",
        ThetaThresholdWarning,
        stacklevel=3,
    )
    return True


def _check(space: GroundSpace, *multisets: Multiset) -> None:
    for m in multisets:
        if m.space != space.label:
            raise SpaceMismatchError(f"multiset over {m.space!r} used with space {space.label!r}")


def _orient(a: Multiset, c: Multiset) -> tuple[Multiset, Multiset]:
    return (a, c) if a.cardinality <= c.cardinality else (c, a)


def reduce_disjoint(a: Multiset, c: Multiset) -> tuple[Multiset, Multiset]:
    """Strip the common part: returns (a - a&c, c - a&c)."""
    return a - c, c - a


@dataclass(frozen=True)
class TransportPlan:
    value: Fraction
    instance: TransportInstance | None
    flow: Flow | None


def d_E_plan(space: GroundSpace, a: Multiset, c: Multiset) -> TransportPlan:
    """d_E together with the transportation instance and optimal flow behind it.

    The instance is built on the disjoint parts, oriented so the smaller
    multiset labels the rows.  ``instance`` is None when no solve is needed.
    """
    _check(space, a, c)
    a, c = _orient(a, c)
    a, c = reduce_disjoint(a, c)
    if not c:
        return TransportPlan(Fraction(0), None, None)
    if not a:
        return TransportPlan(space.M * c.cardinality, None, None)
    inst = build_instance(space, a, c)
    value, flow = solve_min_cost(inst)
    return TransportPlan(value, inst, flow)


def d_E(space: GroundSpace, a: Multiset, c: Multiset) -> Fraction:
    warn_if_not_metric(space, "dE")
    return d_E_plan(space, a, c).value


def d_Em(space: GroundSpace, a: Multiset, c: Multiset) -> Fraction:
    warn_if_not_metric(space, "dEm")
    top = max(a.cardinality, c.cardinality)
    if top == 0:
        _check(space, a, c)
        return Fraction(0)
    return d_E_plan(space, a, c).value / top


def d_E_oracle(space: GroundSpace, a: Multiset, c: Multiset, bound: int = ORACLE_BOUND) -> Fraction:
    """d_E by enumerating every placement of the copies of ``a`` into ``c``.

    No disjoint reduction or flow reasoning: the larger multiset is written
    out as a sequence and each distinct arrangement of it is scored against
    the smaller one slot by slot.
    """
    _check(space, a, c)
    a, c = _orient(a, c)
    if c.cardinality > bound:
        raise EnumerationLimitError(
            f"oracle enumerates arrangements of {c.cardinality} elements; bound is {bound}. "
            "Use d_E (transportation solver) instead."
        )
    notional = space.M * (c.cardinality - a.cardinality)
    a_seq = a.elements()
    if not a_seq:
        return notional
    c_seq = c.elements()
    denom = math.lcm(*(space.dist(x, y).denominator for x in a.root_set for y in c.root_set))
    scaled = {(x, y): int(space.dist(x, y) * denom) for x in a.root_set for y in c.root_set}
    best = min(
        sum(scaled[x, y] for x, y in zip(a_seq, arrangement))
        for arrangement in distinct_permutations(c_seq, len(a_seq))
    )
    return Fraction(best, denom) + notional


@dataclass(frozen=True)
class TriangleWitness:
    """Points p, q, r with d(p, q) + d(q, r) - d(p, r) = ``slack`` < 0."""

    metric: str
    points: tuple
    d_pq: Fraction
    d_qr: Fraction
    d_pr: Fraction

    @property
    def slack(self) -> Fraction:
        return self.d_pq + self.d_qr - self.d_pr


def counterexample_triangle(space: GroundSpace, metric: str = "dE") -> TriangleWitness | None:
    """(e_x, e_x + e_y, e_y) for the farthest pair x, y, if it breaks the triangle inequality.

    The slack of that triple is 2M - d(x, y) for d_E and M - d(x, y) for
    d_Em, so a witness exists exactly when some distance exceeds 2M (resp. M).
    """
    if metric not in ("dE", "dEm"):
        raise ValueError(f"metric must be 'dE' or 'dEm', got {metric!r}")
    x, y = space.max_pair()
    if space.dist(x, y) <= METRIC_THRESHOLDS[metric] * space.M:
        return None
    ex, ey = space.unit(x), space.unit(y)
    mid = ex + ey
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ThetaThresholdWarning)
        dist = d_E if metric == "dE" else d_Em
        w = TriangleWitness(metric, (ex, mid, ey), dist(space, ex, mid), dist(space, mid, ey), dist(space, ex, ey))
    assert w.slack < 0
    return w
