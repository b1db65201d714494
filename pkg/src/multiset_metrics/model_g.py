"""Point sets modulo total multiplicity, and bounds on the induced quotient distance.

Two point sets are equivalent when every element carries the same total
multiplicity, so a class is determined by a model-E multiset ``t`` and its
members are all ways of splitting each t(x) into distinct positive parts.
d_G is the quotient pseudometric of d_F over these classes.  Its exact value
is an infimum over arbitrarily long chains, so it is reported as an
interval: a proven lower bound and the best chain found by a bounded search.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import EnumerationLimitError, SpaceMismatchError
from .ground import GroundSpace
from .model_e import metric_guaranteed, warn_if_not_metric
from .model_f import E0, APoint, FPrimeSet, hausdorff
from .multiset import Multiset

PART_BOUND = 30
MAX_CLASSES = 2000


@lru_cache(maxsize=None)
def distinct_partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` into distinct parts, each descending, in descending lex order."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        # remaining parts are distinct and < first, so they sum to at most first*(first-1)/2
        if first * (first + 1) // 2 < n:
            break
        for rest in distinct_partitions(n - first, first - 1):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class GClass:
    canonical: Multiset

    @property
    def is_empty(self) -> bool:
        return not self.canonical

    def __repr__(self) -> str:
        return f"GClass({dict(self.canonical.items())})"


def project(U: FPrimeSet) -> GClass:
    """The class of U: total multiplicity of each element."""
    t: dict[int, int] = {}
    for p in U.points:
        if p.r:
            t[p.x] = t.get(p.x, 0) + p.r
    return GClass(Multiset(t, U.space))


def class_members(g: GClass, bound: int = PART_BOUND) -> list[FPrimeSet]:
    """Every point set whose class is ``g``."""
    t = g.canonical
    if not t:
        return [FPrimeSet(frozenset({E0}), t.space)]
    too_big = [x for x, k in t.items() if k > bound]
    if too_big:
        raise EnumerationLimitError(f"multiplicity {t[too_big[0]]} exceeds partition bound {bound}")
    per_element = [[[APoint(part, x) for part in parts] for parts in distinct_partitions(k)] for x, k in t.items()]
    return [
        FPrimeSet(frozenset(itertools.chain.from_iterable(choice)), t.space)
        for choice in itertools.product(*per_element)
    ]


def class_size(g: GClass) -> int:
    return math.prod(len(distinct_partitions(k)) for _, k in g.canonical.items())


@dataclass(frozen=True)
class DistanceInterval:
    lower: Fraction
    upper: Fraction
    exact: bool
    witness_chain: tuple = ()

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")
        if self.exact and self.lower != self.upper:
            raise ValueError("an exact interval must have lower == upper")


def _check(space: GroundSpace, *classes: GClass) -> None:
    for g in classes:
        if g.canonical.space != space.label:
            raise SpaceMismatchError(f"class over {g.canonical.space!r} used with space {space.label!r}")


def d_G_lower(space: GroundSpace, e: GClass, f: GClass) -> Fraction:
    """Proven lower bound on d_G.

    A chain avoiding e0 costs at least the Hausdorff distance of the root
    sets; one through e0 costs at least 2M; a non-empty class is at least M
    from e0.  When sup d <= 2M the bound is exactly d_H(R(e), R(f)).
    """
    _check(space, e, f)
    if e.is_empty and f.is_empty:
        return Fraction(0)
    if e.is_empty or f.is_empty:
        return space.M
    d_H = hausdorff(space.dist, e.canonical.root_set, f.canonical.root_set)
    return min(d_H, 2 * space.M)


def _candidate_classes(e: GClass, f: GClass, limit: int) -> list[GClass]:
    support = sorted(e.canonical.root_set | f.canonical.root_set)
    top = e.canonical.cardinality + f.canonical.cardinality
    count = math.comb(top + len(support), len(support))
    if count > limit:
        raise EnumerationLimitError(
            f"chain search would visit {count} intermediate classes; limit is {limit}"
        )
    label = e.canonical.space
    out = []
    for total in range(top + 1):
        for cut in itertools.combinations(range(total + len(support) - 1), len(support) - 1):
            bounds = (-1,) + cut + (total + len(support) - 1,)
            mults = [bounds[i + 1] - bounds[i] - 1 for i in range(len(support))]
            g = GClass(Multiset(dict(zip(support, mults)), label))
            if g != e and g != f:
                out.append(g)
    return out


def _min_largest_part(t: int) -> int:
    """Smallest possible largest part over partitions of ``t`` into distinct parts."""
    k = 0
    while k * (k + 1) // 2 < t:
        k += 1
    return k


class _ChainSearch:
    """Class-to-class link costs on the integer-scaled space, memoized."""

    def __init__(self, space: GroundSpace):
        self.D, self.M, self.denom = space.scaled
        self._members: dict[GClass, list[tuple[FPrimeSet, tuple]]] = {}
        self._links: dict[tuple[GClass, GClass], tuple[int, FPrimeSet, FPrimeSet]] = {}

    def members(self, g: GClass):
        if g not in self._members:
            self._members[g] = [(U, tuple((p.r, p.x) for p in U.points)) for U in class_members(g)]
        return self._members[g]

    def d_F(self, U: tuple, V: tuple) -> int:
        D, M = self.D, self.M

        def d_A(p, q):
            lo = min(p[0], q[0])
            base = M * abs(p[0] - q[0])
            return base + lo * D[p[1]][q[1]] if lo else base

        cols = [min(d_A(u, v) for u in U) for v in V]
        rows = [min(d_A(u, v) for v in V) for u in U]
        return max(max(rows), max(cols))

    def bound(self, g: GClass, h: GClass) -> int:
        """Lower bound on d_F between any member of ``g`` and any member of ``h``."""
        tg, th = g.canonical, h.canonical
        if not tg and not th:
            return 0
        big_g = max((_min_largest_part(k) for _, k in tg.items()), default=0)
        big_h = max((_min_largest_part(k) for _, k in th.items()), default=0)
        top_g = max((k for _, k in tg.items()), default=0)
        top_h = max((k for _, k in th.items()), default=0)
        best = max(0, self.M * (big_g - top_h), self.M * (big_h - top_g))
        if tg and th:
            D = self.D
            best = max(best, hausdorff(lambda x, y: D[x][y], tg.root_set, th.root_set))
        return best

    def link(self, g: GClass, h: GClass) -> tuple[int, FPrimeSet, FPrimeSet]:
        key = (g, h)
        if key not in self._links:
            floor = self.bound(g, h)
            best = None
            for U, u in self.members(g):
                for V, v in self.members(h):
                    d = self.d_F(u, v)
                    if best is None or d < best[0]:
                        best = (d, U, V)
                        if d == floor:
                            break
                if best[0] == floor:
                    break
            self._links[key] = best
        return self._links[key]


def d_G_upper(
    space: GroundSpace,
    e: GClass,
    f: GClass,
    hops: int = 1,
    max_classes: int = MAX_CLASSES,
) -> tuple[Fraction, tuple]:
    """Shortest chain from ``e`` to ``f`` through at most ``hops`` intermediate classes.

    Each link costs the least d_F between some member of one class and some
    member of the next.  Intermediates range over classes supported on
    R(e) | R(f) with cardinality at most C(e) + C(f).  Returns the value and
    the chain as a tuple of (U, V) member pairs.
    """
    if hops < 0:
        raise ValueError("hops must be >= 0")
    _check(space, e, f)
    warn_if_not_metric(space, "dG")
    if e == f:
        rep = FPrimeSet.from_multiset(e.canonical)
        return Fraction(0), ((rep, rep),)

    search = _ChainSearch(space)
    direct, U, V = search.link(e, f)
    best, best_chain = direct, ((U, V),)
    floor = None
    if metric_guaranteed(space, "dG"):
        floor = int(d_G_lower(space, e, f) * search.denom)
    if hops > 0 and best != floor:
        inter = _candidate_classes(e, f, max_classes)
        # Dijkstra over (class, links used); a class popped again with more links is dominated.
        heap = [(0, 0, 0, e, ())]
        fewest: dict[GClass, int] = {}
        tick = itertools.count(1)
        while heap:
            cost, _, used, g, chain = heapq.heappop(heap)
            if cost >= best:
                break
            if fewest.get(g, used + 1) <= used:
                continue
            fewest[g] = used
            if used > 0:
                if cost + search.bound(g, f) < best:
                    step, U, V = search.link(g, f)
                    if cost + step < best:
                        best, best_chain = cost + step, chain + ((U, V),)
                        if best == floor:
                            break
            if used == hops:
                continue
            for h in inter:
                if h == g or fewest.get(h, hops + 1) <= used + 1:
                    continue
                if cost + search.bound(g, h) >= best:
                    continue
                step, U, V = search.link(g, h)
                nxt = cost + step
                if nxt < best:
                    heapq.heappush(heap, (nxt, next(tick), used + 1, h, chain + ((U, V),)))
    return Fraction(best, search.denom), best_chain


def d_G(space: GroundSpace, e: GClass, f: GClass, hops: int = 1, max_classes: int = MAX_CLASSES) -> DistanceInterval:
    lower = d_G_lower(space, e, f)
    upper, chain = d_G_upper(space, e, f, hops, max_classes)
    return DistanceInterval(lower, upper, lower == upper, chain)


@dataclass(frozen=True)
class DiscretenessCertificate:
    uniformly_discrete: bool
    separation: Fraction
    d_G_is_metric: bool


def is_uniformly_discrete(space: GroundSpace) -> DiscretenessCertificate:
    """A finite carrier is always uniformly discrete, with separation its least distance.

    That makes d_G a genuine metric whenever sup d <= 2M.
    """
    sep = space.min_separation()
    return DiscretenessCertificate(sep > 0, sep, sep > 0 and metric_guaranteed(space, "dG"))
