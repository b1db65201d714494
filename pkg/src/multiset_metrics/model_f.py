"""Multisets as finite sets of weighted points ``r e_x``.

An :class:`APoint` is "r copies of x"; all points with r = 0 are the single
point e0.  d_A and d_Am are metrics on such points for sup d <= 2M, and
d_F / d_Fm are the Hausdorff distances they induce on finite point sets.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Collection, Iterable, TypeVar

from .errors import FormatError, SpaceMismatchError, ThetaThresholdWarning
from .ground import GroundSpace
from .model_e import METRIC_THRESHOLDS, TriangleWitness, warn_if_not_metric
from .multiset import Multiset

P = TypeVar("P")


@dataclass(frozen=True)
class APoint:
    r: int
    x: int | None = None

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, int) or self.r < 0:
            raise ValueError(f"multiplicity must be a natural number, got {self.r!r}")
        if self.r == 0:
            object.__setattr__(self, "x", None)
        elif self.x is None:
            raise ValueError("a point with r > 0 needs an element")

    @property
    def is_zero(self) -> bool:
        return self.r == 0

    def __repr__(self) -> str:
        return "e0" if self.r == 0 else f"{self.r}e_{self.x}"


E0 = APoint(0)


def _check_point(space: GroundSpace, p: APoint) -> None:
    if p.x is not None and not 0 <= p.x < len(space):
        raise SpaceMismatchError(f"{p!r} does not refer to an element of {space.label!r}")


def _d_A(space: GroundSpace, p: APoint, q: APoint) -> Fraction:
    lo = min(p.r, q.r)
    base = space.M * abs(q.r - p.r)
    return base + lo * space.dist(p.x, q.x) if lo else base


def d_A(space: GroundSpace, p: APoint, q: APoint) -> Fraction:
    """M|t - r| + min(r, t) d(x, z) for p = r e_x, q = t e_z."""
    _check_point(space, p)
    _check_point(space, q)
    warn_if_not_metric(space, "dA")
    return _d_A(space, p, q)


def _d_Am(space: GroundSpace, p: APoint, q: APoint) -> Fraction:
    top = max(p.r, q.r)
    return _d_A(space, p, q) / top if top else Fraction(0)


def d_Am(space: GroundSpace, p: APoint, q: APoint) -> Fraction:
    """d_A divided by the larger multiplicity; 0 between e0 and itself."""
    _check_point(space, p)
    _check_point(space, q)
    warn_if_not_metric(space, "dAm")
    return _d_Am(space, p, q)


def hausdorff(dist: Callable[[P, P], Any], U: Collection[P], V: Collection[P]):
    """Largest of all row and column minima of the distance matrix between U and V."""
    if not U or not V:
        raise ValueError("Hausdorff distance needs two non-empty sets")
    V = list(V)
    matrix = [[dist(u, v) for v in V] for u in U]
    rows = max(min(row) for row in matrix)
    cols = max(min(col) for col in zip(*matrix))
    return max(rows, cols)


@dataclass(frozen=True)
class FPrimeSet:
    """A finite non-empty set of A-points; ``{e0}`` stands for the empty multiset."""

    points: frozenset
    space: str = ""

    def __post_init__(self):
        pts = frozenset(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("point sets must be non-empty; use {e0} for the empty multiset")
        if E0 in pts and len(pts) > 1:
            raise ValueError("e0 may only appear as the sole point of a set")

    @classmethod
    def of(cls, points: Iterable[APoint | tuple[int, int]], space: str = "") -> FPrimeSet:
        return cls(frozenset(p if isinstance(p, APoint) else APoint(*p) for p in points), space)

    @classmethod
    def from_multiset(cls, e: Multiset) -> FPrimeSet:
        """The F-representative {e(x) e_x : x in R(e)}."""
        if not e:
            return cls(frozenset({E0}), e.space)
        return cls(frozenset(APoint(k, x) for x, k in e.items()), e.space)

    @property
    def is_F(self) -> bool:
        """True when no element of X appears with two different multiplicities."""
        xs = [p.x for p in self.points if p.r]
        return len(xs) == len(set(xs))

    def to_multiset(self) -> Multiset:
        if not self.is_F:
            raise ValueError("set repeats an element with different multiplicities, so it is not a multiset")
        return Multiset({p.x: p.r for p in self.points if p.r}, self.space)

    def sorted_points(self) -> list[APoint]:
        return sorted(self.points, key=lambda p: (p.x if p.x is not None else -1, p.r))

    def __repr__(self) -> str:
        return "{" + ", ".join(map(repr, self.sorted_points())) + "}"

    def to_dict(self, space: GroundSpace | None = None) -> dict:
        name = (lambda i: space.elements[i]) if space is not None else (lambda i: i)
        pts = [{"r": p.r, "elem": name(p.x)} for p in self.sorted_points() if p.r]
        return {"space": self.space, "points": pts}

    @classmethod
    def from_dict(cls, doc: Any, space: GroundSpace) -> FPrimeSet:
        if not isinstance(doc, dict) or "points" not in doc:
            raise FormatError("point-set document needs a 'points' list")
        label = doc.get("space", space.label)
        if label != space.label:
            raise SpaceMismatchError(f"point set refers to space {label!r}, loaded space is {space.label!r}")
        pts = set()
        for entry in doc["points"]:
            try:
                r, idx = entry["r"], space.index(entry["elem"])
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad point entry {entry!r}: {exc}") from None
            if isinstance(r, bool) or not isinstance(r, int) or r < 1:
                raise FormatError(f"r must be an integer >= 1, got {r!r}")
            p = APoint(r, idx)
            if p in pts:
                raise FormatError(f"duplicate point {entry!r}")
            pts.add(p)
        if not pts:
            pts.add(E0)
        return cls(frozenset(pts), space.label)


def _check_sets(space: GroundSpace, *sets: FPrimeSet) -> None:
    for s in sets:
        if s.space != space.label:
            raise SpaceMismatchError(f"point set over {s.space!r} used with space {space.label!r}")


def d_F(space: GroundSpace, U: FPrimeSet, V: FPrimeSet) -> Fraction:
    """Hausdorff distance between point sets under d_A."""
    _check_sets(space, U, V)
    warn_if_not_metric(space, "dF")
    return hausdorff(lambda p, q: _d_A(space, p, q), U.points, V.points)


def d_Fm(space: GroundSpace, U: FPrimeSet, V: FPrimeSet) -> Fraction:
    """Hausdorff distance between point sets under d_Am."""
    _check_sets(space, U, V)
    warn_if_not_metric(space, "dFm")
    return hausdorff(lambda p, q: _d_Am(space, p, q), U.points, V.points)


def counterexample_triangle_A(space: GroundSpace, metric: str = "dA") -> TriangleWitness | None:
    """(2e_x, e_x, 2e_z) for the farthest pair x, z when d(x, z) > 2M.

    Under d_A the slack of this triple is 2M - d(x, z); under d_Am it is
    half of that.
    """
    if metric not in ("dA", "dAm"):
        raise ValueError(f"metric must be 'dA' or 'dAm', got {metric!r}")
    x, z = space.max_pair()
    if space.dist(x, z) <= METRIC_THRESHOLDS[metric] * space.M:
        return None
    p, q, r = APoint(2, x), APoint(1, x), APoint(2, z)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ThetaThresholdWarning)
        dist = d_A if metric == "dA" else d_Am
        w = TriangleWitness(metric, (p, q, r), dist(space, p, q), dist(space, q, r), dist(space, p, r))
    assert w.slack < 0
    return w
