"""Bounded ground metric spaces on finite carriers.

Every distance is held as a :class:`fractions.Fraction`.  Table, discrete
and Kendall spaces are rational end to end; Euclidean spaces store the
exact rational value of each rounded float, so downstream arithmetic is
still exact but the metric axioms only hold up to rounding (``exact`` is
False and axiom checks use :data:`FLOAT_TOL`).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .errors import FormatError, MetricAxiomError

FLOAT_TOL = 1e-9
KENDALL_MAX_N = 6


def as_fraction(value: Any) -> Fraction:
    """Convert an int, float, Fraction or ``"p/q"`` string to an exact Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite distance {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a distance")


@dataclass(frozen=True, eq=False)
class GroundSpace:
    """A finite metric space together with its supremum and scale ``M``.

    ``elements`` holds the printable name of each carrier point; multisets
    refer to points by index into this tuple.
    """

    label: str
    elements: tuple[str, ...]
    table: tuple[tuple[Fraction, ...], ...]
    sup_d: Fraction
    M: Fraction
    exact: bool = True
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.M <= 0:
            raise ValueError(f"M must be positive, got {self.M}")
        if len(self.table) != len(self.elements):
            raise ValueError("distance table and element list differ in size")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("element names must be unique")
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def dist(self, i: int, j: int) -> Fraction:
        return self.table[i][j]

    @property
    def theta(self) -> Fraction:
        return theta(self)

    @property
    def tol(self) -> float:
        """Slack allowed when checking inequalities on this space."""
        return 0 if self.exact else FLOAT_TOL

    def index(self, key: int | str) -> int:
        """Resolve an element handle given either as an index or a name."""
        if isinstance(key, bool):
            raise KeyError(key)
        if isinstance(key, int):
            if 0 <= key < len(self.elements):
                return key
            raise KeyError(f"element index {key} out of range for space {self.label!r}")
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no element named {key!r} in space {self.label!r}") from None

    @cached_property
    def scaled(self) -> tuple[tuple[tuple[int, ...], ...], int, int]:
        """(integer table, integer M, denominator) with every value multiplied by the denominator."""
        denom = math.lcm(self.M.denominator, *(x.denominator for row in self.table for x in row))
        table = tuple(tuple(int(x * denom) for x in row) for row in self.table)
        return table, int(self.M * denom), denom

    def multiset(self, counts: dict | None = None):
        """Multiset over this space from ``{name-or-index: multiplicity}``."""
        from .multiset import Multiset

        resolved: dict[int, int] = {}
        for key, mult in (counts or {}).items():
            idx = self.index(key)
            resolved[idx] = resolved.get(idx, 0) + mult
        return Multiset(resolved, self.label)

    def unit(self, key: int | str):
        return self.multiset({key: 1})

    def with_M(self, M: Any) -> GroundSpace:
        return replace(self, M=as_fraction(M))

    def max_pair(self) -> tuple[int, int]:
        """Indices of a pair realizing the largest distance on the carrier."""
        n = len(self)
        return max(
            ((i, j) for i in range(n) for j in range(i + 1, n)),
            key=lambda p: self.table[p[0]][p[1]],
        )

    def min_separation(self) -> Fraction:
        n = len(self)
        return min(self.table[i][j] for i in range(n) for j in range(n) if i != j)


def theta(space: GroundSpace) -> Fraction:
    """Return sup d / M."""
    return space.sup_d / space.M


@dataclass(frozen=True)
class Violation:
    kind: str  # identity | symmetry | positivity | triangle
    elements: tuple[int, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} {self.elements}: {self.detail}"


def check_axioms(space: GroundSpace) -> list[Violation]:
    """Return every metric-axiom violation of ``space.table`` on the whole carrier."""
    d = space.table
    n = len(d)
    tol = space.tol
    out: list[Violation] = []
    for i in range(n):
        if len(d[i]) != n:
            out.append(Violation("shape", (i,), f"row has {len(d[i])} entries, expected {n}"))
            return out
    for i in range(n):
        if d[i][i] != 0:
            out.append(Violation("identity", (i,), f"d(x,x) = {d[i][i]}"))
        for j in range(i + 1, n):
            if abs(d[i][j] - d[j][i]) > tol:
                out.append(Violation("symmetry", (i, j), f"d(x,y) = {d[i][j]} but d(y,x) = {d[j][i]}"))
            if d[i][j] <= 0 or d[j][i] <= 0:
                out.append(Violation("positivity", (i, j), f"d(x,y) = {d[i][j]}"))
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i][k] > d[i][j] + d[j][k] + tol:
            out.append(
                Violation("triangle", (i, j, k), f"d(x,z) = {d[i][k]} > {d[i][j]} + {d[j][k]}")
            )
    return out


def _validated(space: GroundSpace, validate: bool) -> GroundSpace:
    if validate:
        problems = check_axioms(space)
        if problems:
            raise MetricAxiomError(problems)
    return space


def table_space(
    dist: Sequence[Sequence[Any]],
    M: Any = None,
    *,
    label: str = "table",
    elements: Iterable[str] | None = None,
    sup_d: Any = None,
    validate: bool = True,
) -> GroundSpace:
    """Build a space from an explicit square distance table.

    ``sup_d`` is computed from the table; a declared value is accepted only
    if it bounds every entry.  ``M`` defaults to ``sup_d / 2``.  With
    ``validate=False`` a non-metric table is admitted so that
    :func:`check_axioms` can report on it.
    """
    rows = tuple(tuple(as_fraction(v) for v in row) for row in dist)
    n = len(rows)
    if n < 2:
        raise ValueError("a ground space needs at least two elements")
    if any(len(r) != n for r in rows):
        raise ValueError("distance table must be square")
    names = tuple(str(e) for e in elements) if elements is not None else tuple(str(i) for i in range(n))
    computed = max(max(r) for r in rows)
    if sup_d is None:
        sup = computed
    else:
        sup = as_fraction(sup_d)
        if sup < computed:
            raise ValueError(f"declared sup_d {sup} is below the largest table entry {computed}")
    m = sup / 2 if M is None else as_fraction(M)
    return _validated(GroundSpace(label, names, rows, sup, m), validate)


def discrete_space(n: int, scale: Any = 1, M: Any = None, *, label: str = "discrete") -> GroundSpace:
    """``n`` points at mutual distance ``scale``."""
    if n < 2:
        raise ValueError("a ground space needs at least two elements")
    s = as_fraction(scale)
    if s <= 0:
        raise ValueError("scale must be positive")
    rows = tuple(tuple(Fraction(0) if i == j else s for j in range(n)) for i in range(n))
    m = s / 2 if M is None else as_fraction(M)
    return GroundSpace(label, tuple(str(i) for i in range(n)), rows, s, m)


def euclidean_space(
    points: Sequence[Sequence[float]],
    M: Any = None,
    *,
    label: str = "euclidean",
    elements: Iterable[str] | None = None,
) -> GroundSpace:
    """Finite subset of R^k with the Euclidean distance."""
    pts = [tuple(float(c) for c in p) for p in points]
    if len(pts) < 2:
        raise ValueError("a ground space needs at least two elements")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise ValueError(f"points have mixed dimensions {sorted(dims)}")
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate points would give zero distance between distinct elements")
    n = len(pts)
    rows = tuple(tuple(Fraction(math.dist(pts[i], pts[j])) for j in range(n)) for i in range(n))
    sup = max(max(r) for r in rows)
    names = tuple(str(e) for e in elements) if elements is not None else tuple(str(i) for i in range(n))
    m = sup / 2 if M is None else as_fraction(M)
    return GroundSpace(label, names, rows, sup, m, exact=False)


def inversions(p: Sequence[int], q: Sequence[int]) -> int:
    """Number of candidate pairs ranked in opposite order by ``p`` and ``q``."""
    pos = {c: k for k, c in enumerate(q)}
    seq = [pos[c] for c in p]
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def kendall_tau_space(n: int, M: Any = None, *, label: str = "kendall") -> GroundSpace:
    """All rankings of ``n`` candidates under the Kendall tau distance."""
    if n < 2:
        raise ValueError("need at least two candidates")
    if n > KENDALL_MAX_N:
        raise ValueError(f"kendall space enumerates n! rankings; n must be <= {KENDALL_MAX_N}, got {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    rows = tuple(tuple(Fraction(inversions(p, q)) for q in perms) for p in perms)
    sup = Fraction(n * (n - 1), 2)
    sep = "" if n <= 9 else ","
    names = tuple(sep.join(map(str, p)) for p in perms)
    m = sup / 2 if M is None else as_fraction(M)
    return GroundSpace(label, names, rows, sup, m)


# -- JSON documents ---------------------------------------------------------


def space_from_dict(doc: dict, M: Any = None) -> GroundSpace:
    """Build a space from its JSON document; ``M`` overrides the file's value."""
    if not isinstance(doc, dict):
        raise FormatError("space document must be a JSON object")
    try:
        kind = doc["kind"]
        label = str(doc.get("label", kind))
        m = doc.get("M") if M is None else M
        if kind == "table":
            return table_space(
                doc["dist"], m, label=label, elements=doc.get("elements"), sup_d=doc.get("sup_d")
            )
        if kind == "discrete":
            return discrete_space(int(doc["n"]), doc.get("scale", 1), m, label=label)
        if kind == "euclidean":
            return euclidean_space(doc["points"], m, label=label, elements=doc.get("elements"))
        if kind == "kendall":
            return kendall_tau_space(int(doc["n"]), m, label=label)
    except KeyError as exc:
        raise FormatError(f"space document missing field {exc}") from None
    except TypeError as exc:
        raise FormatError(f"bad value in space document: {exc}") from None
    raise FormatError(f"unknown space kind {kind!r}")


def load_json(path: str | Path) -> Any:
    """Read JSON with non-integer numbers parsed as exact decimals."""
    try:
        with open(path) as fh:
            return json.load(fh, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None


def load_space(path: str | Path, M: Any = None) -> GroundSpace:
    return space_from_dict(load_json(path), M)
