"""Finite multisets over a ground space, stored as sparse multiplicity maps."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Iterable, Iterator, Mapping

from .errors import FormatError, SpaceMismatchError

if TYPE_CHECKING:
    from .ground import GroundSpace


class Multiset:
    """An immutable map from element index to positive multiplicity.

    Zero multiplicities are never stored, so ``root_set`` is exactly the key
    set and the empty multiset is e0.  Operators follow the lattice and
    difference operations on multisets:

    ``e | f`` union (pointwise max), ``e & f`` intersection (pointwise min),
    ``e - f`` difference ``e - (e & f)``, ``e ^ f`` symmetric difference,
    ``e + f`` sum, ``e <= f`` submultiset.
    """

    __slots__ = ("_counts", "space", "_hash")

    def __init__(self, counts: Mapping[int, int] | None = None, space: str = ""):
        clean: dict[int, int] = {}
        for key, mult in (counts or {}).items():
            if isinstance(mult, bool) or not isinstance(mult, int):
                raise TypeError(f"multiplicity of {key!r} must be an int, got {mult!r}")
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} for {key!r}")
            if mult:
                clean[key] = mult
        self._counts = dict(sorted(clean.items()))
        self.space = space
        self._hash = None

    @classmethod
    def empty(cls, space: str = "") -> Multiset:
        return cls({}, space)

    @classmethod
    def unit(cls, elem: int, space: str = "") -> Multiset:
        """The multiset holding a single copy of ``elem``."""
        return cls({elem: 1}, space)

    @classmethod
    def from_elements(cls, elems: Iterable[int], space: str = "") -> Multiset:
        counts: dict[int, int] = {}
        for x in elems:
            counts[x] = counts.get(x, 0) + 1
        return cls(counts, space)

    # -- basic queries -----------------------------------------------------

    def __getitem__(self, elem: int) -> int:
        return self._counts.get(elem, 0)

    def __contains__(self, elem: object) -> bool:
        return elem in self._counts

    def __iter__(self) -> Iterator[int]:
        return iter(self._counts)

    def items(self):
        return self._counts.items()

    def counts(self) -> dict[int, int]:
        return dict(self._counts)

    @property
    def cardinality(self) -> int:
        return sum(self._counts.values())

    @property
    def root_set(self) -> frozenset[int]:
        return frozenset(self._counts)

    def elements(self) -> list[int]:
        """Each element repeated by its multiplicity, in index order."""
        return [x for x, k in self._counts.items() for _ in range(k)]

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.space == other.space and self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, tuple(self._counts.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self._counts.items())
        return f"Multiset({{{body}}}, space={self.space!r})"

    # -- algebra -----------------------------------------------------------

    def _same_space(self, other: Multiset) -> None:
        if not isinstance(other, Multiset):
            raise TypeError(f"expected a Multiset, got {type(other).__name__}")
        if self.space != other.space:
            raise SpaceMismatchError(f"multisets over {self.space!r} and {other.space!r} cannot be combined")

    def __or__(self, other: Multiset) -> Multiset:
        self._same_space(other)
        keys = self._counts.keys() | other._counts.keys()
        return Multiset({k: max(self[k], other[k]) for k in keys}, self.space)

    def __and__(self, other: Multiset) -> Multiset:
        self._same_space(other)
        keys = self._counts.keys() & other._counts.keys()
        return Multiset({k: min(self[k], other[k]) for k in keys}, self.space)

    def __add__(self, other: Multiset) -> Multiset:
        self._same_space(other)
        keys = self._counts.keys() | other._counts.keys()
        return Multiset({k: self[k] + other[k] for k in keys}, self.space)

    def __sub__(self, other: Multiset) -> Multiset:
        self._same_space(other)
        return Multiset({k: max(v - other[k], 0) for k, v in self._counts.items()}, self.space)

    def __xor__(self, other: Multiset) -> Multiset:
        return symmetric_difference(self, other)

    def __le__(self, other: Multiset) -> bool:
        return is_submultiset(self, other)

    def __mul__(self, k: int) -> Multiset:
        return Multiset({x: v * k for x, v in self._counts.items()}, self.space)

    __rmul__ = __mul__

    # -- serialization -----------------------------------------------------

    def to_dict(self, space: GroundSpace | None = None) -> dict:
        """JSON document; element names are used when ``space`` is given."""
        name = (lambda i: space.elements[i]) if space is not None else (lambda i: i)
        return {
            "space": self.space,
            "elements": [{"elem": name(k), "mult": v} for k, v in self._counts.items()],
        }

    @classmethod
    def from_dict(cls, doc: Any, space: GroundSpace) -> Multiset:
        if not isinstance(doc, dict) or "elements" not in doc:
            raise FormatError("multiset document needs an 'elements' list")
        label = doc.get("space", space.label)
        if label != space.label:
            raise SpaceMismatchError(f"multiset refers to space {label!r}, loaded space is {space.label!r}")
        counts: dict[int, int] = {}
        for entry in doc["elements"]:
            try:
                key, mult = entry["elem"], entry["mult"]
                idx = space.index(key)
            except (KeyError, TypeError) as exc:
                raise FormatError(f"bad multiset entry {entry!r}: {exc}") from None
            if idx in counts:
                raise FormatError(f"duplicate element {key!r} in multiset")
            if isinstance(mult, bool) or not isinstance(mult, int) or mult < 1:
                raise FormatError(f"multiplicity must be a positive integer, got {mult!r}")
            counts[idx] = mult
        return cls(counts, space.label)


def union(e: Multiset, f: Multiset) -> Multiset:
    return e | f


def intersection(e: Multiset, f: Multiset) -> Multiset:
    return e & f


def difference(e: Multiset, f: Multiset) -> Multiset:
    """``e`` minus its intersection with ``f``."""
    return e - f


def symmetric_difference(e: Multiset, f: Multiset) -> Multiset:
    e._same_space(f)
    via_differences = (e - f) + (f - e)
    meet = e & f
    via_lattice = Multiset({k: v - meet[k] for k, v in (e | f).items()}, e.space)
    assert via_differences == via_lattice
    return via_differences


def cardinality(e: Multiset) -> int:
    return e.cardinality


def root_set(e: Multiset) -> frozenset[int]:
    return e.root_set


def is_submultiset(e: Multiset, f: Multiset) -> bool:
    e._same_space(f)
    return all(v <= f[k] for k, v in e.items())


def is_disjoint(e: Multiset, f: Multiset) -> bool:
    return not (e & f)
