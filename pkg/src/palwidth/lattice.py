"""Finitely supported functions Z^r -> V stored sparsely.

Values may be integers, words, or base-group elements; entries equal to the
function's zero are never stored.  All operations are pure.
"""

from __future__ import annotations

import itertools
import operator
from typing import Any, Callable, Iterable

Point = tuple[int, ...]


class LatticeFn:
    """Sparse map from Z^r points to nonzero values of some abelian-ish V."""

    __slots__ = ("r", "_entries", "zero")

    def __init__(self, r: int, entries: dict[Point, Any] | None = None, zero: Any = 0):
        if r < 1:
            raise ValueError(f"rank must be >= 1, got {r}")
        clean: dict[Point, Any] = {}
        for point, value in (entries or {}).items():
            point = tuple(point)
            if len(point) != r:
                raise ValueError(f"point {point} has wrong dimension (rank {r})")
            if value != zero:
                clean[point] = value
        self.r = r
        self._entries = clean
        self.zero = zero

    # -- basic access ------------------------------------------------------

    def __getitem__(self, point: Point) -> Any:
        return self._entries.get(tuple(point), self.zero)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeFn):
            return NotImplemented
        return self.r == other.r and self._entries == other._entries

    def __repr__(self) -> str:
        items = ", ".join(f"{p}->{v!r}" for p, v in self.items())
        return f"LatticeFn(r={self.r}, {{{items}}})"

    def items(self) -> list[tuple[Point, Any]]:
        """Entries in lexicographic point order."""
        return sorted(self._entries.items())

    def support(self) -> tuple[Point, ...]:
        return tuple(sorted(self._entries))

    def support_size(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def frozen(self) -> tuple:
        """Hashable snapshot (rank plus sorted entries)."""
        return (self.r, tuple(self.items()))

    def box_radius(self) -> int:
        """Smallest n with support inside [-n, n]^r (0 for the zero function)."""
        return max((max(abs(c) for c in p) for p in self._entries), default=0)

    # -- transformations ----------------------------------------------------

    def shift(self, v: Point) -> "LatticeFn":
        """result(x) = self(x - v)."""
        v = tuple(v)
        if len(v) != self.r:
            raise ValueError(f"shift vector {v} has wrong dimension (rank {self.r})")
        moved = {tuple(p + d for p, d in zip(point, v)): val
                 for point, val in self._entries.items()}
        return LatticeFn(self.r, moved, self.zero)

    def reflect(self, two_p: Point, neg: Callable[[Any], Any] = operator.neg) -> "LatticeFn":
        """result(x) = -self(two_p - x); two_p is twice the reflection center."""
        two_p = tuple(two_p)
        if len(two_p) != self.r:
            raise ValueError(f"center {two_p} has wrong dimension (rank {self.r})")
        # result(x) != 0 exactly when self(two_p - x) != 0.
        out = {tuple(c - p for c, p in zip(two_p, point)): neg(val)
               for point, val in self._entries.items()}
        return LatticeFn(self.r, out, self.zero)

    def map_values(self, fn: Callable[[Any], Any], zero: Any = None) -> "LatticeFn":
        new_zero = self.zero if zero is None else zero
        return LatticeFn(self.r, {p: fn(v) for p, v in self._entries.items()}, new_zero)

    def combine(self, other: "LatticeFn", op: Callable[[Any, Any], Any]) -> "LatticeFn":
        """Pointwise op over the union of supports, using self's zero for gaps."""
        if self.r != other.r:
            raise ValueError("rank mismatch")
        out: dict[Point, Any] = {}
        for point in set(self._entries) | set(other._entries):
            out[point] = op(self[point], other[point])
        return LatticeFn(self.r, out, self.zero)

    # -- integer-valued helpers ----------------------------------------------

    def add(self, other: "LatticeFn") -> "LatticeFn":
        return self.combine(other, operator.add)

    def negate(self) -> "LatticeFn":
        return self.map_values(operator.neg)

    def total(self) -> int:
        return sum(self._entries.values())

    def grid_sum(self, v: Point) -> int:
        """Exact sum over the coset 2Z^r + v."""
        v = tuple(c % 2 for c in v)
        if len(v) != self.r:
            raise ValueError(f"grid vector {v} has wrong dimension (rank {self.r})")
        return sum(val for point, val in self._entries.items()
                   if tuple(c % 2 for c in point) == v)

    # -- serialization --------------------------------------------------------

    def to_json(self, encode: Callable[[Any], Any] = lambda v: v) -> dict:
        return {
            "r": self.r,
            "entries": [{"pos": list(p), "val": encode(v)} for p, v in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict, zero: Any = 0,
                  decode: Callable[[Any], Any] = lambda v: v) -> "LatticeFn":
        r = int(data["r"])
        entries = {tuple(int(c) for c in e["pos"]): decode(e["val"])
                   for e in data["entries"]}
        return cls(r, entries, zero)


def zero_fn(r: int, zero: Any = 0) -> LatticeFn:
    return LatticeFn(r, {}, zero)


def grid_vectors(r: int) -> list[Point]:
    """All 2^r vectors in {0,1}^r, lexicographic order."""
    return [v for v in itertools.product((0, 1), repeat=r)]


def from_items(r: int, items: Iterable[tuple[Point, Any]], zero: Any = 0) -> LatticeFn:
    acc: dict[Point, Any] = {}
    for point, value in items:
        point = tuple(point)
        acc[point] = acc.get(point, zero) + value
    return LatticeFn(r, acc, zero)
