"""F2 calculus on points and lines: odd/even maps, multiplicities, rank.

Point sets and line sets are length-N bit vectors held in Python ints
(bit i = element i).  XOR is symmetric difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator

import numpy as np

if TYPE_CHECKING:
    from .plane import IncidenceStructure


class BitSet:
    __slots__ = ("n", "bits", "_card")

    def __init__(self, n: int, bits: int = 0):
        self.n = n
        self.bits = bits
        self._card = None

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]):
        b = 0
        for i in indices:
            b |= 1 << int(i)
        return cls(n, b)

    @classmethod
    def from_bool(cls, v) -> "BitSet":
        v = np.asarray(v, dtype=bool)
        return cls.from_indices(len(v), np.flatnonzero(v))

    @classmethod
    def from_hex(cls, n: int, text: str):
        return cls(n, int(text, 16))

    @classmethod
    def full(cls, n: int):
        return cls(n, (1 << n) - 1)

    def hex(self) -> str:
        return format(self.bits, "x")

    def __len__(self) -> int:
        if self._card is None:
            self._card = self.bits.bit_count()
        return self._card

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __contains__(self, i: int) -> bool:
        return bool(self.bits >> int(i) & 1)

    def __xor__(self, other):
        return type(self)(self.n, self.bits ^ other.bits)

    def __and__(self, other):
        return type(self)(self.n, self.bits & other.bits)

    def __or__(self, other):
        return type(self)(self.n, self.bits | other.bits)

    def __sub__(self, other):
        return type(self)(self.n, self.bits & ~other.bits)

    def __invert__(self):
        return type(self)(self.n, self.bits ^ ((1 << self.n) - 1))

    complement = __invert__

    def __eq__(self, other) -> bool:
        return isinstance(other, BitSet) and self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def to_bool(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        out[list(self)] = True
        return out

    def indices(self) -> list[int]:
        return list(self)

    def toggle(self, i: int):
        return type(self)(self.n, self.bits ^ (1 << int(i)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, size={len(self)}, hex={self.hex()})"


class PointSet(BitSet):
    __slots__ = ()


class LineSet(BitSet):
    __slots__ = ()


def odd_points(plane: "IncidenceStructure", R: LineSet) -> PointSet:
    """Points on an odd number of lines of R (XOR of their point masks)."""
    acc = 0
    masks = plane.line_masks
    for l in R:
        acc ^= masks[l]
    return PointSet(plane.N, acc)


def odd_lines(plane: "IncidenceStructure", S: PointSet) -> LineSet:
    """Lines meeting S in an odd number of points."""
    acc = 0
    masks = plane.point_masks
    for p in S:
        acc ^= masks[p]
    return LineSet(plane.N, acc)


def even_points(plane: "IncidenceStructure", R: LineSet) -> PointSet:
    return ~odd_points(plane, R)


def even_lines(plane: "IncidenceStructure", S: PointSet) -> LineSet:
    return ~odd_lines(plane, S)


def roundtrip(plane: "IncidenceStructure", S: PointSet) -> PointSet:
    return odd_points(plane, odd_lines(plane, S))


@dataclass
class MultiplicityProfile:
    """t[i] = number of points lying on exactly i lines of R."""

    r: int
    q: int
    t: dict[int, int]

    @property
    def N(self) -> int:
        return self.q * self.q + self.q + 1

    def moment(self, fn) -> int:
        return sum(fn(i) * c for i, c in self.t.items())

    def odd_count(self) -> int:
        return sum(c for i, c in self.t.items() if i % 2)

    def triple_count(self) -> int:
        return sum(c for i, c in self.t.items() if i >= 3)

    def check(self) -> bool:
        r, q = self.r, self.q
        return (
            self.moment(lambda i: 1) == self.N
            and self.moment(lambda i: i) == r * (q + 1)
            and self.moment(lambda i: i * (i - 1)) == r * (r - 1)
            and self.moment(lambda i: i * (2 - i)) == r * (q + 2 - r)
        )


def multiplicity_profile(plane: "IncidenceStructure", R: LineSet) -> MultiplicityProfile:
    deg = plane.line_degrees(R)
    vals, counts = np.unique(deg, return_counts=True)
    return MultiplicityProfile(len(R), plane.q, {int(v): int(c) for v, c in zip(vals, counts)})


def triple_points(plane: "IncidenceStructure", R: LineSet) -> PointSet:
    return PointSet.from_bool(plane.line_degrees(R) >= 3)


def gf2_rank(rows: list[int]) -> int:
    """Rank over F2 of integer-encoded rows (pivot on the lowest set bit)."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = (row & -row).bit_length() - 1
            if low not in pivots:
                pivots[low] = row
                break
            row ^= pivots[low]
    return len(pivots)


def incidence_rank(plane: "IncidenceStructure") -> int:
    return gf2_rank(list(plane.line_masks))
