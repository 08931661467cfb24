from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from distort_lab.models.ordinal import ZERO, Ordinal, format_ordinal
from distort_lab.utils.exceptions import DomainError

Piece = Tuple[Ordinal, Ordinal]


@dataclass(frozen=True)
class IntervalSet:
    """
    clopen subset of [0, bound] as sorted disjoint pieces (l, r]

    the point 0 is never inside a piece and is carried by include_zero
    """

    bound: Ordinal
    pieces: Tuple[Piece, ...] = ()
    include_zero: bool = False

    def __post_init__(self):
        prev_right = None
        for left, right in self.pieces:
            if not left < right:
                raise DomainError(f"empty piece ({left}, {right}]")
            if right > self.bound:
                raise DomainError(f"piece ({left}, {right}] exceeds bound {self.bound}")
            if prev_right is not None and left < prev_right:
                raise DomainError("pieces must be sorted and disjoint")
            prev_right = right

    @classmethod
    def build(cls, bound: Ordinal, pieces: Iterable[Piece], include_zero: bool = False) -> "IntervalSet":
        """sort, then merge overlapping or touching pieces"""
        return cls(bound, _merge(pieces), include_zero)

    @classmethod
    def full(cls, bound: Ordinal) -> "IntervalSet":
        return cls(bound, ((ZERO, bound),) if not bound.is_zero else (), True)

    @classmethod
    def empty(cls, bound: Ordinal) -> "IntervalSet":
        return cls(bound)

    @property
    def is_empty(self) -> bool:
        return not self.pieces and not self.include_zero

    def contains(self, gamma: Ordinal) -> bool:
        if gamma.is_zero:
            return self.include_zero
        rights = [r for _, r in self.pieces]
        i = bisect_left(rights, gamma)
        return i < len(self.pieces) and self.pieces[i][0] < gamma

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out: List[Piece] = []
        i = j = 0
        while i < len(self.pieces) and j < len(other.pieces):
            (l1, r1), (l2, r2) = self.pieces[i], other.pieces[j]
            left, right = max(l1, l2), min(r1, r2)
            if left < right:
                out.append((left, right))
            if r1 < r2:
                i += 1
            else:
                j += 1
        return IntervalSet(min(self.bound, other.bound), tuple(out), self.include_zero and other.include_zero)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet.build(
            max(self.bound, other.bound),
            self.pieces + other.pieces,
            self.include_zero or other.include_zero,
        )

    def issubset(self, other: "IntervalSet") -> bool:
        if self.include_zero and not other.include_zero:
            return False
        return _merge(self.intersect(other).pieces) == _merge(self.pieces)

    def __str__(self) -> str:
        parts = (["{0}"] if self.include_zero else []) + [
            f"({format_ordinal(l)}, {format_ordinal(r)}]" for l, r in self.pieces
        ]
        return " u ".join(parts) if parts else "{}"


def _merge(pieces: Iterable[Piece]) -> Tuple[Piece, ...]:
    merged: List[Piece] = []
    for left, right in sorted(p for p in pieces if p[0] < p[1]):
        if merged and left <= merged[-1][1]:
            if right > merged[-1][1]:
                merged[-1] = (merged[-1][0], right)
        else:
            merged.append((left, right))
    return tuple(merged)
