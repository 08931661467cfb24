from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from distort_lab.utils.exceptions import DomainError

BASEPOINT = "bot"


@dataclass(frozen=True)
class GraphSpec:
    """level sizes (n_1, ..., n_h) of M(A_0^top, A_1^n_1, ..., A_h^n_h)"""
    sizes: Tuple[int, ...] = ()
    top_size: int = 2

    def __post_init__(self):
        if self.top_size < 2:
            raise DomainError(f"top alphabet needs at least 2 points, got {self.top_size}")
        for n in self.sizes:
            if not isinstance(n, int) or n < 1:
                raise DomainError(f"level sizes must be positive integers, got {self.sizes}")

    @property
    def third_level_count(self) -> int:
        count = self.top_size
        for n in self.sizes:
            count *= n
        return count

    @property
    def point_count(self) -> int:
        return 1 + self.top_size + sum(self.sizes) + self.third_level_count


@dataclass(frozen=True)
class MetricSpace:
    """finite labelled metric space with exact rational distances"""

    labels: Tuple[str, ...]
    dist: Tuple[Tuple[Fraction, ...], ...]
    basepoint: int = 0
    shared: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise DomainError("point labels must be unique")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise DomainError(f"distance matrix must be {n}x{n}")
        if not 0 <= self.basepoint < n:
            raise DomainError("basepoint index out of range")
        if any(not 0 <= i < n for i in self.shared):
            raise DomainError("shared index out of range")

    @classmethod
    def from_rows(
        cls,
        labels: Sequence[str],
        rows: Sequence[Sequence],
        basepoint: str = BASEPOINT,
        shared: Iterable[str] = (),
    ) -> "MetricSpace":
        labels = tuple(labels)
        position = {label: i for i, label in enumerate(labels)}
        missing = [s for s in [basepoint, *shared] if s not in position]
        if missing:
            raise DomainError(f"unknown labels {missing}")
        return cls(
            labels,
            tuple(tuple(Fraction(v) for v in row) for row in rows),
            position[basepoint],
            frozenset(position[s] for s in shared),
        )

    @cached_property
    def position(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def basepoint_label(self) -> str:
        return self.labels[self.basepoint]

    @property
    def shared_labels(self) -> List[str]:
        return [self.labels[i] for i in sorted(self.shared)]

    def d(self, x: str, y: str) -> Fraction:
        return self.dist[self.position[x]][self.position[y]]

    def pairs(self):
        """index pairs i < j in point order"""
        n = self.size
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    @property
    def diameter(self) -> Fraction:
        return max((v for row in self.dist for v in row), default=Fraction(0))

    @property
    def min_distance(self) -> Fraction:
        return min((self.dist[i][j] for i, j in self.pairs()), default=Fraction(0))

    def subspace(self, labels: Sequence[str]) -> "MetricSpace":
        """restriction to the given points, in the given order"""
        labels = tuple(labels)
        idx = [self.position[label] for label in labels]
        if self.basepoint_label not in labels:
            raise DomainError("a subspace must keep the basepoint")
        return MetricSpace(
            labels,
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx),
            labels.index(self.basepoint_label),
            frozenset(k for k, i in enumerate(idx) if i in self.shared),
        )
