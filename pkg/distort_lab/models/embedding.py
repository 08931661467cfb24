from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from distort_lab.models.metric_space import MetricSpace
from distort_lab.models.ordinal import Ordinal
from distort_lab.models.step_function import StepFunction
from distort_lab.utils.exceptions import DomainError


@dataclass(frozen=True)
class MatrixEmbedding:
    """map into l_inf^n: one row of coordinate values per domain point"""

    domain: MetricSpace
    coordinates: Tuple[str, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]
    repaired_pairs: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self):
        if len(self.entries) != self.domain.size:
            raise DomainError("matrix embedding needs one row per domain point")
        if any(len(row) != len(self.coordinates) for row in self.entries):
            raise DomainError("every row needs one entry per coordinate")

    def row(self, label: str) -> Tuple[Fraction, ...]:
        return self.entries[self.domain.position[label]]

    @property
    def dims(self) -> int:
        return len(self.coordinates)


@dataclass(frozen=True)
class SignPattern:
    """a sign for every shared point other than the basepoint"""

    labels: Tuple[str, ...]
    signs: Tuple[int, ...]

    def of(self, label: str) -> int:
        return self.signs[self.labels.index(label)]


@dataclass(frozen=True)
class StepEmbedding:
    """map into step functions over one common interval [0, bound]"""

    domain: MetricSpace
    bound: Ordinal
    maps: Tuple[StepFunction, ...]
    sign_patterns: Tuple[SignPattern, ...] = ()
    normalized: bool = False

    def __post_init__(self):
        if len(self.maps) != self.domain.size:
            raise DomainError("step embedding needs one function per domain point")
        if any(f.bound != self.bound for f in self.maps):
            raise DomainError("all images must share the bound")
        if self.normalized and not self.maps[self.domain.basepoint].is_zero:
            raise DomainError("normalized embeddings send the basepoint to 0")

    def image(self, label: str) -> StepFunction:
        return self.maps[self.domain.position[label]]

    @property
    def pattern_count(self) -> int:
        return len(self.sign_patterns)
