from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from distort_lab.models.embedding import MatrixEmbedding, StepEmbedding
from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.ordinal import Ordinal
from distort_lab.models.tree import TreePath


@dataclass(frozen=True)
class Violation:
    """one failed metric axiom with the points that witness it"""
    kind: str
    points: Tuple[str, ...]
    detail: str = ""


@dataclass(frozen=True)
class MetricReport:
    passed: bool
    point_count: int
    violations: Tuple[Violation, ...] = ()
    truncated: bool = False


@dataclass(frozen=True)
class WitnessReport:
    D: Fraction
    threshold: Fraction
    pairs: Tuple[Tuple[str, str], ...]
    region: IntervalSet
    counts: Tuple[Tuple[Ordinal, int], ...]
    cap: int

    def count(self, alpha: Ordinal) -> int:
        return dict(self.counts)[alpha]


@dataclass(frozen=True)
class StageRecord:
    """one amalgamation step of a staged family embedding"""
    path: TreePath
    rank: Ordinal
    patterns: int
    pattern_cap: int
    bound: Ordinal
    point_count: int


@dataclass(frozen=True)
class FamilyEmbedding:
    embedding: StepEmbedding
    stages: Tuple[StageRecord, ...]
    repaired_pairs: Tuple[Tuple[str, str], ...] = ()

    @property
    def final_patterns(self) -> int:
        return self.stages[-1].patterns if self.stages else 1


@dataclass(frozen=True)
class EmbeddingOutcome:
    """whether the plain coordinate construction is isometric for one size vector"""
    sizes: Tuple[int, ...]
    isometric: bool
    failing_pair: Optional[Tuple[str, str]] = None


@dataclass
class SearchStats:
    nodes: int = 0
    closed: int = 0
    pruned: int = 0
    infeasible: int = 0
    subproblems: int = 0
    exhausted: bool = False
    timed_out: bool = False

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.closed += other.closed
        self.pruned += other.pruned
        self.infeasible += other.infeasible
        self.exhausted = self.exhausted or other.exhausted
        self.timed_out = self.timed_out or other.timed_out


@dataclass(frozen=True)
class DistortionResult:
    lower: Fraction
    upper: Fraction
    witness: MatrixEmbedding
    stats: SearchStats
    status: str
    dims: int
    certified_lower: Optional[Fraction] = None


@dataclass(frozen=True)
class Certificate:
    D: Fraction
    m: int
    base: int
    c_d: float
    n_min: int
    capacity: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class ByproductParams:
    D: Fraction
    m: int
    k: int
    n_exponent: int
    n: Optional[int]


@dataclass(frozen=True)
class CountingReport:
    D: Fraction
    threshold: Fraction
    choices: int
    vacuous: bool
    regions_ok: bool
    gamma_size: int
    min_coords: int
    separated_ok: bool
    counting_ok: bool
    failures: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.regions_ok and self.separated_ok and self.counting_ok


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    duration_ms: float
    detail: str = ""


@dataclass(frozen=True)
class SelftestReport:
    checks: Tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def by_name(self) -> Dict[str, CheckResult]:
        return {c.name: c for c in self.checks}
