from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from distort_lab.config import RunConfig
from distort_lab.models.ordinal import format_ordinal
from distort_lab.models.results import (
    ByproductParams,
    Certificate,
    CountingReport,
    DistortionResult,
    EmbeddingOutcome,
    FamilyEmbedding,
    MetricReport,
    SearchStats,
    SelftestReport,
    StageRecord,
    WitnessReport,
)
from distort_lab.schemas.embedding import MatrixEmbeddingSchema, StepEmbeddingSchema
from distort_lab.utils.rationals import format_rational


class ViolationSchema(BaseModel):
    kind: str
    points: List[str]
    detail: str = ""


class MetricReportSchema(BaseModel):
    passed: bool
    point_count: int
    violations: List[ViolationSchema] = Field(default_factory=list)
    truncated: bool = False

    @classmethod
    def from_domain(cls, r: MetricReport) -> "MetricReportSchema":
        return cls(
            passed=r.passed,
            point_count=r.point_count,
            violations=[ViolationSchema(kind=v.kind, points=list(v.points), detail=v.detail) for v in r.violations],
            truncated=r.truncated,
        )


class WitnessReportSchema(BaseModel):
    D: str
    threshold: str
    pairs: List[List[str]]
    region: str
    counts: Dict[str, int]
    cap: int

    @classmethod
    def from_domain(cls, r: WitnessReport) -> "WitnessReportSchema":
        return cls(
            D=format_rational(r.D),
            threshold=format_rational(r.threshold),
            pairs=[list(p) for p in r.pairs],
            region=str(r.region),
            counts={format_ordinal(alpha): n for alpha, n in r.counts},
            cap=r.cap,
        )


class StageRecordSchema(BaseModel):
    path: List[int]
    rank: str
    patterns: int
    pattern_cap: int
    bound: str
    point_count: int

    @classmethod
    def from_domain(cls, s: StageRecord) -> "StageRecordSchema":
        return cls(
            path=list(s.path),
            rank=format_ordinal(s.rank),
            patterns=s.patterns,
            pattern_cap=s.pattern_cap,
            bound=format_ordinal(s.bound),
            point_count=s.point_count,
        )


class FamilyEmbeddingSchema(BaseModel):
    embedding: StepEmbeddingSchema
    stages: List[StageRecordSchema]
    repaired_pairs: List[List[str]] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, f: FamilyEmbedding) -> "FamilyEmbeddingSchema":
        return cls(
            embedding=StepEmbeddingSchema.from_domain(f.embedding),
            stages=[StageRecordSchema.from_domain(s) for s in f.stages],
            repaired_pairs=[list(p) for p in f.repaired_pairs],
        )


class EmbeddingOutcomeSchema(BaseModel):
    sizes: List[int]
    isometric: bool
    failing_pair: Optional[List[str]] = None

    @classmethod
    def from_domain(cls, o: EmbeddingOutcome) -> "EmbeddingOutcomeSchema":
        return cls(
            sizes=list(o.sizes),
            isometric=o.isometric,
            failing_pair=list(o.failing_pair) if o.failing_pair else None,
        )


class SearchStatsSchema(BaseModel):
    nodes: int
    closed: int
    pruned: int
    infeasible: int
    subproblems: int
    exhausted: bool
    timed_out: bool

    @classmethod
    def from_domain(cls, s: SearchStats) -> "SearchStatsSchema":
        return cls(**vars(s))


class DistortionResultSchema(BaseModel):
    """exact bounds on the minimum distortion, with the witness achieving the upper one"""
    lower: str
    upper: str
    status: str
    dims: int
    certified_lower: Optional[str] = None
    witness: MatrixEmbeddingSchema
    stats: SearchStatsSchema
    run: Optional[RunConfig] = None

    @classmethod
    def from_domain(cls, r: DistortionResult, run: Optional[RunConfig] = None) -> "DistortionResultSchema":
        return cls(
            lower=format_rational(r.lower),
            upper=format_rational(r.upper),
            status=r.status,
            dims=r.dims,
            certified_lower=format_rational(r.certified_lower) if r.certified_lower is not None else None,
            witness=MatrixEmbeddingSchema.from_domain(r.witness),
            stats=SearchStatsSchema.from_domain(r.stats),
            run=run,
        )


class CertificateSchema(BaseModel):
    D: str
    m: int
    base: int
    c_d: float
    n_min: int
    capacity: Dict[int, int]

    @classmethod
    def from_domain(cls, c: Certificate) -> "CertificateSchema":
        return cls(
            D=format_rational(c.D),
            m=c.m,
            base=c.base,
            c_d=c.c_d,
            n_min=c.n_min,
            capacity=dict(c.capacity),
        )


class ByproductParamsSchema(BaseModel):
    D: str
    m: int
    k: int
    n_exponent: int
    n: Optional[str] = None

    @classmethod
    def from_domain(cls, p: ByproductParams) -> "ByproductParamsSchema":
        # n may exceed every json number type, so it travels as a string
        return cls(
            D=format_rational(p.D),
            m=p.m,
            k=p.k,
            n_exponent=p.n_exponent,
            n=str(p.n) if p.n is not None else None,
        )


class CountingReportSchema(BaseModel):
    D: str
    threshold: str
    choices: int
    vacuous: bool
    regions_ok: bool
    gamma_size: int
    min_coords: int
    separated_ok: bool
    counting_ok: bool
    passed: bool
    failures: List[str] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, r: CountingReport) -> "CountingReportSchema":
        return cls(
            D=format_rational(r.D),
            threshold=format_rational(r.threshold),
            choices=r.choices,
            vacuous=r.vacuous,
            regions_ok=r.regions_ok,
            gamma_size=r.gamma_size,
            min_coords=r.min_coords,
            separated_ok=r.separated_ok,
            counting_ok=r.counting_ok,
            passed=r.passed,
            failures=list(r.failures),
        )


class CheckResultSchema(BaseModel):
    name: str
    passed: bool
    duration_ms: float
    detail: str = ""


class SelftestReportSchema(BaseModel):
    passed: bool
    failed: List[str]
    checks: List[CheckResultSchema]
    run: Optional[RunConfig] = None

    @classmethod
    def from_domain(cls, r: SelftestReport, run: Optional[RunConfig] = None) -> "SelftestReportSchema":
        return cls(
            passed=r.passed,
            failed=r.failed(),
            checks=[CheckResultSchema(**vars(c)) for c in r.checks],
            run=run,
        )
