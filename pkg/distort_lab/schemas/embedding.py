from typing import Any, Dict, List, Literal, Union

from pydantic import BaseModel, Field, ValidationError

from distort_lab.models.embedding import MatrixEmbedding, SignPattern, StepEmbedding
from distort_lab.models.ordinal import format_ordinal, parse_ordinal
from distort_lab.models.step_function import StepFunction
from distort_lab.schemas.metric_space import MetricSpaceSchema
from distort_lab.utils.exceptions import UsageError
from distort_lab.utils.rationals import format_rational, parse_rational


class StepFunctionSchema(BaseModel):
    bound: str
    cuts: List[str] = Field(..., min_length=1)
    values: List[str] = Field(..., min_length=1)

    @classmethod
    def from_domain(cls, f: StepFunction) -> "StepFunctionSchema":
        return cls(
            bound=format_ordinal(f.bound),
            cuts=[format_ordinal(c) for c in f.cuts],
            values=[format_rational(v) for v in f.values],
        )

    def to_domain(self) -> StepFunction:
        return StepFunction(
            parse_ordinal(self.bound),
            tuple(parse_ordinal(c) for c in self.cuts),
            tuple(parse_rational(v) for v in self.values),
        )


class SignPatternSchema(BaseModel):
    labels: List[str]
    signs: List[int]


class StepEmbeddingSchema(BaseModel):
    """embedding into step functions on [0, bound]: the domain plus one image per point"""
    kind: Literal["step"] = "step"
    domain: MetricSpaceSchema
    bound: str
    maps: Dict[str, StepFunctionSchema]
    sign_patterns: List[SignPatternSchema] = Field(default_factory=list)
    normalized: bool = False

    @classmethod
    def from_domain(cls, e: StepEmbedding) -> "StepEmbeddingSchema":
        return cls(
            domain=MetricSpaceSchema.from_domain(e.domain),
            bound=format_ordinal(e.bound),
            maps={label: StepFunctionSchema.from_domain(e.image(label)) for label in e.domain.labels},
            sign_patterns=[SignPatternSchema(labels=list(p.labels), signs=list(p.signs)) for p in e.sign_patterns],
            normalized=e.normalized,
        )

    def to_domain(self) -> StepEmbedding:
        domain = self.domain.to_domain()
        missing = [label for label in domain.labels if label not in self.maps]
        if missing:
            raise UsageError(f"no image for points {missing}")
        return StepEmbedding(
            domain,
            parse_ordinal(self.bound),
            tuple(self.maps[label].to_domain() for label in domain.labels),
            tuple(SignPattern(tuple(p.labels), tuple(p.signs)) for p in self.sign_patterns),
            self.normalized,
        )


class MatrixEmbeddingSchema(BaseModel):
    """embedding into l_inf^n: one row of rational strings per point"""
    kind: Literal["matrix"] = "matrix"
    domain: MetricSpaceSchema
    coordinates: List[str]
    entries: List[List[str]]
    repaired_pairs: List[List[str]] = Field(default_factory=list)

    @classmethod
    def from_domain(cls, e: MatrixEmbedding) -> "MatrixEmbeddingSchema":
        return cls(
            domain=MetricSpaceSchema.from_domain(e.domain),
            coordinates=list(e.coordinates),
            entries=[[format_rational(v) for v in row] for row in e.entries],
            repaired_pairs=[list(p) for p in e.repaired_pairs],
        )

    def to_domain(self) -> MatrixEmbedding:
        return MatrixEmbedding(
            self.domain.to_domain(),
            tuple(self.coordinates),
            tuple(tuple(parse_rational(v) for v in row) for row in self.entries),
            tuple(tuple(p) for p in self.repaired_pairs),
        )


def load_embedding(payload: Any) -> Union[MatrixEmbedding, StepEmbedding]:
    """parse either embedding payload, dispatching on its kind"""
    if not isinstance(payload, dict):
        raise UsageError("an embedding payload must be a json object")
    kind = payload.get("kind", "step")
    schema = {"step": StepEmbeddingSchema, "matrix": MatrixEmbeddingSchema}.get(kind)
    if schema is None:
        raise UsageError(f"unknown embedding kind {kind!r}")
    try:
        return schema.model_validate(payload).to_domain()
    except ValidationError as exc:
        raise UsageError(f"invalid {kind} embedding: {exc.errors()[0]['msg']}") from exc


def dump_embedding(e: Union[MatrixEmbedding, StepEmbedding]) -> Dict[str, Any]:
    schema = MatrixEmbeddingSchema if isinstance(e, MatrixEmbedding) else StepEmbeddingSchema
    return schema.from_domain(e).model_dump(by_alias=True)
