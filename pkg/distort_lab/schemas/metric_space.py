from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from distort_lab.models.metric_space import MetricSpace
from distort_lab.utils.exceptions import UsageError
from distort_lab.utils.rationals import format_rational, parse_rational


class MetricSpaceSchema(BaseModel):
    """finite metric space; distances are row-major rational strings"""
    labels: List[str] = Field(..., min_length=1)
    dist: List[List[str]]
    basepoint: int = 0
    shared_a: List[int] = Field(default_factory=list, alias="sharedA")

    model_config = ConfigDict(populate_by_name=True)

    @model_validator(mode="after")
    def square_matrix(self) -> "MetricSpaceSchema":
        n = len(self.labels)
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError(f"dist must be a {n}x{n} matrix")
        return self

    @classmethod
    def from_domain(cls, m: MetricSpace) -> "MetricSpaceSchema":
        return cls(
            labels=list(m.labels),
            dist=[[format_rational(v) for v in row] for row in m.dist],
            basepoint=m.basepoint,
            sharedA=sorted(m.shared),
        )

    def to_domain(self) -> MetricSpace:
        n = len(self.labels)
        if not 0 <= self.basepoint < n or any(not 0 <= i < n for i in self.shared_a):
            raise UsageError("basepoint and sharedA must be point indices")
        return MetricSpace(
            tuple(self.labels),
            tuple(tuple(parse_rational(v) for v in row) for row in self.dist),
            self.basepoint,
            frozenset(self.shared_a),
        )
