from typing import List

from pydantic import BaseModel, Field, field_validator

from distort_lab.models.ordinal import format_ordinal, parse_ordinal
from distort_lab.models.tree import FiniteTree, TreeSpec


class TreeSpecSchema(BaseModel):
    """tree T_{alpha+1} given by its cnf parameter"""
    alpha: str = Field(..., min_length=1)

    @field_validator("alpha")
    @classmethod
    def alpha_is_cnf(cls, v: str) -> str:
        parse_ordinal(v)
        return v

    @classmethod
    def from_domain(cls, spec: TreeSpec) -> "TreeSpecSchema":
        return cls(alpha=format_ordinal(spec.alpha))

    def to_domain(self) -> TreeSpec:
        return TreeSpec(parse_ordinal(self.alpha))


class FiniteTreeSchema(BaseModel):
    """finite tree as its list of paths"""
    nodes: List[List[int]]

    @classmethod
    def from_domain(cls, t: FiniteTree) -> "FiniteTreeSchema":
        return cls(nodes=[list(p) for p in t.sorted_nodes()])

    def to_domain(self) -> FiniteTree:
        return FiniteTree.of(self.nodes)
