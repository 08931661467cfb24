from distort_lab.models.ordinal import Ordinal, Comparison, ZERO, ONE, OMEGA
from distort_lab.models.interval_set import IntervalSet
from distort_lab.models.tree import TreeSpec, FiniteTree
from distort_lab.models.metric_space import BASEPOINT, GraphSpec, MetricSpace
from distort_lab.models.step_function import StepFunction
from distort_lab.models.embedding import MatrixEmbedding, SignPattern, StepEmbedding

__all__ = [
    "Ordinal", "Comparison", "ZERO", "ONE", "OMEGA",
    "IntervalSet",
    "TreeSpec", "FiniteTree",
    "BASEPOINT", "GraphSpec", "MetricSpace",
    "StepFunction",
    "MatrixEmbedding", "SignPattern", "StepEmbedding",
]
