from distort_lab.schemas.embedding import (
    MatrixEmbeddingSchema, SignPatternSchema, StepEmbeddingSchema, StepFunctionSchema,
    dump_embedding, load_embedding
)
from distort_lab.schemas.metric_space import MetricSpaceSchema
from distort_lab.schemas.results import (
    ByproductParamsSchema, CertificateSchema, CheckResultSchema, CountingReportSchema,
    DistortionResultSchema, EmbeddingOutcomeSchema, FamilyEmbeddingSchema, MetricReportSchema,
    SearchStatsSchema, SelftestReportSchema, StageRecordSchema, ViolationSchema, WitnessReportSchema
)
from distort_lab.schemas.tree import FiniteTreeSchema, TreeSpecSchema

__all__ = [
    "MatrixEmbeddingSchema", "SignPatternSchema", "StepEmbeddingSchema", "StepFunctionSchema",
    "dump_embedding", "load_embedding",
    "MetricSpaceSchema",
    "ByproductParamsSchema", "CertificateSchema", "CheckResultSchema", "CountingReportSchema",
    "DistortionResultSchema", "EmbeddingOutcomeSchema", "FamilyEmbeddingSchema", "MetricReportSchema",
    "SearchStatsSchema", "SelftestReportSchema", "StageRecordSchema", "ViolationSchema", "WitnessReportSchema",
    "FiniteTreeSchema", "TreeSpecSchema",
]
