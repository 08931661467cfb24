from distort_lab.utils.exceptions import (
    WorkbenchError,
    UsageError,
    DomainError,
    NotInTreeError,
    StageMismatchError,
    AmalgamAssumptionError,
    SizeCapExceededError,
    VerificationError,
    EmbeddingVerificationError,
    NormalizationError,
    DistortionExceededError,
)

__all__ = [
    "WorkbenchError",
    "UsageError",
    "DomainError",
    "NotInTreeError",
    "StageMismatchError",
    "AmalgamAssumptionError",
    "SizeCapExceededError",
    "VerificationError",
    "EmbeddingVerificationError",
    "NormalizationError",
    "DistortionExceededError",
]
