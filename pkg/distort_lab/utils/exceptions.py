from typing import Any, Dict, Optional, Tuple


class WorkbenchError(Exception):
    """base error for every failure the cli maps to an exit code"""

    exit_code: int = 2
    error: str = "workbench_error"

    def __init__(self, detail: str = "workbench error"):
        super().__init__(detail)
        self.detail = detail

    def to_payload(self) -> Dict[str, Any]:
        """error body written to stderr"""
        return {"error": self.error, "message": self.detail}


class UsageError(WorkbenchError):
    """raised when cli input or a payload cannot be parsed"""
    error = "usage_error"

    def __init__(self, detail: str = "invalid usage"):
        super().__init__(detail)


class DomainError(WorkbenchError):
    """raised when an operation is called outside its precondition"""
    error = "domain_error"

    def __init__(self, detail: str = "argument outside the operation domain"):
        super().__init__(detail)


class NotInTreeError(DomainError):
    """raised when a path is not a node of the tree"""
    error = "not_in_tree"

    def __init__(self, detail: str = "path is not in the tree"):
        super().__init__(detail)


class StageMismatchError(DomainError):
    """raised when a node is not maximal at the requested derivation stage"""
    error = "stage_mismatch"

    def __init__(self, detail: str = "node is not maximal at the requested stage"):
        super().__init__(detail)


class AmalgamAssumptionError(DomainError):
    """raised when components violate the shared-set assumptions of a sup-amalgam"""
    error = "amalgam_assumption"

    def __init__(self, detail: str = "standing amalgam assumption violated"):
        super().__init__(detail)


class SizeCapExceededError(DomainError):
    """raised before building a space larger than the configured cap"""
    error = "size_cap_exceeded"

    def __init__(self, detail: str = "size cap exceeded", report: Optional[Dict[str, Any]] = None):
        super().__init__(detail)
        self.report = report or {}

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload["sizing"] = self.report
        return payload


class VerificationError(WorkbenchError):
    """raised when an exact check of a constructed object fails"""
    exit_code = 1
    error = "verification_failed"

    def __init__(self, detail: str = "verification failed"):
        super().__init__(detail)


class EmbeddingVerificationError(VerificationError):
    """raised when an embedding is not an isometry; carries the least witnessing pair"""
    error = "not_isometric"

    def __init__(self, detail: str = "embedding is not isometric", pair: Optional[Tuple[str, str]] = None):
        super().__init__(detail)
        self.pair = pair

    def to_payload(self) -> Dict[str, Any]:
        payload = super().to_payload()
        payload["pair"] = list(self.pair) if self.pair else None
        return payload


class NormalizationError(VerificationError):
    """raised when f(bot) != 0 or the lower lipschitz constant is not 1"""
    error = "not_normalized"

    def __init__(self, detail: str = "embedding is not normalized"):
        super().__init__(detail)


class DistortionExceededError(VerificationError):
    """raised when the measured distortion is above the claimed bound"""
    error = "distortion_exceeded"

    def __init__(self, detail: str = "measured distortion exceeds the claimed bound"):
        super().__init__(detail)
