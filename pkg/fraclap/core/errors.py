from __future__ import annotations

from typing import Any, Dict


class FracLapError(Exception):
    """Base error carrying a stable machine-readable ``code`` and a human ``detail``.

    Not a ``ValueError``: pydantic validators re-raise it unchanged instead of wrapping it in
    a ``ValidationError``.
    """

    code = "fraclap_error"
    exit_status = 1

    def __init__(self, detail: str, **context: Any) -> None:
        super().__init__(detail)
        self.detail = detail
        self.context = context

    def to_payload(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.code, "detail": self.detail}
        payload.update(self.context)
        return payload


class DomainError(FracLapError):
    code = "domain_error"


class HarmonicIndexError(FracLapError):
    code = "index_error"


class BasisIndexError(FracLapError):
    code = "index_error"


class DimensionError(FracLapError):
    code = "dimension_error"


class ConvergenceError(FracLapError):
    code = "numeric_error"


class SingularMatrixError(FracLapError):
    code = "singular_matrix"


class RuleSizeError(FracLapError):
    code = "rule_size"


class InputError(FracLapError):
    code = "input_error"


class KindError(FracLapError):
    code = "kind_error"


class ShapeMismatchError(FracLapError):
    code = "shape_mismatch"


class ConfigurationError(FracLapError):
    code = "configuration_error"
    exit_status = 2


class UnknownPairError(FracLapError):
    code = "unknown_pair"
    exit_status = 2


class CheckFailedError(FracLapError):
    code = "check_failed"
