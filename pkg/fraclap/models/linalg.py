from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclap.core.errors import InputError, ShapeMismatchError
from fraclap.models.arrays import FloatArray


class SymTridiag(BaseModel):
    """Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    diag: FloatArray
    offdiag: FloatArray

    @model_validator(mode="after")
    def _check(self) -> "SymTridiag":
        if self.diag.ndim != 1 or self.diag.size < 1:
            raise ShapeMismatchError("diagonal must be a non-empty vector", shape=list(self.diag.shape))
        if self.offdiag.shape != (self.diag.size - 1,):
            raise ShapeMismatchError(
                "off-diagonal must have length K - 1",
                k=int(self.diag.size),
                offdiag=list(self.offdiag.shape),
            )
        if not (np.all(np.isfinite(self.diag)) and np.all(np.isfinite(self.offdiag))):
            raise InputError("tridiagonal entries must be finite")
        return self

    @property
    def size(self) -> int:
        return int(self.diag.size)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


class EigenDecomp(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: FloatArray
    vectors: FloatArray


class DenseMatrix(BaseModel):
    """Square, finite, row-major matrix."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: FloatArray

    @model_validator(mode="after")
    def _check(self) -> "DenseMatrix":
        shape = self.entries.shape
        if len(shape) != 2 or shape[0] != shape[1] or shape[0] < 1:
            raise ShapeMismatchError("matrix must be square and non-empty", shape=list(shape))
        if not np.all(np.isfinite(self.entries)):
            raise InputError("matrix entries must be finite")
        return self

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])


class LUFactors(BaseModel):
    """Packed LU factors with partial-pivoting indices, as returned by LAPACK getrf."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lu: FloatArray
    piv: np.ndarray
