from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclap.core.errors import BasisIndexError, DimensionError, DomainError, HarmonicIndexError


SUPPORTED_DIMS = (2, 3)


class ProblemParams(BaseModel):
    """Fractional index and ball dimension shared by every solver path."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    dim: int

    @model_validator(mode="after")
    def _check(self) -> "ProblemParams":
        if not 0.0 < self.alpha < 2.0:
            raise DomainError(f"alpha must lie strictly inside (0, 2), got {self.alpha}", alpha=self.alpha)
        if self.dim not in SUPPORTED_DIMS:
            raise DimensionError(f"dimension {self.dim} is not supported (use 2 or 3)", dim=self.dim)
        return self

    @property
    def a(self) -> float:
        """Exponent of the boundary weight, alpha / 2."""
        return 0.5 * self.alpha

    def weight(self, r: np.ndarray | float) -> np.ndarray:
        """(1 - r^2)_+^{alpha/2}; exactly zero for r >= 1."""
        r = np.asarray(r, dtype=float)
        return np.clip(1.0 - r * r, 0.0, None) ** self.a


class JacobiParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    n: int

    @model_validator(mode="after")
    def _check(self) -> "JacobiParams":
        if self.a <= -1.0 or self.b <= -1.0:
            raise DomainError(f"Jacobi exponents must exceed -1, got a={self.a}, b={self.b}")
        if self.n < 0:
            raise DomainError(f"Jacobi degree must be nonnegative, got {self.n}")
        return self


class HarmonicIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    l: int
    m: int = 0

    @model_validator(mode="after")
    def _check(self) -> "HarmonicIndex":
        if self.l < 0 or abs(self.m) > self.l:
            raise HarmonicIndexError(f"invalid harmonic index l={self.l}, m={self.m}", l=self.l, m=self.m)
        return self


class BasisIndex(BaseModel):
    """(l, m, n): harmonic degree, channel and radial degree of one basis function.

    In 2D the channel is 0 (cos) or 1 (sin); in 3D it is the real-harmonic order in [-l, l].
    Whether the channel exists for a given dimension is checked by ``basis.validate_index``.
    """

    model_config = ConfigDict(frozen=True)

    l: int
    m: int = 0
    n: int = 0

    @model_validator(mode="after")
    def _check(self) -> "BasisIndex":
        if self.l < 0 or self.n < 0:
            raise BasisIndexError(f"negative basis index ({self.l}, {self.m}, {self.n})")
        return self
