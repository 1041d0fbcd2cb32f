from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclap.core.errors import InputError, ShapeMismatchError
from fraclap.models.arrays import FloatArray
from fraclap.special_fn import unit_vectors


AngularKind = Literal["trapezoid-periodic", "gauss-legendre-mu"]


class QuadratureRule(BaseModel):
    """K-point rule on [0, 1] for the weight (1 - r^2)^exponent.

    ``seed`` and ``fine_n`` record the discretization the rule was compressed from.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: FloatArray
    weights: FloatArray
    exponent: float
    seed: str
    fine_n: int

    @model_validator(mode="after")
    def _check(self) -> "QuadratureRule":
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape or self.nodes.size < 1:
            raise ShapeMismatchError(
                "rule nodes and weights must be vectors of equal length",
                nodes=list(self.nodes.shape),
                weights=list(self.weights.shape),
            )
        if np.any(self.nodes <= 0.0) or np.any(self.nodes >= 1.0) or np.any(np.diff(self.nodes) <= 0.0):
            raise InputError("rule nodes must be strictly increasing inside (0, 1)")
        if np.any(self.weights <= 0.0):
            raise InputError("rule weights must be positive")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)
        return self

    @property
    def size(self) -> int:
        return int(self.nodes.size)

    @property
    def alpha(self) -> float:
        """Fractional index whose boundary weight this rule integrates."""
        return 2.0 * self.exponent


class AngularRule(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: AngularKind
    nodes: FloatArray
    weights: FloatArray

    @model_validator(mode="after")
    def _check(self) -> "AngularRule":
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise ShapeMismatchError("angular nodes and weights must be vectors of equal length")
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)
        return self

    @property
    def size(self) -> int:
        return int(self.nodes.size)


class SphereRule(BaseModel):
    """Product rule on the unit circle (2D) or sphere (3D).

    ``angles`` has shape (n, d - 1): theta in 2D, (colatitude, azimuth) in 3D.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int
    angles: FloatArray
    weights: FloatArray

    @property
    def size(self) -> int:
        return int(self.weights.size)

    @property
    def directions(self) -> np.ndarray:
        """Unit vectors of the nodes, shape (n, d)."""
        return unit_vectors(self.angles)
