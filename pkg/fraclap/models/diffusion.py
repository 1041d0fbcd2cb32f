from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclap.core.errors import InputError
from fraclap.models.arrays import FloatArray
from fraclap.models.linalg import LUFactors
from fraclap.models.params import ProblemParams


class DiffusionSystem(BaseModel):
    """Implicit-Euler system (I + dt B^{-1} A D) c^{k+1} = c^k for the radial 3D problem.

    A is the Gram matrix of P_m^{(alpha/2, 1/2)}(2r^2 - 1) under r^2 dr, B holds the weighted
    norms of the same polynomials and D the eigenvalues d_{m,0}.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ProblemParams
    n_modes: int
    dt: float
    A: FloatArray
    B: FloatArray
    D: FloatArray
    operator: FloatArray
    factors: LUFactors

    @property
    def rates(self) -> np.ndarray:
        """B^{-1} A D."""
        return self.A * self.D[None, :] / self.B[:, None]


class DiffusionState(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    c: FloatArray
    t: float = 0.0

    @model_validator(mode="after")
    def _check(self) -> "DiffusionState":
        if self.c.ndim != 1 or not np.all(np.isfinite(self.c)) or not np.isfinite(self.t):
            raise InputError("diffusion state must be a finite coefficient vector")
        return self


class Trajectory(BaseModel):
    """Per-step diagnostics of an evolution, including the initial state."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: FloatArray
    norms: FloatArray
    energies: FloatArray


class ConvergenceStudy(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: float
    dts: FloatArray
    errors: FloatArray
    slope: float
    radii: FloatArray
    profile: FloatArray
