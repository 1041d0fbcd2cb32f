from __future__ import annotations

from numbers import Real
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from fraclap import basis
from fraclap.core.errors import InputError, KindError, ShapeMismatchError
from fraclap.models.arrays import FloatArray
from fraclap.models.params import ProblemParams
from fraclap.special_fn import unit_vectors


FieldKind = Literal["U", "F"]


class CoefficientField(BaseModel):
    """Truncated expansion over the eigenbasis, stored densely as (rows, n_max + 1).

    Rows run over (l, channel) with l ascending (see ``basis.row_layout``). A "U" field holds
    the coefficients of p_{l,m,n} (solution side); an "F" field holds the coefficients of
    P_{l,m,n} (right-hand side, eigenvalues already applied).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ProblemParams
    n_max: int
    l_max: int
    coeffs: FloatArray
    kind: FieldKind = "U"

    @model_validator(mode="after")
    def _check(self) -> "CoefficientField":
        if self.n_max < 0 or self.l_max < 0:
            raise InputError(f"truncation orders must be nonnegative, got N={self.n_max}, L={self.l_max}")
        expected = (len(basis.row_layout(self.params.dim, self.l_max)), self.n_max + 1)
        if self.coeffs.shape != expected:
            raise ShapeMismatchError(
                "coefficient array does not match the truncation",
                expected=list(expected),
                got=list(self.coeffs.shape),
            )
        if not np.all(np.isfinite(self.coeffs)):
            raise InputError("coefficients must be finite")
        return self

    @classmethod
    def zeros(cls, params: ProblemParams, n_max: int, l_max: int, kind: FieldKind = "U") -> "CoefficientField":
        rows = len(basis.row_layout(params.dim, l_max))
        return cls(params=params, n_max=n_max, l_max=l_max, coeffs=np.zeros((rows, n_max + 1)), kind=kind)

    @classmethod
    def unit(
        cls,
        params: ProblemParams,
        n_max: int,
        l_max: int,
        l: int,
        m: int,
        n: int,
        kind: FieldKind = "U",
    ) -> "CoefficientField":
        rows = len(basis.row_layout(params.dim, l_max))
        coeffs = np.zeros((rows, n_max + 1))
        coeffs[basis.row_of(params.dim, l, m), n] = 1.0
        return cls(params=params, n_max=n_max, l_max=l_max, coeffs=coeffs, kind=kind)

    @property
    def rows(self) -> list[tuple[int, int]]:
        return basis.row_layout(self.params.dim, self.l_max)

    def value(self, l: int, m: int, n: int) -> float:
        return float(self.coeffs[basis.row_of(self.params.dim, l, m), n])

    def block(self, l: int) -> np.ndarray:
        """Rows of degree l, shape (multiplicity, n_max + 1)."""

        start = basis.row_offset(self.params.dim, l)
        return self.coeffs[start : start + basis.multiplicity(self.params.dim, l)]

    def replace(self, coeffs: np.ndarray, kind: FieldKind | None = None) -> "CoefficientField":
        return CoefficientField(
            params=self.params,
            n_max=self.n_max,
            l_max=self.l_max,
            coeffs=coeffs,
            kind=self.kind if kind is None else kind,
        )

    def __add__(self, other: "CoefficientField") -> "CoefficientField":
        if not isinstance(other, CoefficientField):
            return NotImplemented
        if other.kind != self.kind:
            raise KindError(f"cannot add a {other.kind}-side field to a {self.kind}-side field")
        if (other.params, other.n_max, other.l_max) != (self.params, self.n_max, self.l_max):
            raise ShapeMismatchError("fields have different parameters or truncation")
        return self.replace(self.coeffs + other.coeffs)

    def __mul__(self, scalar: Real) -> "CoefficientField":
        if not isinstance(scalar, Real):
            return NotImplemented
        return self.replace(float(scalar) * self.coeffs)

    __rmul__ = __mul__


class EvalGrid(BaseModel):
    """Tensor grid of radii times unit directions; evaluations have shape (n_r, n_ang).

    ``angles`` has shape (n_ang, d - 1): theta in 2D, (colatitude, azimuth) in 3D.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int
    radii: FloatArray
    angles: FloatArray

    @model_validator(mode="after")
    def _check(self) -> "EvalGrid":
        if self.radii.ndim != 1 or self.angles.ndim != 2 or self.angles.shape[1] != self.dim - 1:
            raise ShapeMismatchError(
                "grid needs a radius vector and an (n, d - 1) angle array",
                radii=list(self.radii.shape),
                angles=list(self.angles.shape),
            )
        if np.any(self.radii < 0.0) or np.any(self.radii > 1.0):
            raise InputError("grid radii must lie in [0, 1]")
        return self

    @classmethod
    def polar(cls, n_r: int, n_theta: int, r_min: float = 0.0) -> "EvalGrid":
        theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
        return cls(dim=2, radii=np.linspace(r_min, 1.0, n_r), angles=theta[:, None])

    @classmethod
    def spherical(cls, n_r: int, n_theta: int, n_phi: int, r_min: float = 0.0) -> "EvalGrid":
        # colatitudes include both poles
        theta = np.linspace(0.0, np.pi, n_theta)
        phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        return cls(
            dim=3,
            radii=np.linspace(r_min, 1.0, n_r),
            angles=np.stack([tt.ravel(), pp.ravel()], axis=-1),
        )

    @classmethod
    def radial(cls, dim: int, n_r: int) -> "EvalGrid":
        """Radii along a single direction, for rotationally symmetric data."""

        return cls(dim=dim, radii=np.linspace(0.0, 1.0, n_r), angles=np.zeros((1, dim - 1)))

    @classmethod
    def default(cls, dim: int, n_r: int, n_theta: int, n_phi: int, r_min: float = 0.0) -> "EvalGrid":
        if dim == 2:
            return cls.polar(n_r, n_theta, r_min=r_min)
        return cls.spherical(n_r, n_theta, n_phi, r_min=r_min)

    @property
    def shape(self) -> tuple[int, int]:
        return int(self.radii.size), int(self.angles.shape[0])

    @property
    def directions(self) -> np.ndarray:
        """Unit vectors, shape (n_ang, d)."""
        return unit_vectors(self.angles)

    @property
    def points(self) -> np.ndarray:
        """Cartesian points, shape (n_r, n_ang, d)."""

        return self.radii[:, None, None] * self.directions[None, :, :]
