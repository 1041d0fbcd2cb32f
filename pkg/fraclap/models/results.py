from __future__ import annotations

from pydantic import BaseModel


class QuadratureRow(BaseModel):
    i: int
    node: float
    weight: float


class MomentRow(BaseModel):
    degree: int
    computed: float
    exact: float
    residual: float


class STableRow(BaseModel):
    alpha: float
    dim: int
    s: int
    n: int
    error: float


class PoissonRow(BaseModel):
    alpha: float
    eq: str
    L: int
    n: int
    error: float


class OscillatoryRow(BaseModel):
    n: int
    error: float


class DiffusionErrorRow(BaseModel):
    alpha: float
    dt: float
    error: float


class DiffusionProfileRow(BaseModel):
    alpha: float
    r: float
    u: float


class CoeffRow(BaseModel):
    n: int
    abs_c00: float


class PolarValueRow(BaseModel):
    r: float
    theta: float
    value: float


class SphericalValueRow(BaseModel):
    r: float
    theta: float
    phi: float
    value: float
