"""Eigenbasis of the fractional Laplacian on the unit ball.

    P_{l,m,n}(x) = V_{l,m}(x) P_n^{(alpha/2, d/2 + l - 1)}(2|x|^2 - 1)
    p_{l,m,n}(x) = (1 - |x|^2)_+^{alpha/2} P_{l,m,n}(x)
    (-Delta)^{alpha/2} p_{l,m,n} = d_{n,l} P_{l,m,n}

In 2D the harmonic channel is 0 (r^l cos(l theta)) or 1 (r^l sin(l theta)) and l = 0 has only
channel 0. In 3D the channel is the order m in [-l, l] of the real spherical harmonic.
"""

from __future__ import annotations

import math
from typing import Any

import numpy as np

from fraclap.core.errors import BasisIndexError, DimensionError, HarmonicIndexError
from fraclap.models.params import SUPPORTED_DIMS, BasisIndex, HarmonicIndex, ProblemParams
from fraclap.quadrature import weighted_rule
from fraclap.special_fn import jacobi_table, log_gamma, real_harmonics_table, solid_harm


def _check_dim(dim: int) -> None:
    if dim not in SUPPORTED_DIMS:
        raise DimensionError(f"dimension {dim} is not supported (use 2 or 3)", dim=dim)


def multiplicity(dim: int, l: int) -> int:
    """Number of independent harmonics of degree l; l = 0 always has exactly one."""

    _check_dim(dim)
    if l < 0:
        raise HarmonicIndexError(f"harmonic degree must be nonnegative, got {l}", l=l)
    if l == 0:
        return 1
    return 2 if dim == 2 else 2 * l + 1


def harmonic_channels(dim: int, l: int) -> list[int]:
    if multiplicity(dim, l) == 1:
        return [0]
    return [0, 1] if dim == 2 else list(range(-l, l + 1))


def row_layout(dim: int, l_max: int) -> list[tuple[int, int]]:
    """(l, channel) of every coefficient row, l ascending."""

    return [(l, m) for l in range(l_max + 1) for m in harmonic_channels(dim, l)]


def row_offset(dim: int, l: int) -> int:
    """Index of the first row of degree l."""

    if dim == 2:
        return 0 if l == 0 else 2 * l - 1
    return l * l


def row_of(dim: int, l: int, m: int) -> int:
    channels = harmonic_channels(dim, l)
    if m not in channels:
        raise BasisIndexError(f"channel {m} does not exist for l={l} in {dim}D", l=l, m=m, dim=dim)
    return row_offset(dim, l) + channels.index(m)


def validate_index(params: ProblemParams, idx: BasisIndex) -> BasisIndex:
    row_of(params.dim, idx.l, idx.m)
    return idx


def log_eigenvalue(params: ProblemParams, n: Any, l: Any) -> Any:
    n = np.asarray(n, dtype=float)
    l = np.asarray(l, dtype=float)
    if np.any(n < 0) or np.any(l < 0):
        raise BasisIndexError("eigenvalue indices must be nonnegative")
    a = params.a
    delta = params.dim + 2.0 * l
    value = (
        params.alpha * math.log(2.0)
        + log_gamma(1.0 + a + n)
        + log_gamma(0.5 * (delta + params.alpha) + n)
        - log_gamma(n + 1.0)
        - log_gamma(0.5 * delta + n)
    )
    return value


def eigenvalue(params: ProblemParams, n: Any, l: Any) -> Any:
    """d_{n,l} = 2^alpha Gamma(1 + alpha/2 + n) Gamma((delta + alpha)/2 + n) / (n! Gamma(delta/2 + n)), delta = d + 2l."""

    value = np.exp(np.asarray(log_eigenvalue(params, n, l)))
    return value.item() if value.ndim == 0 else value


def eigenvalue_table(params: ProblemParams, n_max: int, l_max: int) -> np.ndarray:
    """Eigenvalues for every coefficient row and radial degree, shape (rows, n_max + 1)."""

    ls = np.array([l for l, _ in row_layout(params.dim, l_max)], dtype=float)
    ns = np.arange(n_max + 1, dtype=float)
    return eigenvalue(params, ns[None, :], ls[:, None])


def smallest_eigenvalue(params: ProblemParams) -> float:
    """d_{0,0}; every d_{n,l} is at least this large (d grows in both n and l)."""

    return float(eigenvalue(params, 0, 0))


def jacobi_b(params: ProblemParams, l: int) -> float:
    return 0.5 * params.dim + l - 1.0


def radial_table(params: ProblemParams, l: int, n_max: int, r: Any) -> np.ndarray:
    """P_n^{(alpha/2, d/2 + l - 1)}(2 r^2 - 1) for n = 0..n_max, stacked along the first axis."""

    r = np.asarray(r, dtype=float)
    return jacobi_table(params.a, jacobi_b(params, l), n_max, 2.0 * r * r - 1.0)


def angular_table(dim: int, l: int, angles: np.ndarray) -> np.ndarray:
    """Angular factor of V_{l,m} on unit directions, one row per channel.

    ``angles`` has shape (n, d - 1): theta in 2D, (colatitude, azimuth) in 3D.
    """

    angles = np.asarray(angles, dtype=float)
    if dim == 2:
        theta = angles[..., 0]
        if l == 0:
            return np.ones((1,) + theta.shape)
        return np.stack([np.cos(l * theta), np.sin(l * theta)])
    _check_dim(dim)
    return real_harmonics_table(l, angles[..., 0], angles[..., 1])


def _harmonic_index(dim: int, l: int, m: int) -> HarmonicIndex:
    if dim == 2:
        return HarmonicIndex(l=l, m=l if m == 0 else -l)
    return HarmonicIndex(l=l, m=m)


def basis_eval_P(params: ProblemParams, idx: BasisIndex, point: Any) -> Any:
    """Unnormalized polynomial basis function at Cartesian points (trailing axis of length d)."""

    validate_index(params, idx)
    point = np.asarray(point, dtype=float)
    if point.shape[-1] != params.dim:
        raise DimensionError(f"points must have {params.dim} coordinates", dim=int(point.shape[-1]))
    r = np.linalg.norm(point, axis=-1)
    harmonic = np.asarray(solid_harm(_harmonic_index(params.dim, idx.l, idx.m), point))
    value = harmonic * radial_table(params, idx.l, idx.n, r)[idx.n]
    return value.item() if value.ndim == 0 else value


def basis_eval_p(params: ProblemParams, idx: BasisIndex, point: Any) -> Any:
    """Weighted basis function; exactly zero on and outside the unit sphere."""

    point = np.asarray(point, dtype=float)
    r = np.linalg.norm(point, axis=-1)
    inside = r < 1.0
    poly = np.asarray(basis_eval_P(params, idx, np.where(inside[..., None], point, 0.0)))
    value = np.where(inside, params.weight(r) * poly, 0.0)
    return value.item() if value.ndim == 0 else value


def angular_norm(dim: int, l: int) -> float:
    """Integral of the squared angular factor of one channel over the unit sphere."""

    if dim == 2:
        return 2.0 * math.pi if l == 0 else math.pi
    _check_dim(dim)
    return 1.0


def radial_norm_squared(params: ProblemParams, l: int, n: int) -> float:
    """Integral over [0, 1] of P_n(2r^2 - 1)^2 r^{2l + d - 1} (1 - r^2)^{alpha/2}."""

    rule = weighted_rule(params.a, 2 * (n + l) + 4)
    r = np.asarray(rule.nodes)
    jac = radial_table(params, l, n, r)[n]
    return float(np.sum(rule.weights * jac * jac * r ** (2 * l + params.dim - 1)))


def norm_squared(params: ProblemParams, l: int, n: int) -> float:
    """Weighted L2 norm squared of P_{l,m,n} over the ball (the same for every channel of degree l)."""

    if l < 0 or n < 0:
        raise BasisIndexError(f"negative basis index l={l}, n={n}")
    return radial_norm_squared(params, l, n) * angular_norm(params.dim, l)


def _log_pochhammer(x: float, k: int) -> float:
    return log_gamma(x + k) - log_gamma(x)


def h_squared(params: ProblemParams, l: int, n: int) -> float:
    """Squared normalization of the orthonormal-basis form of P_{l,m,n}."""

    a = params.a
    half_d = 0.5 * params.dim
    log_h = (
        _log_pochhammer(a + 1.0, n)
        + _log_pochhammer(half_d, l + n)
        + math.log(l + n + a + half_d)
        - log_gamma(n + 1.0)
        - _log_pochhammer(a + half_d + 1.0, l + n)
        - math.log(l + 2 * n + a + half_d)
    )
    return math.exp(log_h)


def norm_squared_analytic(params: ProblemParams, l: int, n: int) -> float:
    """norm_squared from the closed-form normalization, for cross-checking the quadrature path."""

    a = params.a
    half_d = 0.5 * params.dim
    # sphere area over the total mass of the weight on the ball
    log_ratio = math.log(2.0) + log_gamma(a + half_d + 1.0) - log_gamma(a + 1.0) - log_gamma(half_d)
    return h_squared(params, l, n) * angular_norm(params.dim, l) / math.exp(log_ratio)


def operator_constant(params: ProblemParams) -> float:
    """c_{alpha,d} = 2^alpha Gamma((d + alpha)/2) / (pi^{d/2} |Gamma(-alpha/2)|)."""

    a = params.a
    log_abs_gamma = log_gamma(1.0 - a) - math.log(a)
    log_c = (
        params.alpha * math.log(2.0)
        + log_gamma(0.5 * (params.dim + params.alpha))
        - 0.5 * params.dim * math.log(math.pi)
        - log_abs_gamma
    )
    return math.exp(log_c)
