"""Analysis (function to coefficients) and synthesis (coefficients to point values).

Coefficients are projections onto P_{l,m,n} in the weighted inner product

    c_{l,m,n} = (integral of g P_{l,m,n} w dx) / (integral of P_{l,m,n}^2 w dx)

with g = f for a right-hand side and g = u / w for a solution. Radial integrals use the
Lanczos rule for the boundary weight, angular integrals the product rules of
``quadrature.sphere_rule``. Eigenvalues are applied only in ``to_u_side`` / ``to_f_side``.
"""

from __future__ import annotations

import logging
from typing import Callable, Literal

import numpy as np

from fraclap import basis
from fraclap.core.errors import InputError, KindError, ShapeMismatchError
from fraclap.models.fields import CoefficientField, EvalGrid
from fraclap.models.params import HarmonicIndex, ProblemParams
from fraclap.models.rules import QuadratureRule, SphereRule
from fraclap.quadrature import gauss_legendre_unit, sphere_rule, weighted_rule
from fraclap.special_fn import sph_harm_complex


logger = logging.getLogger(__name__)

BallFunction = Callable[[np.ndarray], np.ndarray]
RadialFunction = Callable[[np.ndarray], np.ndarray]
RadialMode = Literal["weighted", "plain"]


def radial_rule_size(n_max: int, l_max: int) -> int:
    return 2 * (n_max + l_max) + 4


def _sample(g: BallFunction, radii: np.ndarray, directions: np.ndarray) -> np.ndarray:
    points = radii[:, None, None] * directions[None, :, :]
    values = np.broadcast_to(np.asarray(g(points), dtype=float), points.shape[:-1])
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        i, j = bad[0]
        raise InputError(
            "function returned a non-finite value",
            r=float(radii[i]),
            point=[float(v) for v in points[i, j]],
        )
    return values


def _project(
    params: ProblemParams,
    samples: np.ndarray,
    rule: QuadratureRule,
    sphere: SphereRule,
    n_max: int,
    l_max: int,
) -> np.ndarray:
    """Weighted projections of sampled data (shape (K, n_ang)) onto every P_{l,m,n}."""

    r = np.asarray(rule.nodes)
    dim = params.dim
    coeffs = np.empty((len(basis.row_layout(dim, l_max)), n_max + 1))
    for l in range(l_max + 1):
        harmonics = basis.angular_table(dim, l, sphere.angles)
        # angular moments: (channels, K)
        moments = (harmonics * sphere.weights[None, :]) @ samples.T
        radial = basis.radial_table(params, l, n_max, r) * (rule.weights * r ** (l + dim - 1))[None, :]
        numer = moments @ radial.T
        denom = np.array([basis.norm_squared(params, l, n) for n in range(n_max + 1)])
        start = basis.row_offset(dim, l)
        coeffs[start : start + harmonics.shape[0]] = numer / denom[None, :]
    return coeffs


def project_f(params: ProblemParams, f: BallFunction, n_max: int, l_max: int) -> CoefficientField:
    """F-side coefficients of f (eigenvalues not divided out)."""

    rule = weighted_rule(params.a, radial_rule_size(n_max, l_max))
    sphere = sphere_rule(params.dim, l_max)
    logger.debug("projecting f: d=%d N=%d L=%d K=%d angles=%d", params.dim, n_max, l_max, rule.size, sphere.size)
    samples = _sample(f, np.asarray(rule.nodes), sphere.directions)
    coeffs = _project(params, samples, rule, sphere, n_max, l_max)
    return CoefficientField(params=params, n_max=n_max, l_max=l_max, coeffs=coeffs, kind="F")


def to_u_side(c: CoefficientField) -> CoefficientField:
    if c.kind != "F":
        raise KindError("expected an F-side field")
    return c.replace(c.coeffs / basis.eigenvalue_table(c.params, c.n_max, c.l_max), kind="U")


def to_f_side(c: CoefficientField) -> CoefficientField:
    if c.kind != "U":
        raise KindError("expected a U-side field")
    return c.replace(c.coeffs * basis.eigenvalue_table(c.params, c.n_max, c.l_max), kind="F")


def analyze_f(params: ProblemParams, f: BallFunction, n_max: int, l_max: int) -> CoefficientField:
    """U-side coefficients of the solution of (-Delta)^{alpha/2} u = f."""

    return to_u_side(project_f(params, f, n_max, l_max))


def analyze_u(
    params: ProblemParams,
    u: BallFunction,
    n_max: int,
    l_max: int,
    radial_rule: RadialMode = "weighted",
) -> CoefficientField:
    """U-side coefficients of u.

    ``weighted`` integrates u / w against the boundary-weight rule and is exact for u = w times a
    polynomial. ``plain`` integrates u itself with Gauss-Legendre and is exact for polynomial u.
    """

    k = radial_rule_size(n_max, l_max)
    sphere = sphere_rule(params.dim, l_max)
    directions = sphere.directions
    if radial_rule == "weighted":
        rule = weighted_rule(params.a, k)
        r = np.asarray(rule.nodes)
        samples = _sample(u, r, directions) / params.weight(r)[:, None]
    elif radial_rule == "plain":
        rule = gauss_legendre_unit(k)
        samples = _sample(u, np.asarray(rule.nodes), directions)
    else:
        raise InputError(f"unknown radial rule {radial_rule!r}")
    coeffs = _project(params, samples, rule, sphere, n_max, l_max)
    return CoefficientField(params=params, n_max=n_max, l_max=l_max, coeffs=coeffs, kind="U")


def _evaluate(c: CoefficientField, radii: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Sum of c_{l,m,n} P_{l,m,n}, shape (n_r, n_ang)."""

    dim = c.params.dim
    out = np.zeros((radii.size, angles.shape[0]))
    for l in range(c.l_max + 1):
        radial = basis.radial_table(c.params, l, c.n_max, radii) * radii[None, :] ** l
        harmonics = basis.angular_table(dim, l, angles)
        out += radial.T @ c.block(l).T @ harmonics
    return out


def synth_projection(c: CoefficientField, grid: EvalGrid) -> np.ndarray:
    """Values of an F-side field, i.e. of the right-hand side it represents."""

    if c.kind != "F":
        raise KindError("synth_projection needs an F-side field")
    _check_grid(c, grid)
    return _evaluate(c, grid.radii, grid.angles)


def synth_u(c: CoefficientField, grid: EvalGrid) -> np.ndarray:
    """Values of sum c p_{l,m,n}; exactly zero where r >= 1."""

    if c.kind != "U":
        raise KindError("synth_u needs a U-side field")
    _check_grid(c, grid)
    inside = grid.radii < 1.0
    values = _evaluate(c, grid.radii, grid.angles) * c.params.weight(grid.radii)[:, None]
    return np.where(inside[:, None], values, 0.0)


def synth_f(c: CoefficientField, grid: EvalGrid) -> np.ndarray:
    """(-Delta)^{alpha/2} of the function represented by the U-side field ``c``."""

    if c.kind != "U":
        raise KindError("synth_f needs a U-side field")
    return synth_projection(to_f_side(c), grid)


def _check_grid(c: CoefficientField, grid: EvalGrid) -> None:
    if grid.dim != c.params.dim:
        raise ShapeMismatchError(f"grid is {grid.dim}D but the field is {c.params.dim}D")


def sup_error(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatchError("arrays must have equal shapes", a=list(a.shape), b=list(b.shape))
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def radial_callable(g: RadialFunction) -> BallFunction:
    """Lift a function of r to a function of Cartesian points."""

    return lambda x: g(np.linalg.norm(x, axis=-1))


# Radial fast path: l = 0 only, one direction, no angular quadrature.


def _radial_harmonic_integral(dim: int) -> float:
    """Integral of the degree-0 angular factor over the sphere."""

    return 2.0 * np.pi if dim == 2 else np.sqrt(4.0 * np.pi)


def _radial_harmonic_value(dim: int) -> float:
    return 1.0 if dim == 2 else 1.0 / np.sqrt(4.0 * np.pi)


def _project_radial(params: ProblemParams, samples: np.ndarray, rule: QuadratureRule, n_max: int) -> np.ndarray:
    r = np.asarray(rule.nodes)
    radial = basis.radial_table(params, 0, n_max, r) * (rule.weights * r ** (params.dim - 1))[None, :]
    denom = np.array([basis.norm_squared(params, 0, n) for n in range(n_max + 1)])
    numer = _radial_harmonic_integral(params.dim) * (radial @ samples)
    return (numer / denom)[None, :]


def _radial_samples(g: RadialFunction, r: np.ndarray) -> np.ndarray:
    values = np.broadcast_to(np.asarray(g(r), dtype=float), r.shape)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise InputError("function returned a non-finite value", r=float(r[bad[0]]))
    return values


def analyze_radial_u(params: ProblemParams, u: RadialFunction, n_max: int) -> CoefficientField:
    rule = weighted_rule(params.a, radial_rule_size(n_max, 0))
    r = np.asarray(rule.nodes)
    samples = _radial_samples(u, r) / params.weight(r)
    coeffs = _project_radial(params, samples, rule, n_max)
    return CoefficientField(params=params, n_max=n_max, l_max=0, coeffs=coeffs, kind="U")


def analyze_radial_f(params: ProblemParams, f: RadialFunction, n_max: int) -> CoefficientField:
    rule = weighted_rule(params.a, radial_rule_size(n_max, 0))
    coeffs = _project_radial(params, _radial_samples(f, np.asarray(rule.nodes)), rule, n_max)
    return to_u_side(CoefficientField(params=params, n_max=n_max, l_max=0, coeffs=coeffs, kind="F"))


def _radial_values(c: CoefficientField, r: np.ndarray) -> np.ndarray:
    table = basis.radial_table(c.params, 0, c.n_max, r)
    return _radial_harmonic_value(c.params.dim) * (c.coeffs[0] @ table)


def synth_radial_u(c: CoefficientField, r: np.ndarray) -> np.ndarray:
    """u(r) of the l = 0 part of a U-side field; zero for r >= 1."""

    if c.kind != "U":
        raise KindError("synth_radial_u needs a U-side field")
    r = np.asarray(r, dtype=float)
    values = _radial_values(c, np.minimum(r, 1.0)) * c.params.weight(r)
    return np.where(r < 1.0, values, 0.0)


def synth_radial_f(c: CoefficientField, r: np.ndarray) -> np.ndarray:
    if c.kind != "U":
        raise KindError("synth_radial_f needs a U-side field")
    return _radial_values(to_f_side(c), np.asarray(r, dtype=float))


# Complex spherical harmonics (3D) and their rotation to the real basis.


def analyze_u_complex(params: ProblemParams, u: BallFunction, n_max: int, l_max: int) -> np.ndarray:
    """Coefficients of u against r^l Y_l^m P_n w, rows (l, m) with m = -l..l, complex."""

    if params.dim != 3:
        raise ShapeMismatchError("complex harmonic analysis is defined for the 3D ball")
    rule = weighted_rule(params.a, radial_rule_size(n_max, l_max))
    sphere = sphere_rule(3, l_max)
    r = np.asarray(rule.nodes)
    samples = _sample(u, r, sphere.directions) / params.weight(r)[:, None]
    theta, phi = sphere.angles[:, 0], sphere.angles[:, 1]

    coeffs = np.empty(((l_max + 1) ** 2, n_max + 1), dtype=complex)
    for l in range(l_max + 1):
        harmonics = np.stack([sph_harm_complex(HarmonicIndex(l=l, m=m), theta, phi) for m in range(-l, l + 1)])
        moments = (np.conj(harmonics) * sphere.weights[None, :]) @ samples.T
        radial = basis.radial_table(params, l, n_max, r) * (rule.weights * r ** (l + 2))[None, :]
        denom = np.array([basis.norm_squared(params, l, n) for n in range(n_max + 1)])
        coeffs[l * l : (l + 1) ** 2] = (moments @ radial.T) / denom[None, :]
    return coeffs


def complex_to_real(l: int, block: np.ndarray) -> np.ndarray:
    """Rotate complex-harmonic coefficients of a real function (rows m = -l..l) to the real basis."""

    block = np.asarray(block)
    if block.shape[0] != 2 * l + 1:
        raise ShapeMismatchError("block must have 2l + 1 rows", l=l, rows=int(block.shape[0]))
    out = np.empty(block.shape, dtype=float)
    out[l] = block[l].real
    root2 = np.sqrt(2.0)
    for m in range(1, l + 1):
        sign = (-1.0) ** m
        plus, minus = block[l + m], block[l - m]
        out[l + m] = ((sign * plus + minus) / root2).real
        out[l - m] = (1j * (sign * plus - minus) / root2).real
    return out


# Norms by quadrature.


def ball_quadrature(dim: int, exponent: float, n_max: int, l_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Product rule on the ball for the weight (1 - |x|^2)^exponent.

    Returns points of shape (K, n_ang, d) and weights of shape (K, n_ang); exact for products of
    two basis functions of degrees up to (n_max, l_max).
    """

    rule = weighted_rule(exponent, radial_rule_size(n_max, l_max))
    sphere = sphere_rule(dim, l_max)
    r = np.asarray(rule.nodes)
    points = r[:, None, None] * sphere.directions[None, :, :]
    weights = (rule.weights * r ** (dim - 1))[:, None] * sphere.weights[None, :]
    return points, weights


def _ball_norm_squared(c: CoefficientField, exponent: float) -> float:
    """Integral over the ball of (sum c P)^2 (1 - r^2)^exponent."""

    points, weights = ball_quadrature(c.params.dim, exponent, c.n_max, c.l_max)
    sphere = sphere_rule(c.params.dim, c.l_max)
    values = _evaluate(c, np.linalg.norm(points[:, 0], axis=-1), sphere.angles)
    return float(np.sum(weights * values * values))


def l2_norm_u(c: CoefficientField) -> float:
    """||u||_{L2(ball)} of a U-side field."""

    if c.kind != "U":
        raise KindError("l2_norm_u needs a U-side field")
    return float(np.sqrt(_ball_norm_squared(c, c.params.alpha)))


def weighted_norm_f(c: CoefficientField) -> float:
    """||f||_{L2(w)} of the right-hand side f = (-Delta)^{alpha/2} u of a U-side field."""

    if c.kind != "U":
        raise KindError("weighted_norm_f needs a U-side field")
    return float(np.sqrt(_ball_norm_squared(to_f_side(c), c.params.a)))
