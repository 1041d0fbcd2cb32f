"""Operator-level API: apply (-Delta)^{alpha/2}, solve the fractional Poisson problem, and the
closed-form test pairs."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from fraclap.core.errors import UnknownPairError
from fraclap.models.fields import EvalGrid
from fraclap.models.pairs import PAIR_IDS, AnalyticPair
from fraclap.models.params import ProblemParams
from fraclap.special_fn import log_gamma
from fraclap.transform import BallFunction, analyze_f, analyze_u, synth_f, synth_u


def apply_fractional_laplacian(
    params: ProblemParams,
    u: BallFunction,
    n_max: int,
    l_max: int,
    grid: EvalGrid,
) -> np.ndarray:
    """(-Delta)^{alpha/2} u on ``grid``, with u truncated to degrees (n_max, l_max)."""

    return synth_f(analyze_u(params, u, n_max, l_max), grid)


def solve_poisson(
    params: ProblemParams,
    f: BallFunction,
    n_max: int,
    l_max: int,
    grid: EvalGrid,
) -> np.ndarray:
    """Solution of (-Delta)^{alpha/2} u = f in the ball, u = 0 outside, on ``grid``."""

    return synth_u(analyze_f(params, f, n_max, l_max), grid)


def _radius_squared(x: np.ndarray) -> np.ndarray:
    return np.sum(np.asarray(x, dtype=float) ** 2, axis=-1)


def _pair_constant(params: ProblemParams, shift_a: int, shift_d: int) -> float:
    """2^alpha Gamma(alpha/2 + 1 + shift_a) Gamma((d + alpha)/2 + shift_d) / Gamma(d/2 + shift_d)."""

    half_d = 0.5 * params.dim
    return math.exp(
        params.alpha * math.log(2.0)
        + log_gamma(params.a + 1.0 + shift_a)
        + log_gamma(half_d + params.a + shift_d)
        - log_gamma(half_d + shift_d)
    )


def analytic_pair(pair_id: str, params: ProblemParams) -> AnalyticPair:
    """Closed-form pairs:

        eq1: u = w                    f = C1
        eq2: u = w (1 - |x|^2)        f = C2 (1 - (1 + alpha/d) |x|^2)
        eq3: u = w x_d                f = C3 x_d
        eq4: u = w (1 - |x|^2) x_d    f = C4 (1 - (1 + alpha/(d + 2)) |x|^2) x_d

    with x_d the last Cartesian coordinate.
    """

    if pair_id not in PAIR_IDS:
        raise UnknownPairError(f"unknown analytic pair {pair_id!r}", choices=list(PAIR_IDS))

    dim = params.dim
    odd = pair_id in ("eq3", "eq4")
    quadratic = pair_id in ("eq2", "eq4")
    constant = _pair_constant(params, shift_a=int(quadratic), shift_d=int(odd))
    slope = 1.0 + params.alpha / (dim + 2 if odd else dim)

    def coordinate(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x[..., dim - 1] if odd else np.ones(x.shape[:-1])

    def u(x: np.ndarray) -> np.ndarray:
        rr = _radius_squared(x)
        profile = np.clip(1.0 - rr, 0.0, None) if quadratic else 1.0
        return params.weight(np.sqrt(rr)) * profile * coordinate(x)

    def f(x: np.ndarray) -> np.ndarray:
        rr = _radius_squared(x)
        profile = 1.0 - slope * rr if quadratic else 1.0
        return constant * profile * coordinate(x)

    return AnalyticPair(
        id=pair_id,
        params=params,
        constant=constant,
        l_max=int(odd),
        n_exact=int(quadratic),
        u=u,
        f=f,
    )


def radial_family_u(params: ProblemParams, s: int) -> Callable[[np.ndarray], np.ndarray]:
    """u = (1 - |x|^2)_+^{alpha/2 + s} on Cartesian points; exactly represented from n = s on."""

    def u(x: np.ndarray) -> np.ndarray:
        return np.clip(1.0 - _radius_squared(x), 0.0, None) ** (params.a + s)

    return u
