"""Implicit Euler for the radial fractional diffusion problem on the 3D unit ball:

    u_t = -(-Delta)^{alpha/2} u in the ball,  u = 0 outside,  u(x, 0) = u0(|x|).

With u = sum_m c_m w P_m^{(alpha/2, 1/2)}(2r^2 - 1) Y_0^0 and Galerkin testing against
P_n r^2, each step solves (I + dt B^{-1} A D) c^{k+1} = c^k.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Sequence

import numpy as np

from fraclap import basis
from fraclap.core.constants import DIFFUSION_MODES, DIFFUSION_T_FINAL, DT_REF, ERROR_GRID_RADIAL
from fraclap.core.errors import ConfigurationError, DimensionError, ShapeMismatchError
from fraclap.linalg import lu_apply, lu_factor
from fraclap.models.diffusion import ConvergenceStudy, DiffusionState, DiffusionSystem, Trajectory
from fraclap.models.linalg import DenseMatrix
from fraclap.models.params import ProblemParams
from fraclap.quadrature import gauss_legendre_unit, weighted_rule
from fraclap.transform import analyze_radial_u


logger = logging.getLogger(__name__)


def _radial_polys(params: ProblemParams, n_modes: int, r: np.ndarray) -> np.ndarray:
    return basis.radial_table(params, 0, n_modes - 1, r)


def assemble(params: ProblemParams, n_modes: int, dt: float) -> DiffusionSystem:
    if params.dim != 3:
        raise DimensionError("the diffusion solver is defined on the 3D ball", dim=params.dim)
    if n_modes < 1:
        raise ConfigurationError(f"n_modes must be at least 1, got {n_modes}")
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ConfigurationError(f"time step must be positive, got {dt}")

    # integrands are polynomials of degree <= 4 n_modes - 2 in r
    k = 2 * n_modes + 2

    plain = gauss_legendre_unit(k)
    r = np.asarray(plain.nodes)
    polys = _radial_polys(params, n_modes, r)
    gram = (polys * (plain.weights * r * r)[None, :]) @ polys.T
    gram = 0.5 * (gram + gram.T)

    rule = weighted_rule(params.a, k)
    r = np.asarray(rule.nodes)
    polys = _radial_polys(params, n_modes, r)
    norms = (polys * polys) @ (rule.weights * r * r)

    eigen = np.asarray(basis.eigenvalue(params, np.arange(n_modes), 0), dtype=float).reshape(n_modes)

    operator = np.eye(n_modes) + dt * gram * eigen[None, :] / norms[:, None]
    factors = lu_factor(DenseMatrix(entries=operator))
    logger.debug("assembled diffusion system alpha=%g n_modes=%d dt=%g", params.alpha, n_modes, dt)
    return DiffusionSystem(
        params=params,
        n_modes=n_modes,
        dt=dt,
        A=gram,
        B=norms,
        D=eigen,
        operator=operator,
        factors=factors,
    )


def init_state(params: ProblemParams, n_modes: int, u0: Callable[[np.ndarray], np.ndarray]) -> DiffusionState:
    """Radial expansion of the initial data u0(r)."""

    if params.dim != 3:
        raise DimensionError("the diffusion solver is defined on the 3D ball", dim=params.dim)
    field = analyze_radial_u(params, u0, n_modes - 1)
    return DiffusionState(c=field.coeffs[0].copy(), t=0.0)


def step(sys: DiffusionSystem, s: DiffusionState) -> DiffusionState:
    if s.c.shape != (sys.n_modes,):
        raise ShapeMismatchError("state size does not match the system", n_modes=sys.n_modes, state=list(s.c.shape))
    return DiffusionState(c=lu_apply(sys.factors, s.c), t=s.t + sys.dt)


def energy_norm(sys: DiffusionSystem, c: np.ndarray) -> float:
    """sqrt(sum D_m B_m c_m^2); the implicit step never increases it."""

    c = np.asarray(c, dtype=float)
    return float(np.sqrt(np.sum(sys.D * sys.B * c * c)))


def step_count(dt: float, t_final: float) -> int:
    if t_final < 0.0:
        raise ConfigurationError(f"final time must be nonnegative, got {t_final}")
    steps = round(t_final / dt)
    if abs(steps * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ConfigurationError(
            "final time is not an integer multiple of the time step",
            dt=dt,
            t_final=t_final,
        )
    return int(steps)


def evolve(sys: DiffusionSystem, s0: DiffusionState, t_final: float) -> tuple[DiffusionState, Trajectory]:
    """Advance ``s0`` by ``t_final``; the trajectory records t, ||c|| and the energy norm per step."""

    steps = step_count(sys.dt, t_final)
    times = [s0.t]
    norms = [float(np.linalg.norm(s0.c))]
    energies = [energy_norm(sys, s0.c)]
    state = s0
    for _ in range(steps):
        state = step(sys, state)
        times.append(state.t)
        norms.append(float(np.linalg.norm(state.c)))
        energies.append(energy_norm(sys, state.c))
    return state, Trajectory(times=times, norms=norms, energies=energies)


def profile(sys: DiffusionSystem, state: DiffusionState, r: np.ndarray) -> np.ndarray:
    """u(r, t) of ``state``; zero for r >= 1."""

    r = np.asarray(r, dtype=float)
    inside = r < 1.0
    polys = _radial_polys(sys.params, sys.n_modes, np.minimum(r, 1.0))
    values = sys.params.weight(r) * (state.c @ polys) / math.sqrt(4.0 * math.pi)
    return np.where(inside, values, 0.0)


def initial_profile(params: ProblemParams) -> Callable[[np.ndarray], np.ndarray]:
    """u0(r) = (1 - r^2)_+^{alpha/2}."""

    return params.weight


def solve_profile(
    params: ProblemParams,
    dt: float,
    t_final: float = DIFFUSION_T_FINAL,
    n_modes: int = DIFFUSION_MODES,
    radii: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Radial profile at ``t_final`` starting from u0 = w, on ``radii`` (uniform in [0, 1] by default)."""

    radii = np.linspace(0.0, 1.0, ERROR_GRID_RADIAL) if radii is None else np.asarray(radii, dtype=float)
    sys = assemble(params, n_modes, dt)
    state, _ = evolve(sys, init_state(params, n_modes, initial_profile(params)), t_final)
    return radii, profile(sys, state, radii)


def convergence_study(
    alpha: float,
    dts: Sequence[float],
    t_final: float = DIFFUSION_T_FINAL,
    n_modes: int = DIFFUSION_MODES,
    dt_ref: float = DT_REF,
) -> ConvergenceStudy:
    """Sup-norm error of the profile at ``t_final`` against the same scheme at ``dt_ref``.

    The slope is the least-squares fit of log(error) against log(dt) over the nonzero errors.
    """

    params = ProblemParams(alpha=alpha, dim=3)
    radii, reference = solve_profile(params, dt_ref, t_final, n_modes)
    errors = []
    for dt in dts:
        _, values = solve_profile(params, dt, t_final, n_modes, radii)
        errors.append(float(np.max(np.abs(values - reference))))
        logger.debug("diffusion alpha=%g dt=%g error=%.6e", alpha, dt, errors[-1])

    dts_arr = np.asarray(dts, dtype=float)
    errs = np.asarray(errors)
    usable = errs > 0.0
    slope = float("nan")
    if np.count_nonzero(usable) >= 2:
        slope = float(np.polyfit(np.log(dts_arr[usable]), np.log(errs[usable]), 1)[0])
    return ConvergenceStudy(alpha=alpha, dts=dts_arr, errors=errs, slope=slope, radii=radii, profile=reference)
