"""Drivers of the numerical experiments; the commands only parse flags, call these and write CSV."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from fraclap.core.constants import (
    CONVERGENCE_R_MAX,
    DIFFUSION_MODES,
    DIFFUSION_T_FINAL,
    DT_REF,
    ERROR_GRID_PHI_3D,
    ERROR_GRID_RADIAL,
    ERROR_GRID_THETA_2D,
    ERROR_GRID_THETA_3D,
    N_REF,
    N_REF_CONVERGENCE,
    N_REF_OSCILLATORY,
    POISSON_TABLE_R_MIN,
)
from fraclap.core.errors import ConfigurationError
from fraclap.diffusion import assemble, convergence_study, evolve, init_state, initial_profile
from fraclap.models.diffusion import ConvergenceStudy
from fraclap.models.fields import EvalGrid
from fraclap.models.params import ProblemParams
from fraclap.models.results import CoeffRow, MomentRow, OscillatoryRow, PoissonRow, STableRow
from fraclap.models.rules import QuadratureRule
from fraclap.operators import analytic_pair, radial_family_u, solve_poisson
from fraclap.special_fn import beta_moment
from fraclap.transform import (
    RadialFunction,
    analyze_f,
    analyze_radial_u,
    analyze_u,
    radial_callable,
    sup_error,
    synth_f,
    synth_radial_f,
    synth_u,
)


logger = logging.getLogger(__name__)


def error_grid(dim: int, r_min: float = 0.0) -> EvalGrid:
    theta = ERROR_GRID_THETA_2D if dim == 2 else ERROR_GRID_THETA_3D
    return EvalGrid.default(dim, ERROR_GRID_RADIAL, theta, ERROR_GRID_PHI_3D, r_min=r_min)


def moment_residuals(rule: QuadratureRule) -> list[MomentRow]:
    """Rule moments of r^j against the Beta-function values, j = 0..2K-1."""

    r = np.asarray(rule.nodes)
    rows = []
    for j in range(2 * rule.size):
        computed = float(rule.weights @ r**j)
        exact = float(beta_moment(j, rule.exponent))
        rows.append(MomentRow(degree=j, computed=computed, exact=exact, residual=abs(computed - exact) / exact))
    return rows


def s_table(
    dim: int,
    alphas: Sequence[float],
    s_values: Sequence[int],
    n_values: Sequence[int],
    grid: EvalGrid | None = None,
    n_ref: int = N_REF,
) -> list[STableRow]:
    """Forward-operator error on u = (1 - |x|^2)^{alpha/2 + s}, truncated at n, against n_ref."""

    grid = error_grid(dim) if grid is None else grid
    rows = []
    for alpha in alphas:
        params = ProblemParams(alpha=alpha, dim=dim)
        for s in s_values:
            u = radial_family_u(params, s)
            reference = synth_f(analyze_u(params, u, n_ref, 0), grid)
            for n in n_values:
                error = sup_error(synth_f(analyze_u(params, u, n, 0), grid), reference)
                logger.debug("s-table d=%d alpha=%g s=%d n=%d error=%.6e", dim, alpha, s, n, error)
                rows.append(STableRow(alpha=alpha, dim=dim, s=s, n=n, error=error))
    return rows


def truncated_power(s: int) -> RadialFunction:
    """(1 - r^2)_+^s."""

    return lambda r: np.clip(1.0 - r * r, 0.0, None) ** s


def s_convergence(
    dim: int,
    alphas: Sequence[float],
    s_values: Sequence[int],
    n_values: Sequence[int],
    n_ref: int = N_REF_CONVERGENCE,
    r_max: float = CONVERGENCE_R_MAX,
) -> list[STableRow]:
    """Forward-operator error on u = (1 - |x|^2)_+^s against n_ref, on radii in [0, r_max].

    u / w = (1 - r^2)^{s - alpha/2} is not a polynomial, so no truncation is exact and the
    error decays with n at a rate set by s.
    """

    if any(s < 1 for s in s_values):
        raise ConfigurationError("powers s must be at least 1", flag="--s", s_values=list(s_values))
    radii = np.linspace(0.0, r_max, ERROR_GRID_RADIAL)
    rows = []
    for alpha in alphas:
        params = ProblemParams(alpha=alpha, dim=dim)
        for s in s_values:
            u = truncated_power(s)
            reference = synth_radial_f(analyze_radial_u(params, u, n_ref), radii)
            for n in n_values:
                error = sup_error(synth_radial_f(analyze_radial_u(params, u, n), radii), reference)
                logger.debug("s-convergence d=%d alpha=%g s=%d n=%d error=%.6e", dim, alpha, s, n, error)
                rows.append(STableRow(alpha=alpha, dim=dim, s=s, n=n, error=error))
    return rows


def poisson_table(
    alphas: Sequence[float],
    dim: int = 2,
    n_values: Sequence[int] = (0, 1, 2),
    r_min: float = POISSON_TABLE_R_MIN,
    pair_ids: Sequence[str] = ("eq1", "eq2", "eq3", "eq4"),
) -> list[PoissonRow]:
    """Poisson-solve error for the closed-form pairs, each at its minimal harmonic degree."""

    grid = error_grid(dim, r_min=r_min)
    rows = []
    for alpha in alphas:
        params = ProblemParams(alpha=alpha, dim=dim)
        for pair_id in pair_ids:
            pair = analytic_pair(pair_id, params)
            exact = pair.u(grid.points)
            for n in n_values:
                error = sup_error(solve_poisson(params, pair.f, n, pair.l_max, grid), exact)
                rows.append(PoissonRow(alpha=alpha, eq=pair_id, L=pair.l_max, n=n, error=error))
    return rows


def oscillatory_rhs(x: np.ndarray) -> np.ndarray:
    """|x|^2 cos(16 |x|)."""

    r = np.linalg.norm(x, axis=-1)
    return r * r * np.cos(16.0 * r)


def oscillatory(
    alpha: float,
    n_values: Sequence[int],
    dim: int = 2,
    n_ref: int = N_REF_OSCILLATORY,
) -> list[OscillatoryRow]:
    """Poisson solve with the oscillatory right-hand side against the degree-n_ref solution."""

    params = ProblemParams(alpha=alpha, dim=dim)
    grid = EvalGrid.radial(dim, ERROR_GRID_RADIAL)
    reference = synth_u(analyze_f(params, oscillatory_rhs, n_ref, 0), grid)
    rows = []
    for n in n_values:
        error = sup_error(synth_u(analyze_f(params, oscillatory_rhs, n, 0), grid), reference)
        rows.append(OscillatoryRow(n=n, error=error))
    return rows


def diffusion_studies(
    alphas: Sequence[float],
    dts: Sequence[float],
    t_final: float = DIFFUSION_T_FINAL,
    n_modes: int = DIFFUSION_MODES,
    dt_ref: float = DT_REF,
) -> list[ConvergenceStudy]:
    return [convergence_study(alpha, dts, t_final=t_final, n_modes=n_modes, dt_ref=dt_ref) for alpha in alphas]


def coeff_decay(alpha: float, n_max: int, dim: int = 2) -> list[CoeffRow]:
    """|c_00^n| of u = 1 - |x|^2, which lacks the boundary factor w."""

    params = ProblemParams(alpha=alpha, dim=dim)
    u = radial_callable(lambda r: 1.0 - r * r)
    field = analyze_u(params, u, n_max, 0, radial_rule="plain")
    return [CoeffRow(n=n, abs_c00=abs(field.value(0, 0, n))) for n in range(n_max + 1)]


def decay_fits(rows: Sequence[CoeffRow], n_min: int = 1) -> dict[str, float]:
    """Least-squares fits of log|c_n| against log n (power law) and against n (exponential)."""

    n = np.array([row.n for row in rows if row.n >= n_min], dtype=float)
    c = np.log(np.array([row.abs_c00 for row in rows if row.n >= n_min]))
    fits = {}
    for name, x in (("power", np.log(n)), ("exponential", n)):
        coef, residual, *_ = np.polyfit(x, c, 1, full=True)
        fits[f"{name}_slope"] = float(coef[0])
        fits[f"{name}_residual"] = float(residual[0]) if residual.size else 0.0
    return fits


def step_growth(alpha: float, dt: float, steps: int = 100, n_modes: int = DIFFUSION_MODES) -> dict[str, float]:
    """Largest step-to-step increase of ||c|| and of the energy norm, each relative to its initial value."""

    params = ProblemParams(alpha=alpha, dim=3)
    sys = assemble(params, n_modes, dt)
    _, trajectory = evolve(sys, init_state(params, n_modes, initial_profile(params)), steps * dt)
    growth = {}
    for name, series in (("norm", trajectory.norms), ("energy", trajectory.energies)):
        values = np.asarray(series)
        growth[name] = float(np.max(np.diff(values)) / values[0])
    return growth
