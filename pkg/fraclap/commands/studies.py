from __future__ import annotations

import argparse
import math

from fraclap.commands._common import Checks, add_alpha, add_dim, add_out
from fraclap.commands._output import write_rows
from fraclap.core.constants import (
    DEFAULT_ALPHAS,
    DEFAULT_DTS,
    DEFAULT_OSCILLATORY_N,
    DIFFUSION_MODES,
    DIFFUSION_SLOPE_RANGE,
    DIFFUSION_T_FINAL,
)
from fraclap.experiments import coeff_decay, decay_fits, diffusion_studies, oscillatory, step_growth
from fraclap.models.config import RunConfig
from fraclap.models.results import CoeffRow, DiffusionErrorRow, DiffusionProfileRow, OscillatoryRow


OSCILLATORY = "oscillatory"
DIFFUSION = "diffusion"
COEFF_DECAY = "coeff-decay"

# errors below this are round-off and carry no ordering
ROUNDOFF_FLOOR = 1e-12
STABILITY_DTS = (1e-3, 1e-1, 1.0, 10.0)
STABILITY_STEPS = 100

OSCILLATORY_DEFAULTS = {"alphas": [1.0], "dim": 2, "n_values": list(DEFAULT_OSCILLATORY_N)}
DIFFUSION_DEFAULTS = {
    "alphas": list(DEFAULT_ALPHAS),
    "dim": 3,
    "dts": list(DEFAULT_DTS),
    "t_final": DIFFUSION_T_FINAL,
    "n_modes": DIFFUSION_MODES,
}
COEFF_DEFAULTS = {"alphas": [0.5], "dim": 2, "n_max": 30}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(OSCILLATORY, help="Poisson solve with f = |x|^2 cos(16|x|)")
    add_alpha(parser, repeatable=False)
    add_dim(parser)
    parser.add_argument("--n", dest="n_values", type=int, action="append", help="radial truncation n (repeatable)")
    add_out(parser)
    parser.set_defaults(handler=run_oscillatory, defaults=OSCILLATORY_DEFAULTS)

    parser = subparsers.add_parser(DIFFUSION, help="implicit Euler for the radial 3D fractional diffusion problem")
    add_alpha(parser)
    parser.add_argument("--dt", dest="dts", type=float, action="append", help="time step (repeatable)")
    parser.add_argument("--t-final", dest="t_final", type=float, help="final time")
    parser.add_argument("--n-modes", dest="n_modes", type=int, help="number of radial modes")
    add_out(parser)
    parser.set_defaults(handler=run_diffusion, defaults=DIFFUSION_DEFAULTS)

    parser = subparsers.add_parser(COEFF_DECAY, help="coefficients c_00^n of u = 1 - |x|^2")
    add_alpha(parser, repeatable=False)
    add_dim(parser)
    parser.add_argument("--n-max", dest="n_max", type=int, help="largest radial degree")
    add_out(parser)
    parser.set_defaults(handler=run_coeff_decay, defaults=COEFF_DEFAULTS)


def run_oscillatory(config: RunConfig) -> None:
    n_values = sorted(set(config.n_values))
    rows = oscillatory(config.alphas[0], n_values, dim=config.dim)
    write_rows(rows, OscillatoryRow, config)

    checks = Checks(OSCILLATORY)
    for prev, cur in zip(rows, rows[1:]):
        if prev.error > ROUNDOFF_FLOOR:
            checks.expect(cur.error < prev.error, f"error does not decrease from n={prev.n} to n={cur.n}")
    errors = {row.n: row.error for row in rows}
    if 5 in errors and 25 in errors:
        checks.expect(
            errors[5] >= 1e4 * errors[25],
            f"error ratio n=5 / n=25 is only {errors[5] / max(errors[25], 1e-300):.3e}",
        )
    checks.finish()


def run_diffusion(config: RunConfig) -> None:
    studies = diffusion_studies(config.alphas, config.dts, t_final=config.t_final, n_modes=config.n_modes)
    errors = [
        DiffusionErrorRow(alpha=study.alpha, dt=float(dt), error=float(err))
        for study in studies
        for dt, err in zip(study.dts, study.errors)
    ]
    profiles = [
        DiffusionProfileRow(alpha=study.alpha, r=float(r), u=float(u))
        for study in studies
        for r, u in zip(study.radii, study.profile)
    ]
    write_rows(errors, DiffusionErrorRow, config)
    write_rows(profiles, DiffusionProfileRow, config, suffix="profile")

    checks = Checks(DIFFUSION)
    low, high = DIFFUSION_SLOPE_RANGE
    for study in studies:
        if len(study.dts) >= 2:
            checks.expect(
                not math.isnan(study.slope) and low <= study.slope <= high,
                f"alpha={study.alpha}: convergence slope {study.slope:.3f} outside [{low}, {high}]",
            )
        for dt in STABILITY_DTS:
            growth = step_growth(study.alpha, dt, STABILITY_STEPS, config.n_modes)
            for name, value in growth.items():
                checks.expect(value <= 1e-12, f"alpha={study.alpha} dt={dt}: {name} grew by {value:.3e}")
    checks.finish()


def run_coeff_decay(config: RunConfig) -> None:
    rows = coeff_decay(config.alphas[0], config.n_max, dim=config.dim)
    write_rows(rows, CoeffRow, config)

    checks = Checks(COEFF_DECAY)
    tail = rows[1:]
    checks.expect(
        all(cur.abs_c00 < prev.abs_c00 for prev, cur in zip(tail, tail[1:])),
        "|c_00^n| is not decreasing for n >= 1",
    )
    checks.expect(rows[0].abs_c00 == max(row.abs_c00 for row in rows), "c_00^0 is not the largest coefficient")
    if len(tail) >= 3:
        fits = decay_fits(rows)
        checks.expect(
            fits["power_residual"] < fits["exponential_residual"],
            "coefficients fit an exponential better than a power law",
        )
    checks.finish()
