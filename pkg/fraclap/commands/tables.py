from __future__ import annotations

import argparse
from itertools import groupby

from fraclap.commands._common import Checks, add_alpha, add_dim, add_out
from fraclap.commands._output import write_rows
from fraclap.core.constants import (
    DEFAULT_ALPHAS,
    DEFAULT_CONVERGENCE_N,
    DEFAULT_CONVERGENCE_S,
    DEFAULT_N_VALUES,
    DEFAULT_S_VALUES,
    EXACT_CHECK_TOL,
    NONRADIAL_CHECK_TOL,
    POISSON_TABLE_R_MIN,
)
from fraclap.experiments import poisson_table, s_convergence, s_table
from fraclap.models.config import RunConfig
from fraclap.models.params import ProblemParams
from fraclap.models.results import PoissonRow, STableRow
from fraclap.operators import analytic_pair


S_TABLE = "table-s"
S_CONVERGENCE = "convergence-s"
POISSON_TABLE = "poisson-table"

# errors below this are round-off and carry no ordering
ROUNDOFF_FLOOR = 1e-10

S_DEFAULTS = {
    "alphas": list(DEFAULT_ALPHAS),
    "dim": 2,
    "s_values": list(DEFAULT_S_VALUES),
    "n_values": list(DEFAULT_N_VALUES),
}
CONVERGENCE_DEFAULTS = {
    "alphas": list(DEFAULT_ALPHAS),
    "dim": 2,
    "s_values": list(DEFAULT_CONVERGENCE_S),
    "n_values": list(DEFAULT_CONVERGENCE_N),
}
POISSON_DEFAULTS = {
    "alphas": list(DEFAULT_ALPHAS),
    "dim": 2,
    "n_values": [0, 1, 2],
    "r_min": POISSON_TABLE_R_MIN,
}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(S_TABLE, help="forward-operator error on u = (1 - |x|^2)^{alpha/2 + s}")
    add_alpha(parser)
    add_dim(parser)
    parser.add_argument("--s", dest="s_values", type=int, action="append", help="extra smoothness s (repeatable)")
    parser.add_argument("--n", dest="n_values", type=int, action="append", help="radial truncation n (repeatable)")
    add_out(parser)
    parser.set_defaults(handler=run_s_table, defaults=S_DEFAULTS)

    parser = subparsers.add_parser(S_CONVERGENCE, help="forward-operator error on u = (1 - |x|^2)_+^s")
    add_alpha(parser)
    add_dim(parser)
    parser.add_argument("--s", dest="s_values", type=int, action="append", help="power s >= 1 (repeatable)")
    parser.add_argument("--n", dest="n_values", type=int, action="append", help="radial truncation n (repeatable)")
    add_out(parser)
    parser.set_defaults(handler=run_s_convergence, defaults=CONVERGENCE_DEFAULTS)

    parser = subparsers.add_parser(POISSON_TABLE, help="Poisson-solve error for the closed-form pairs")
    add_alpha(parser)
    add_dim(parser)
    parser.add_argument("--n", dest="n_values", type=int, action="append", help="radial truncation n (repeatable)")
    parser.add_argument("--r-min", dest="r_min", type=float, help="inner radius of the error grid")
    add_out(parser)
    parser.set_defaults(handler=run_poisson_table, defaults=POISSON_DEFAULTS)


def run_s_table(config: RunConfig) -> None:
    rows = s_table(config.dim, config.alphas, config.s_values, config.n_values)
    write_rows(rows, STableRow, config)

    checks = Checks(S_TABLE)
    for row in rows:
        if row.n >= row.s:
            checks.expect(
                row.error <= EXACT_CHECK_TOL,
                f"alpha={row.alpha} s={row.s} n={row.n}: error {row.error:.3e} should vanish",
            )
    checks.finish()


def run_s_convergence(config: RunConfig) -> None:
    rows = s_convergence(config.dim, config.alphas, sorted(set(config.s_values)), sorted(set(config.n_values)))
    write_rows(rows, STableRow, config)

    checks = Checks(S_CONVERGENCE)
    last = {}
    for (alpha, s), group in groupby(rows, key=lambda row: (row.alpha, row.s)):
        series = list(group)
        for prev, cur in zip(series, series[1:]):
            if prev.error > ROUNDOFF_FLOOR:
                checks.expect(
                    cur.error < prev.error,
                    f"alpha={alpha} s={s}: error does not decrease from n={prev.n} to n={cur.n}",
                )
        last[alpha, s] = series[-1]
    for (alpha, s), row in last.items():
        smoother = last.get((alpha, s + 1))
        if smoother is not None and row.error > ROUNDOFF_FLOOR:
            checks.expect(
                smoother.error < row.error,
                f"alpha={alpha} n={row.n}: s={s + 1} is not more accurate than s={s}",
            )
    checks.finish()


def run_poisson_table(config: RunConfig) -> None:
    rows = poisson_table(config.alphas, dim=config.dim, n_values=config.n_values, r_min=config.r_min)
    write_rows(rows, PoissonRow, config)

    checks = Checks(POISSON_TABLE)
    for row in rows:
        pair = analytic_pair(row.eq, ProblemParams(alpha=row.alpha, dim=config.dim))
        if row.n < pair.n_exact:
            continue
        # non-radial pairs go through the angular quadrature and carry more round-off
        tol = NONRADIAL_CHECK_TOL if pair.l_max > 0 else EXACT_CHECK_TOL
        checks.expect(row.error <= tol, f"alpha={row.alpha} {row.eq} n={row.n}: error {row.error:.3e}")
    checks.finish()
