"""``apply`` and ``solve``: the operator and the Poisson solver on user-supplied expressions.

Expressions are sympy syntax in x1, x2 (x3 in 3D) and r = |x|, e.g.
``fraclap apply --alpha 1 --expr "(1 - r**2)**0.5 * x2" --l-max 1``.
"""

from __future__ import annotations

import argparse
from typing import Callable

import numpy as np
import sympy
from sympy import lambdify
from sympy.core.function import AppliedUndef

from fraclap.commands._common import Checks, add_alpha, add_dim, add_grid, add_out, add_truncation
from fraclap.commands._output import write_rows
from fraclap.core.constants import OUTPUT_GRID_PHI, OUTPUT_GRID_RADIAL, OUTPUT_GRID_THETA
from fraclap.core.errors import ConfigurationError
from fraclap.models.config import RunConfig
from fraclap.models.fields import EvalGrid
from fraclap.models.params import ProblemParams
from fraclap.models.results import PolarValueRow, SphericalValueRow
from fraclap.operators import apply_fractional_laplacian, solve_poisson


APPLY = "apply"
SOLVE = "solve"

DEFAULTS = {
    "alphas": [1.0],
    "dim": 2,
    "n_max": 8,
    "l_max": 0,
    "n_r": OUTPUT_GRID_RADIAL,
    "n_theta": OUTPUT_GRID_THETA,
    "n_phi": OUTPUT_GRID_PHI,
}


def register(subparsers: argparse._SubParsersAction) -> None:
    for name, handler, help_text in (
        (APPLY, run_apply, "evaluate (-Delta)^{alpha/2} u for u given by --expr"),
        (SOLVE, run_solve, "solve (-Delta)^{alpha/2} u = f for f given by --expr"),
    ):
        parser = subparsers.add_parser(name, help=help_text)
        add_alpha(parser, repeatable=False)
        add_dim(parser)
        add_truncation(parser)
        add_grid(parser)
        parser.add_argument("--expr", required=True, help="sympy expression in x1, x2[, x3] and r")
        add_out(parser)
        parser.set_defaults(handler=handler, defaults=DEFAULTS)


def compile_expression(expr: str, dim: int) -> Callable[[np.ndarray], np.ndarray]:
    """Turn an expression into a vectorized function of Cartesian points (trailing axis d)."""

    coords = sympy.symbols(" ".join(f"x{i + 1}" for i in range(dim)), real=True)
    r = sympy.Symbol("r", nonnegative=True)
    try:
        parsed = sympy.sympify(expr, locals={**{str(c): c for c in coords}, "r": r})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ConfigurationError(f"cannot parse expression {expr!r}", flag="--expr") from exc
    if not isinstance(parsed, sympy.Expr):
        raise ConfigurationError(f"{expr!r} is not a scalar expression", flag="--expr")

    unknown = parsed.free_symbols - set(coords) - {r}
    if unknown:
        raise ConfigurationError(
            f"unknown symbols in expression: {', '.join(sorted(map(str, unknown)))}",
            flag="--expr",
        )
    undefined = parsed.atoms(AppliedUndef)
    if undefined:
        raise ConfigurationError(
            f"unknown functions in expression: {', '.join(sorted(str(f.func) for f in undefined))}",
            flag="--expr",
        )
    if parsed.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
        raise ConfigurationError(f"{expr!r} is not finite", flag="--expr")

    parsed = parsed.subs(r, sympy.sqrt(sum(c**2 for c in coords)))
    try:
        fn = lambdify(coords, parsed, "numpy")
    except (NameError, KeyError, TypeError, SyntaxError) as exc:
        raise ConfigurationError(f"cannot compile expression {expr!r}", flag="--expr") from exc

    def evaluate(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        try:
            values = np.asarray(fn(*np.moveaxis(x, -1, 0)), dtype=float)
        except (NameError, TypeError) as exc:
            raise ConfigurationError(f"cannot evaluate expression {expr!r}", flag="--expr") from exc
        return np.broadcast_to(values, x.shape[:-1])

    return evaluate


def _output_grid(config: RunConfig) -> EvalGrid:
    return EvalGrid.default(config.dim, config.n_r, config.n_theta, config.n_phi)


def _point_rows(grid: EvalGrid, values: np.ndarray) -> list[PolarValueRow] | list[SphericalValueRow]:
    rows = []
    for i, r in enumerate(grid.radii):
        for j, angles in enumerate(grid.angles):
            value = float(values[i, j])
            if grid.dim == 2:
                rows.append(PolarValueRow(r=float(r), theta=float(angles[0]), value=value))
            else:
                rows.append(SphericalValueRow(r=float(r), theta=float(angles[0]), phi=float(angles[1]), value=value))
    return rows


def _run(config: RunConfig, operator: Callable[..., np.ndarray], name: str) -> None:
    params = ProblemParams(alpha=config.alphas[0], dim=config.dim)
    fn = compile_expression(config.expr or "", config.dim)
    grid = _output_grid(config)
    values = operator(params, fn, config.n_max, config.l_max, grid)
    write_rows(_point_rows(grid, values), PolarValueRow if config.dim == 2 else SphericalValueRow, config)

    checks = Checks(name)
    checks.expect(bool(np.all(np.isfinite(values))), "output contains non-finite values")
    checks.finish()


def run_apply(config: RunConfig) -> None:
    _run(config, apply_fractional_laplacian, APPLY)


def run_solve(config: RunConfig) -> None:
    _run(config, solve_poisson, SOLVE)
