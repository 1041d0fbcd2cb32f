from __future__ import annotations

import argparse
import sys

import numpy as np

from fraclap.commands._common import Checks, add_alpha, add_out
from fraclap.commands._output import write_rows
from fraclap.core.constants import DEFAULT_SEED_RULE, MOMENT_CHECK_TOL, SEED_RULES
from fraclap.experiments import moment_residuals
from fraclap.models.config import RunConfig
from fraclap.models.results import QuadratureRow
from fraclap.quadrature import build_radial_rule
from fraclap.special_fn import beta_moment


NAME = "quadrature"
DEFAULTS = {"alphas": [1.0], "k": 4, "seed": DEFAULT_SEED_RULE}


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(NAME, help="radial Gauss rule for the weight (1 - r^2)^{alpha/2}")
    add_alpha(parser, repeatable=False)
    parser.add_argument("--k", type=int, help="number of nodes")
    parser.add_argument("--fine-n", dest="fine_n", type=int, help="seed rule size")
    parser.add_argument("--seed", choices=SEED_RULES, help="seed rule the Lanczos process compresses")
    add_out(parser)
    parser.set_defaults(handler=run, defaults=DEFAULTS)


def run(config: RunConfig) -> None:
    alpha = config.alphas[0]
    rule = build_radial_rule(alpha, config.k, fine_n=config.fine_n, seed=config.seed)
    rows = [
        QuadratureRow(i=i, node=float(node), weight=float(weight))
        for i, (node, weight) in enumerate(zip(rule.nodes, rule.weights))
    ]
    write_rows(rows, QuadratureRow, config)

    total = float(np.sum(rule.weights))
    mass = float(beta_moment(0, rule.exponent))
    moments = moment_residuals(rule)
    print(f"sum of weights: {total:.16e} (exact {mass:.16e})", file=sys.stderr)
    for row in moments:
        print(f"degree {row.degree}: relative residual {row.residual:.3e}", file=sys.stderr)

    checks = Checks(NAME)
    checks.expect(abs(total - mass) <= MOMENT_CHECK_TOL * mass, f"sum of weights off by {abs(total - mass):.3e}")
    worst = max(row.residual for row in moments)
    checks.expect(worst <= MOMENT_CHECK_TOL, f"largest moment residual {worst:.3e}")
    checks.finish()
