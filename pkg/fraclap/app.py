from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from fraclap import __version__
from fraclap.commands import quadrature, solver, studies, tables
from fraclap.core.errors import FracLapError
from fraclap.core.logging import configure_logging
from fraclap.models.config import RunConfig


logger = logging.getLogger(__name__)

COMMAND_MODULES = (quadrature, tables, studies, solver)


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclap",
        description="Spectral solver for the fractional Laplacian on the unit disk and ball.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # Register commands
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def _log_level(verbose: int) -> Optional[int]:
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return None


def report(error: FracLapError) -> int:
    """Write the machine-readable error line and return the exit status."""

    print(json.dumps(error.to_payload(), sort_keys=True), file=sys.stderr)
    return error.exit_status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    ns = parser.parse_args(argv)
    configure_logging(_log_level(ns.verbose))

    try:
        config = RunConfig.from_namespace(ns, ns.defaults)
        logger.info("running %s", config.describe())
        ns.handler(config)
    except FracLapError as exc:
        return report(exc)
    logger.info("%s finished", config.command)
    return 0


if __name__ == "__main__":
    sys.exit(main())
