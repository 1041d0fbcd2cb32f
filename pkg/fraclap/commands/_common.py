from __future__ import annotations

import argparse
import logging
from typing import List

from fraclap.core.errors import CheckFailedError


logger = logging.getLogger(__name__)


def add_alpha(parser: argparse.ArgumentParser, repeatable: bool = True) -> None:
    if repeatable:
        parser.add_argument("--alpha", dest="alphas", type=float, action="append", help="fractional index (repeatable)")
    else:
        parser.add_argument("--alpha", dest="alphas", type=lambda v: [float(v)], help="fractional index")


def add_dim(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dim", type=int, choices=(2, 3), help="ball dimension")


def add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="CSV path, '-' for stdout (default: results/<command>.csv)")


def add_truncation(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-max", dest="n_max", type=int, help="radial truncation N")
    parser.add_argument("--l-max", dest="l_max", type=int, help="harmonic truncation L")


def add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-r", dest="n_r", type=int, help="radial output samples")
    parser.add_argument("--n-theta", dest="n_theta", type=int, help="polar/colatitude output samples")
    parser.add_argument("--n-phi", dest="n_phi", type=int, help="azimuth output samples (3D)")


class Checks:
    """Collects the outcome of a command's internal validation checks."""

    def __init__(self, command: str) -> None:
        self.command = command
        self.failures: List[str] = []

    def expect(self, ok: bool, message: str) -> None:
        if not ok:
            logger.warning("%s: check failed: %s", self.command, message)
            self.failures.append(message)

    def finish(self) -> None:
        if self.failures:
            raise CheckFailedError(
                f"{len(self.failures)} check(s) failed",
                command=self.command,
                failures=self.failures,
            )
