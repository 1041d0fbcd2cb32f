from __future__ import annotations

import argparse
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, model_validator

from fraclap.core.constants import SEED_RULES
from fraclap.core.errors import ConfigurationError
from fraclap.models.params import SUPPORTED_DIMS


class RunConfig(BaseModel):
    """Validated command-line flags of one ``fraclap`` invocation."""

    model_config = ConfigDict(frozen=True)

    command: str
    alphas: List[float]
    dim: int = 2
    n_max: int = 0
    l_max: int = 0
    k: int = 4
    fine_n: Optional[int] = None
    seed: str = "gauss-jacobi"
    dts: List[float] = []
    t_final: float = 1.0
    n_modes: int = 10
    s_values: List[int] = []
    n_values: List[int] = []
    n_r: int = 21
    n_theta: int = 8
    n_phi: int = 8
    r_min: float = 0.0
    expr: Optional[str] = None
    out: Optional[str] = None
    verbose: int = 0

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        for alpha in self.alphas:
            if not 0.0 < alpha < 2.0:
                raise ConfigurationError(f"--alpha must lie strictly inside (0, 2), got {alpha}", flag="--alpha")
        if self.dim not in SUPPORTED_DIMS:
            raise ConfigurationError(f"--dim must be 2 or 3, got {self.dim}", flag="--dim")
        for name in ("n_max", "l_max"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"--{name.replace('_', '-')} must be nonnegative", flag=name)
        if any(v < 0 for v in self.s_values + self.n_values):
            raise ConfigurationError("--s and --n values must be nonnegative")
        if self.k < 1:
            raise ConfigurationError(f"--k must be at least 1, got {self.k}", flag="--k")
        if self.fine_n is not None and self.fine_n <= self.k:
            raise ConfigurationError("--fine-n must exceed --k", flag="--fine-n")
        if self.seed not in SEED_RULES:
            raise ConfigurationError(f"--seed must be one of {', '.join(SEED_RULES)}", flag="--seed")
        if any(not dt > 0.0 for dt in self.dts):
            raise ConfigurationError("--dt values must be positive", flag="--dt")
        if self.t_final < 0.0:
            raise ConfigurationError("--t-final must be nonnegative", flag="--t-final")
        if self.n_modes < 1:
            raise ConfigurationError("--n-modes must be at least 1", flag="--n-modes")
        if min(self.n_r, self.n_theta, self.n_phi) < 1:
            raise ConfigurationError("grid sizes must be positive")
        if not 0.0 <= self.r_min < 1.0:
            raise ConfigurationError("--r-min must lie in [0, 1)", flag="--r-min")
        return self

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace, defaults: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """Flags given on the command line win over the command's ``defaults``."""

        values: Dict[str, Any] = dict(defaults or {})
        values.update(
            {key: value for key, value in vars(ns).items() if key in cls.model_fields and value is not None}
        )
        return cls(**values)

    def describe(self) -> str:
        """One-line record of every setting, written as the first CSV line."""

        fields = self.model_dump(exclude={"verbose"})
        return " ".join(f"{key}={value}" for key, value in fields.items())
