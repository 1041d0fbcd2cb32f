from __future__ import annotations

import os
from pathlib import Path


BASE_DIR = Path(__file__).resolve().parent.parent
ROOT_DIR = BASE_DIR.parent
RESULTS_DIR = Path(os.getenv("FRACLAP_RESULTS_DIR", "") or ROOT_DIR / "results")


def default_output_path(command: str) -> Path:
    """CSV path used when ``--out`` is not given; the results directory is created on demand."""

    RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    return RESULTS_DIR / f"{command}.csv"
