from __future__ import annotations

import csv
import io
import logging
import sys
from pathlib import Path
from typing import Any, Sequence

from pydantic import BaseModel

from fraclap.core.paths import default_output_path
from fraclap.models.config import RunConfig


logger = logging.getLogger(__name__)

STDOUT = "-"


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


def render_csv(rows: Sequence[BaseModel], comment: str, row_type: type[BaseModel]) -> str:
    """Comment line, header, then one line per row; floats with 17 significant digits."""

    buffer = io.StringIO()
    buffer.write(f"# {comment}\n")
    names = list(row_type.model_fields)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(names)
    for row in rows:
        dumped = row.model_dump()
        writer.writerow([format_value(dumped[name]) for name in names])
    return buffer.getvalue()


def output_path(config: RunConfig, suffix: str = "") -> str | Path:
    if config.out == STDOUT:
        return STDOUT
    base = Path(config.out) if config.out else default_output_path(config.command)
    if suffix:
        base = base.with_name(f"{base.stem}_{suffix}{base.suffix or '.csv'}")
    return base


def write_rows(
    rows: Sequence[BaseModel], row_type: type[BaseModel], config: RunConfig, suffix: str = ""
) -> str | Path:
    target = output_path(config, suffix)
    text = render_csv(rows, f"fraclap {config.describe()}", row_type)
    if target == STDOUT:
        sys.stdout.write(text)
    else:
        Path(target).parent.mkdir(parents=True, exist_ok=True)
        Path(target).write_text(text, encoding="utf-8")
        logger.info("wrote %d rows to %s", len(rows), target)
    return target
