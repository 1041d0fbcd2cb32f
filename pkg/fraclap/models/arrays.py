from __future__ import annotations

from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator


def _as_float_array(value: Any) -> np.ndarray:
    return np.asarray(value, dtype=float)


FloatArray = Annotated[np.ndarray, BeforeValidator(_as_float_array)]
