from __future__ import annotations

from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclap.models.params import ProblemParams


PairId = Literal["eq1", "eq2", "eq3", "eq4"]
PAIR_IDS: tuple[PairId, ...] = ("eq1", "eq2", "eq3", "eq4")


class AnalyticPair(BaseModel):
    """Closed-form u and f = (-Delta)^{alpha/2} u on the unit ball.

    ``l_max`` and ``n_exact`` are the smallest truncation that represents the pair exactly.
    Both callables take Cartesian points with a trailing axis of length d.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: PairId
    params: ProblemParams
    constant: float
    l_max: int
    n_exact: int
    u: Callable[[np.ndarray], np.ndarray]
    f: Callable[[np.ndarray], np.ndarray]
