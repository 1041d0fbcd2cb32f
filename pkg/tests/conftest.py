import numpy as np
import pytest

from fraclap.core.constants import RANDOM_SEED
from fraclap.models.params import ProblemParams


@pytest.fixture
def rng():
    return np.random.default_rng(RANDOM_SEED)


@pytest.fixture
def disk():
    return ProblemParams(alpha=1.0, dim=2)


@pytest.fixture
def ball():
    return ProblemParams(alpha=1.0, dim=3)


@pytest.fixture
def ball_points(rng):
    """Draws points with random directions and radii in [0.1, r_max]."""

    def draw(dim, count, r_max=0.9):
        directions = rng.standard_normal((count, dim))
        directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
        radii = rng.uniform(0.1, r_max, count)
        return radii[:, None] * directions

    return draw
