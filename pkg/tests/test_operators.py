import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fraclap.core.errors import UnknownPairError
from fraclap.experiments import error_grid
from fraclap.models.fields import EvalGrid
from fraclap.models.pairs import PAIR_IDS
from fraclap.models.params import ProblemParams
from fraclap.operators import analytic_pair, apply_fractional_laplacian, radial_family_u, solve_poisson
from fraclap.transform import sup_error


def test_apply_to_the_weight(disk):
    grid = EvalGrid.polar(21, 8)
    values = apply_fractional_laplacian(disk, analytic_pair("eq1", disk).u, 0, 0, grid)
    assert sup_error(values, np.full(grid.shape, math.pi / 2.0)) <= 1e-9


def test_apply_to_weighted_coordinate():
    params = ProblemParams(alpha=1.0, dim=3)
    pair = analytic_pair("eq3", params)
    grid = EvalGrid.spherical(11, 5, 6)
    values = apply_fractional_laplacian(params, pair.u, 0, 1, grid)
    assert sup_error(values, pair.constant * grid.points[..., 2]) <= 1e-9


def test_apply_under_resolved():
    params = ProblemParams(alpha=1.0, dim=2)
    u = radial_family_u(params, 1)
    grid = error_grid(2)
    reference = apply_fractional_laplacian(params, u, 5, 0, grid)
    error = sup_error(apply_fractional_laplacian(params, u, 0, 0, grid), reference)
    assert error == pytest.approx(2.1206, abs=1e-3)


def test_solve_constant_rhs(disk):
    grid = EvalGrid.polar(21, 8)
    values = solve_poisson(disk, lambda x: np.ones(x.shape[:-1]), 0, 0, grid)
    assert sup_error(values, disk.weight(grid.radii)[:, None] / (math.pi / 2.0) * np.ones(grid.shape)) <= 1e-9


def test_solve_quadratic_pair(disk):
    pair = analytic_pair("eq2", disk)
    grid = error_grid(2, r_min=0.5)
    exact = pair.u(grid.points)
    assert sup_error(solve_poisson(disk, pair.f, 0, 0, grid), exact) == pytest.approx(0.17877, abs=1e-3)
    assert sup_error(solve_poisson(disk, pair.f, 1, 0, grid), exact) <= 1e-9


@pytest.mark.parametrize("pair_id", PAIR_IDS)
@pytest.mark.parametrize("dim", [2, 3])
@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_pairs_are_inverted_exactly(pair_id, dim, alpha):
    params = ProblemParams(alpha=alpha, dim=dim)
    pair = analytic_pair(pair_id, params)
    grid = EvalGrid.default(dim, 21, 8, 6)
    n = pair.n_exact
    assert sup_error(solve_poisson(params, pair.f, n, pair.l_max, grid), pair.u(grid.points)) <= 1e-9
    assert sup_error(apply_fractional_laplacian(params, pair.u, n, pair.l_max, grid), pair.f(grid.points)) <= 1e-9


def test_solution_vanishes_on_the_boundary(ball):
    grid = EvalGrid.spherical(5, 3, 4)
    values = solve_poisson(ball, lambda x: 1.0 + x[..., 0] ** 2, 2, 2, grid)
    assert np.all(values[-1] == 0.0)


def test_pair_constants():
    assert analytic_pair("eq1", ProblemParams(alpha=1.0, dim=3)).constant == pytest.approx(2.0)
    assert analytic_pair("eq2", ProblemParams(alpha=1.0, dim=2)).constant == pytest.approx(3.0 * math.pi / 4.0)
    expected = 2.0 * math.gamma(2.5) ** 2 / math.gamma(2.0)
    pair = analytic_pair("eq4", ProblemParams(alpha=1.0, dim=2))
    assert pair.constant == pytest.approx(expected)
    point = np.array([0.3, 0.4])
    assert pair.f(point) == pytest.approx(expected * (1.0 - 1.25 * 0.25) * 0.4)


def test_pair_metadata():
    params = ProblemParams(alpha=0.7, dim=3)
    assert [(analytic_pair(p, params).l_max, analytic_pair(p, params).n_exact) for p in PAIR_IDS] == [
        (0, 0),
        (0, 1),
        (1, 0),
        (1, 1),
    ]


def test_unknown_pair(disk):
    with pytest.raises(UnknownPairError):
        analytic_pair("eq5", disk)


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_truncation_threshold(s):
    params = ProblemParams(alpha=1.0, dim=2)
    u = radial_family_u(params, s)
    grid = EvalGrid.polar(50, 4)
    reference = apply_fractional_laplacian(params, u, 5, 0, grid)
    for n in range(5):
        error = sup_error(apply_fractional_laplacian(params, u, n, 0, grid), reference)
        if n >= s:
            assert error <= 1e-8
        else:
            assert error > 1e-3


def test_family_is_zero_outside():
    params = ProblemParams(alpha=0.5, dim=2)
    assert_allclose(radial_family_u(params, 2)(np.array([[1.0, 0.0], [0.0, 1.3]])), 0.0)
