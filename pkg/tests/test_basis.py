import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from fraclap import basis
from fraclap.core.errors import BasisIndexError, DimensionError
from fraclap.models.params import BasisIndex, ProblemParams
from fraclap.transform import ball_quadrature


@pytest.mark.parametrize("dim, l, expected", [(2, 3, 2), (3, 2, 5), (2, 0, 1), (3, 0, 1)])
def test_multiplicity(dim, l, expected):
    assert basis.multiplicity(dim, l) == expected


def test_multiplicity_rejects_dimension():
    with pytest.raises(DimensionError):
        basis.multiplicity(4, 1)


def test_row_layout():
    assert basis.row_layout(2, 2) == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1)]
    assert len(basis.row_layout(3, 3)) == 16
    assert basis.row_of(3, 2, -2) == 4
    assert basis.row_of(2, 2, 1) == 4


@pytest.mark.parametrize(
    "alpha, dim, expected",
    [
        (1.0, 2, math.pi / 2.0),
        (1.0, 3, 2.0),
        (0.5, 2, math.sqrt(2.0) * special.gamma(1.25) ** 2),
    ],
)
def test_eigenvalue_examples(alpha, dim, expected):
    assert basis.eigenvalue(ProblemParams(alpha=alpha, dim=dim), 0, 0) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 1.5, 1.9])
@pytest.mark.parametrize("dim", [2, 3])
def test_eigenvalues_bounded_below_and_increasing(alpha, dim):
    params = ProblemParams(alpha=alpha, dim=dim)
    table = basis.eigenvalue(params, np.arange(21)[:, None], np.arange(21)[None, :])
    assert basis.smallest_eigenvalue(params) > 0.0
    assert np.all(table >= basis.smallest_eigenvalue(params))
    assert np.all(np.diff(table, axis=0) > 0.0)
    assert np.all(np.diff(table, axis=1) > 0.0)


def test_eigenvalue_matches_gamma_formula():
    params = ProblemParams(alpha=0.7, dim=3)
    n, l = 4, 2
    delta = 3 + 2 * l
    expected = (
        2.0**0.7
        * special.gamma(1.35 + n)
        * special.gamma((delta + 0.7) / 2.0 + n)
        / (math.factorial(n) * special.gamma(delta / 2.0 + n))
    )
    assert basis.eigenvalue(params, n, l) == pytest.approx(expected, rel=1e-12)


def test_basis_eval_examples(disk, ball):
    assert basis.basis_eval_P(disk, BasisIndex(l=0, m=0, n=0), np.array([0.2, 0.1])) == pytest.approx(1.0)
    assert basis.basis_eval_P(ball, BasisIndex(l=0, m=0, n=0), np.array([0.2, 0.1, 0.0])) == pytest.approx(
        1.0 / math.sqrt(4.0 * math.pi)
    )
    assert basis.basis_eval_P(disk, BasisIndex(l=1, m=0, n=0), np.array([0.5, 0.0])) == pytest.approx(0.5)
    r = 0.7
    assert basis.basis_eval_P(disk, BasisIndex(l=0, m=0, n=1), np.array([r, 0.0])) == pytest.approx(
        special.eval_jacobi(1, 0.5, 0.0, 2.0 * r * r - 1.0)
    )


def test_weighted_basis_vanishes_outside(disk):
    idx = BasisIndex(l=0, m=0, n=0)
    assert basis.basis_eval_p(disk, idx, np.array([1.0, 0.0])) == 0.0
    assert basis.basis_eval_p(disk, idx, np.array([0.0, 1.5])) == 0.0
    assert basis.basis_eval_p(disk, idx, np.array([0.6, 0.0])) == pytest.approx(0.8)


def test_weighted_over_polynomial_is_the_weight(ball_points):
    params = ProblemParams(alpha=1.3, dim=3)
    points = ball_points(3, 10)
    idx = BasisIndex(l=2, m=1, n=2)
    ratio = basis.basis_eval_p(params, idx, points) / basis.basis_eval_P(params, idx, points)
    assert_allclose(ratio, params.weight(np.linalg.norm(points, axis=-1)), rtol=1e-12)


def test_invalid_indices(disk, ball):
    with pytest.raises(BasisIndexError):
        BasisIndex(l=-1)
    with pytest.raises(BasisIndexError):
        basis.validate_index(disk, BasisIndex(l=0, m=1))
    with pytest.raises(BasisIndexError):
        basis.validate_index(ball, BasisIndex(l=2, m=3))
    with pytest.raises(BasisIndexError):
        basis.eigenvalue(disk, -1, 0)


def test_norm_examples(disk, ball):
    assert basis.norm_squared(disk, 0, 0) == pytest.approx(2.0 * math.pi / 3.0, rel=1e-12)
    assert basis.norm_squared(disk, 1, 0) == pytest.approx(2.0 * math.pi / 15.0, rel=1e-12)
    assert basis.norm_squared(ball, 0, 0) == pytest.approx(math.pi / 16.0, rel=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.5])
@pytest.mark.parametrize("dim", [2, 3])
def test_norms_match_closed_form(alpha, dim):
    params = ProblemParams(alpha=alpha, dim=dim)
    for l in range(5):
        for n in range(5):
            assert basis.norm_squared(params, l, n) == pytest.approx(
                basis.norm_squared_analytic(params, l, n), rel=1e-9
            )


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("dim", [2, 3])
def test_basis_is_orthogonal(alpha, dim):
    params = ProblemParams(alpha=alpha, dim=dim)
    l_max = n_max = 4
    points, weights = ball_quadrature(dim, params.a, n_max, l_max)

    indices = [BasisIndex(l=l, m=m, n=n) for l, m in basis.row_layout(dim, l_max) for n in range(n_max + 1)]
    values = np.stack([basis.basis_eval_P(params, idx, points).ravel() for idx in indices])
    gram = (values * weights.ravel()) @ values.T

    diag = np.sqrt(np.diag(gram))
    normalized = gram / np.outer(diag, diag)
    assert np.max(np.abs(normalized - np.eye(len(indices)))) <= 1e-9
    expected = [basis.norm_squared(params, idx.l, idx.n) for idx in indices]
    assert_allclose(np.diag(gram), expected, rtol=1e-10)


@pytest.mark.parametrize("dim, expected", [(2, 1.0 / (2.0 * math.pi)), (3, 1.0 / math.pi**2)])
def test_operator_constant(dim, expected):
    assert basis.operator_constant(ProblemParams(alpha=1.0, dim=dim)) == pytest.approx(expected, rel=1e-13)


def test_smallest_eigenvalue_can_fall_below_two_to_alpha(disk):
    assert basis.smallest_eigenvalue(disk) == pytest.approx(math.pi / 2.0)
    assert basis.smallest_eigenvalue(disk) < 2.0**disk.alpha
