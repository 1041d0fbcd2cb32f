import math

import numpy as np
import pytest
import scipy.linalg
from numpy.testing import assert_allclose

from fraclap.core.errors import ConvergenceError, InputError, ShapeMismatchError, SingularMatrixError
from fraclap.linalg import lu_apply, lu_factor, lu_solve, tridiag_eig
from fraclap.models.linalg import DenseMatrix, SymTridiag


def test_eig_one_by_one():
    eig = tridiag_eig(SymTridiag(diag=[2.0], offdiag=[]))
    assert_allclose(eig.values, [2.0])
    assert_allclose(eig.vectors, [[1.0]])


def test_eig_exchange_matrix():
    eig = tridiag_eig(SymTridiag(diag=[0.0, 0.0], offdiag=[1.0]))
    assert_allclose(eig.values, [-1.0, 1.0], atol=1e-15)
    assert_allclose(np.abs(eig.vectors), np.full((2, 2), 1.0 / math.sqrt(2.0)), atol=1e-15)
    # the eigenvector of -1 has components of opposite sign
    assert eig.vectors[0, 0] * eig.vectors[1, 0] < 0.0


def test_eig_toeplitz():
    eig = tridiag_eig(SymTridiag(diag=[2.0, 2.0, 2.0], offdiag=[1.0, 1.0]))
    assert_allclose(eig.values, [2.0 - math.sqrt(2.0), 2.0, 2.0 + math.sqrt(2.0)], atol=1e-14)


def _determinant(diag, offdiag):
    prev, cur = 1.0, diag[0]
    for k in range(1, diag.size):
        prev, cur = cur, diag[k] * cur - offdiag[k - 1] ** 2 * prev
    return cur


@pytest.mark.parametrize("k", [5, 20, 50])
def test_eig_invariants(rng, k):
    diag = 4.0 + rng.uniform(0.0, 1.0, k)
    offdiag = rng.uniform(-1.0, 1.0, k - 1)
    t = SymTridiag(diag=diag, offdiag=offdiag)
    eig = tridiag_eig(t)

    assert np.all(np.diff(eig.values) >= 0.0)
    assert np.sum(eig.values) == pytest.approx(np.sum(diag), rel=1e-12)
    assert np.prod(eig.values) == pytest.approx(_determinant(diag, offdiag), rel=1e-8)
    assert_allclose(eig.vectors.T @ eig.vectors, np.eye(k), atol=1e-12)
    residual = t.dense() @ eig.vectors - eig.vectors * eig.values[None, :]
    assert np.max(np.abs(residual)) <= 1e-10 * np.max(np.abs(eig.values))


def test_tridiag_validation():
    with pytest.raises(ShapeMismatchError):
        SymTridiag(diag=[1.0, 2.0], offdiag=[])
    with pytest.raises(InputError):
        SymTridiag(diag=[1.0, np.nan], offdiag=[0.0])


@pytest.mark.parametrize(
    "message, unconverged",
    [("stev (eigh_tridiagonal) did not converge (LAPACK info=3)", 3), ("did not converge", None)],
)
def test_eig_failure_reports_lapack_info(monkeypatch, message, unconverged):
    def fail(*args, **kwargs):
        raise np.linalg.LinAlgError(message)

    monkeypatch.setattr(scipy.linalg, "eigh_tridiagonal", fail)
    with pytest.raises(ConvergenceError) as info:
        tridiag_eig(SymTridiag(diag=[1.0, 2.0, 3.0], offdiag=[1.0, 1.0]))
    assert info.value.context == {"k": 3, "unconverged": unconverged, "lapack": message}


@pytest.mark.parametrize(
    "matrix, rhs, expected",
    [
        (np.eye(3), [1.0, -2.0, 3.0], [1.0, -2.0, 3.0]),
        ([[2.0, 0.0], [0.0, 4.0]], [2.0, 8.0], [1.0, 2.0]),
        ([[1.0, 2.0], [3.0, 4.0]], [5.0, 11.0], [1.0, 2.0]),
    ],
)
def test_lu_examples(matrix, rhs, expected):
    assert_allclose(lu_solve(DenseMatrix(entries=matrix), np.asarray(rhs)), expected, atol=1e-14)


@pytest.mark.parametrize("n", [1, 8, 64])
def test_lu_residual(rng, n):
    matrix = n * np.eye(n) + rng.standard_normal((n, n))
    rhs = rng.standard_normal(n)
    x = lu_solve(DenseMatrix(entries=matrix), rhs)
    assert np.max(np.abs(matrix @ x - rhs)) <= 1e-10 * np.max(np.abs(rhs))


def test_lu_factors_are_reusable(rng):
    matrix = 4.0 * np.eye(4) + rng.standard_normal((4, 4))
    factors = lu_factor(DenseMatrix(entries=matrix))
    for _ in range(3):
        rhs = rng.standard_normal(4)
        assert_allclose(matrix @ lu_apply(factors, rhs), rhs, atol=1e-12)


def test_lu_singular():
    with pytest.raises(SingularMatrixError):
        lu_factor(DenseMatrix(entries=[[1.0, 2.0], [2.0, 4.0]]))


def test_lu_shape_errors():
    with pytest.raises(ShapeMismatchError):
        DenseMatrix(entries=np.ones((2, 3)))
    factors = lu_factor(DenseMatrix(entries=np.eye(2)))
    with pytest.raises(ShapeMismatchError):
        lu_apply(factors, np.ones(3))
