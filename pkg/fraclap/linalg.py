"""Symmetric tridiagonal eigendecomposition and dense LU solves.

Both kernels hand the work to LAPACK through scipy and add the error contracts the
solvers rely on.
"""

from __future__ import annotations

import logging
import re

import numpy as np
import scipy.linalg

from fraclap.core.errors import ConvergenceError, ShapeMismatchError, SingularMatrixError
from fraclap.models.linalg import DenseMatrix, EigenDecomp, LUFactors, SymTridiag


logger = logging.getLogger(__name__)

SINGULAR_PIVOT_TOL = 1e-300
LAPACK_INFO = re.compile(r"info\s*=\s*(\d+)")


def tridiag_eig(t: SymTridiag) -> EigenDecomp:
    """Full eigendecomposition of ``t``; eigenvalues ascending, eigenvectors in the columns."""

    if t.size == 1:
        return EigenDecomp(values=t.diag.copy(), vectors=np.ones((1, 1)))

    try:
        values, vectors = scipy.linalg.eigh_tridiagonal(t.diag, t.offdiag, lapack_driver="stev")
    except np.linalg.LinAlgError as exc:
        # LAPACK info = number of off-diagonal entries that did not converge to zero
        match = LAPACK_INFO.search(str(exc))
        raise ConvergenceError(
            "tridiagonal eigensolver did not converge",
            k=t.size,
            unconverged=int(match.group(1)) if match else None,
            lapack=str(exc),
        ) from exc

    order = np.argsort(values, kind="stable")
    return EigenDecomp(values=values[order], vectors=vectors[:, order])


def lu_factor(m: DenseMatrix) -> LUFactors:
    lu, piv = scipy.linalg.lu_factor(m.entries, check_finite=False)
    pivots = np.abs(np.diag(lu))
    bad = np.flatnonzero(pivots < SINGULAR_PIVOT_TOL)
    if bad.size:
        raise SingularMatrixError("matrix is numerically singular", pivot=int(bad[0]))
    return LUFactors(lu=lu, piv=piv)


def lu_apply(factors: LUFactors, rhs: np.ndarray) -> np.ndarray:
    """Solve with previously computed factors."""

    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape[0] != factors.lu.shape[0]:
        raise ShapeMismatchError(
            "right-hand side length does not match the matrix",
            n=int(factors.lu.shape[0]),
            rhs=int(rhs.shape[0]),
        )
    return scipy.linalg.lu_solve((factors.lu, factors.piv), rhs, check_finite=False)


def lu_solve(m: DenseMatrix, rhs: np.ndarray) -> np.ndarray:
    return lu_apply(lu_factor(m), rhs)
