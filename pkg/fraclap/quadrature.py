"""Gaussian rules for the weight (1 - r^2)^{alpha/2} on [0, 1] and the angular rules.

A radial rule is obtained by compressing a large seed rule: a Lanczos process on the
diagonal matrix of seed nodes, started from the square roots of the seed weights, yields
the Jacobi matrix of the weight; its eigenvalues are the nodes and the squared first
eigenvector components (times the total mass) are the weights. The K-point rule reproduces
the seed rule exactly on polynomials of degree 2K - 1.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss

from fraclap.core.constants import DEFAULT_FINE_N, DEFAULT_SEED_RULE, LANCZOS_BREAKDOWN_TOL, SEED_RULES
from fraclap.core.errors import ConfigurationError, DomainError, RuleSizeError
from fraclap.linalg import tridiag_eig
from fraclap.models.linalg import SymTridiag
from fraclap.models.rules import AngularKind, AngularRule, QuadratureRule, SphereRule


logger = logging.getLogger(__name__)


def midpoint_seed(exponent: float, fine_n: int) -> tuple[np.ndarray, np.ndarray]:
    x = (np.arange(1, fine_n + 1) - 0.5) / fine_n
    w = (1.0 - x * x) ** exponent / fine_n
    return x, w


def _jacobi_matrix(a: float, b: float, k: int) -> SymTridiag:
    """Recurrence matrix of the monic Jacobi polynomials for (1 - t)^a (1 + t)^b on [-1, 1]."""

    i = np.arange(k, dtype=float)
    ab = a + b
    diag = np.empty(k)
    diag[0] = (b - a) / (ab + 2.0)
    if k > 1:
        ii = i[1:]
        diag[1:] = (b * b - a * a) / ((2.0 * ii + ab) * (2.0 * ii + ab + 2.0))
    j = np.arange(1, k, dtype=float)
    s = 2.0 * j + ab
    offdiag = np.sqrt(4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s * s - 1.0)))
    return SymTridiag(diag=diag, offdiag=offdiag)


def gauss_jacobi_seed(exponent: float, fine_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Golub-Welsch rule for (1 - r)^exponent on [0, 1], with (1 + r)^exponent folded into the weights."""

    eig = tridiag_eig(_jacobi_matrix(exponent, 0.0, fine_n))
    r = 0.5 * (eig.values + 1.0)
    # Total mass of (1 - t)^a on [-1, 1] is 2^{a+1}/(a+1); the map to [0, 1] contributes 2^{-a-1}.
    w = eig.vectors[0, :] ** 2 * (1.0 + r) ** exponent / (exponent + 1.0)
    return r, w


_SEEDS: dict[str, Callable[[float, int], tuple[np.ndarray, np.ndarray]]] = {
    "gauss-jacobi": gauss_jacobi_seed,
    "midpoint": midpoint_seed,
}


def lanczos(x: np.ndarray, w: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray, float]:
    """k steps of Lanczos on diag(x) from the start vector sqrt(w), fully reorthogonalized.

    Returns the diagonal and off-diagonal of the tridiagonal matrix and the squared norm of
    the start vector.
    """

    q = np.sqrt(w)
    mass = float(q @ q)
    q = q / np.sqrt(mass)

    basis = np.zeros((k, x.size))
    alphas = np.zeros(k)
    betas = np.zeros(max(k - 1, 0))
    for j in range(k):
        basis[j] = q
        v = x * q
        alphas[j] = q @ v
        v -= alphas[j] * q
        if j > 0:
            v -= betas[j - 1] * basis[j - 1]
        # two passes of classical Gram-Schmidt keep the basis orthogonal to round-off
        for _ in range(2):
            v -= basis[: j + 1].T @ (basis[: j + 1] @ v)
        if j == k - 1:
            break
        beta = float(np.linalg.norm(v))
        if beta < LANCZOS_BREAKDOWN_TOL:
            logger.debug("lanczos breakdown at step %d (beta=%.3e)", j + 1, beta)
            raise RuleSizeError(
                f"Lanczos process broke down after {j + 1} steps; at most {j + 1} nodes are available",
                requested=k,
                achievable=j + 1,
            )
        betas[j] = beta
        q = v / beta
    return alphas, betas, mass


def _check_seed(seed: str, k: int, fine_n: int | None) -> int:
    if seed not in SEED_RULES:
        raise ConfigurationError(f"unknown seed rule {seed!r}", choices=list(SEED_RULES))
    fine_n = DEFAULT_FINE_N[seed] if fine_n is None else int(fine_n)
    if k < 1:
        raise RuleSizeError("a rule needs at least one node", requested=k)
    if k >= fine_n:
        raise RuleSizeError("rule size must stay below the seed size", requested=k, fine_n=fine_n)
    return fine_n


@lru_cache(maxsize=256)
def _weighted_rule_cached(exponent: float, k: int, seed: str, fine_n: int) -> QuadratureRule:
    logger.debug("building rule exponent=%g k=%d seed=%s fine_n=%d", exponent, k, seed, fine_n)
    x, w = _SEEDS[seed](exponent, fine_n)
    diag, offdiag, mass = lanczos(x, w, k)
    eig = tridiag_eig(SymTridiag(diag=diag, offdiag=offdiag))
    weights = mass * eig.vectors[0, :] ** 2
    return QuadratureRule(nodes=eig.values, weights=weights, exponent=exponent, seed=seed, fine_n=fine_n)


def weighted_rule(
    exponent: float,
    k: int,
    fine_n: int | None = None,
    seed: str = DEFAULT_SEED_RULE,
) -> QuadratureRule:
    """K-point rule for (1 - r^2)^exponent on [0, 1], exponent > -1."""

    if not exponent > -1.0:
        raise DomainError(f"weight exponent must exceed -1, got {exponent}")
    fine_n = _check_seed(seed, k, fine_n)
    return _weighted_rule_cached(float(exponent), int(k), seed, fine_n)


def build_radial_rule(
    alpha: float,
    k: int,
    fine_n: int | None = None,
    seed: str = DEFAULT_SEED_RULE,
) -> QuadratureRule:
    if not 0.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie strictly inside (0, 2), got {alpha}", alpha=alpha)
    return weighted_rule(0.5 * alpha, k, fine_n=fine_n, seed=seed)


@lru_cache(maxsize=64)
def gauss_legendre_unit(k: int) -> QuadratureRule:
    """Plain Gauss-Legendre rule mapped to [0, 1]."""

    if k < 1:
        raise RuleSizeError("a rule needs at least one node", requested=k)
    t, w = leggauss(k)
    return QuadratureRule(nodes=0.5 * (t + 1.0), weights=0.5 * w, exponent=0.0, seed="gauss-legendre", fine_n=k)


def integrate_radial(rule: QuadratureRule, f: Callable[[np.ndarray], np.ndarray]) -> float:
    values = np.broadcast_to(np.asarray(f(np.asarray(rule.nodes)), dtype=float), rule.nodes.shape)
    return float(values @ rule.weights)


def build_angular_rule(kind: AngularKind, m: int) -> AngularRule:
    if m < 1:
        raise RuleSizeError("an angular rule needs at least one node", requested=m)
    if kind == "trapezoid-periodic":
        nodes = 2.0 * np.pi * np.arange(m) / m
        weights = np.full(m, 2.0 * np.pi / m)
    elif kind == "gauss-legendre-mu":
        nodes, weights = leggauss(m)
    else:
        raise ConfigurationError(f"unknown angular rule {kind!r}")
    return AngularRule(kind=kind, nodes=nodes, weights=weights)


def angular_sizes(dim: int, l_max: int) -> tuple[int, ...]:
    """Node counts that integrate products of two harmonics of degree <= l_max exactly."""

    if dim == 2:
        return (max(64, 4 * l_max + 4),)
    return (l_max + 2, 2 * l_max + 4)


@lru_cache(maxsize=64)
def sphere_rule(dim: int, l_max: int) -> SphereRule:
    sizes = angular_sizes(dim, l_max)
    if dim == 2:
        rule = build_angular_rule("trapezoid-periodic", sizes[0])
        return SphereRule(dim=2, angles=np.asarray(rule.nodes)[:, None], weights=rule.weights)

    mu = build_angular_rule("gauss-legendre-mu", sizes[0])
    az = build_angular_rule("trapezoid-periodic", sizes[1])
    theta, phi = np.meshgrid(np.arccos(mu.nodes), az.nodes, indexing="ij")
    weights = np.outer(mu.weights, az.weights)
    return SphereRule(dim=3, angles=np.stack([theta.ravel(), phi.ravel()], axis=-1), weights=weights.ravel())
