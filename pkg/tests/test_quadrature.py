import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from fraclap.core.errors import ConfigurationError, DomainError, RuleSizeError
from fraclap.models.params import JacobiParams
from fraclap.quadrature import (
    build_angular_rule,
    build_radial_rule,
    gauss_legendre_unit,
    integrate_radial,
    lanczos,
    sphere_rule,
    weighted_rule,
)
from fraclap.special_fn import jacobi_eval


def beta_oracle(j, exponent):
    return 0.5 * special.beta(0.5 * (j + 1), exponent + 1.0)


def test_radial_rule_examples():
    rule = build_radial_rule(1.0, 4)
    assert integrate_radial(rule, lambda r: np.ones_like(r)) == pytest.approx(math.pi / 4.0, rel=1e-12)
    assert integrate_radial(rule, lambda r: r**2) == pytest.approx(math.pi / 16.0, rel=1e-12)
    rule = build_radial_rule(0.5, 6)
    assert integrate_radial(rule, lambda r: r**4) == pytest.approx(beta_oracle(4, 0.25), rel=1e-12)


def test_integrate_zero_and_orthogonality():
    rule = build_radial_rule(1.0, 3)
    assert integrate_radial(rule, lambda r: np.zeros_like(r)) == 0.0
    p1 = JacobiParams(a=0.5, b=0.0, n=1)
    assert abs(integrate_radial(rule, lambda r: jacobi_eval(p1, 2.0 * r * r - 1.0) * r)) <= 1e-12


@pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 1.5, 1.9])
@pytest.mark.parametrize("k", [2, 4, 8, 16])
def test_rule_exactness(alpha, k):
    rule = build_radial_rule(alpha, k)
    r = np.asarray(rule.nodes)
    for j in range(2 * k):
        assert rule.weights @ r**j == pytest.approx(beta_oracle(j, 0.5 * alpha), rel=1e-10)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.9])
def test_rule_nodes_inside_and_weights_positive(alpha):
    rule = build_radial_rule(alpha, 12)
    assert np.all(rule.nodes > 0.0) and np.all(rule.nodes < 1.0)
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert np.all(rule.weights > 0.0)
    assert rule.alpha == pytest.approx(alpha)


def test_rules_of_neighbouring_size_agree():
    for k in (3, 6, 10):
        small, large = build_radial_rule(1.2, k), build_radial_rule(1.2, k + 1)
        for j in range(2 * k):
            assert small.weights @ small.nodes**j == pytest.approx(large.weights @ large.nodes**j, abs=1e-12)


def test_weighted_rule_other_exponents():
    for exponent in (-0.5, 0.0, 1.5):
        rule = weighted_rule(exponent, 5)
        for j in range(10):
            assert rule.weights @ rule.nodes**j == pytest.approx(beta_oracle(j, exponent), rel=1e-10)


def test_midpoint_seed_is_close():
    rule = build_radial_rule(1.0, 4, seed="midpoint")
    assert rule.seed == "midpoint"
    assert np.sum(rule.weights) == pytest.approx(math.pi / 4.0, abs=1e-5)


def test_rule_size_errors():
    with pytest.raises(RuleSizeError):
        build_radial_rule(1.0, 0)
    with pytest.raises(RuleSizeError):
        build_radial_rule(1.0, 10, fine_n=10)
    with pytest.raises(ConfigurationError):
        build_radial_rule(1.0, 4, seed="simpson")


@pytest.mark.parametrize("alpha", [0.0, 2.0, -1.0])
def test_radial_rule_rejects_alpha(alpha):
    with pytest.raises(DomainError):
        build_radial_rule(alpha, 4)


def test_lanczos_breakdown_reports_size():
    x = np.array([0.2, 0.2, 0.5, 0.5])
    w = np.array([1.0, 1.0, 1.0, 1.0])
    with pytest.raises(RuleSizeError) as info:
        lanczos(x, w, 3)
    assert info.value.context["achievable"] == 2


def test_gauss_legendre_unit():
    rule = gauss_legendre_unit(5)
    assert rule.weights @ rule.nodes**9 == pytest.approx(0.1, rel=1e-13)


def test_angular_rules():
    trap = build_angular_rule("trapezoid-periodic", 8)
    assert abs(trap.weights @ np.cos(3.0 * trap.nodes)) <= 1e-14
    assert np.sum(trap.weights) == pytest.approx(2.0 * math.pi)
    gl = build_angular_rule("gauss-legendre-mu", 3)
    assert gl.weights @ gl.nodes**4 == pytest.approx(0.4, rel=1e-13)
    with pytest.raises(RuleSizeError):
        build_angular_rule("trapezoid-periodic", 0)


@pytest.mark.parametrize("dim, area", [(2, 2.0 * math.pi), (3, 4.0 * math.pi)])
def test_sphere_rule_area(dim, area):
    rule = sphere_rule(dim, 3)
    assert np.sum(rule.weights) == pytest.approx(area, rel=1e-13)
    assert_allclose(np.linalg.norm(rule.directions, axis=-1), 1.0, atol=1e-15)
