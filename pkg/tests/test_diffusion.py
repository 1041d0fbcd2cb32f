import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fraclap import basis
from fraclap.core.errors import ConfigurationError, DimensionError, ShapeMismatchError
from fraclap.diffusion import (
    assemble,
    convergence_study,
    energy_norm,
    evolve,
    init_state,
    initial_profile,
    profile,
    solve_profile,
    step,
    step_count,
)
from fraclap.models.diffusion import DiffusionState
from fraclap.models.params import ProblemParams


def test_single_mode_system(ball):
    sys = assemble(ball, 1, 0.1)
    assert_allclose(sys.A, [[1.0 / 3.0]], rtol=1e-13)
    assert_allclose(sys.B, [math.pi / 16.0], rtol=1e-12)
    assert_allclose(sys.D, [2.0], rtol=1e-13)
    assert_allclose(sys.operator, [[1.0 + 0.1 * 32.0 / (3.0 * math.pi)]], rtol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_system_structure(alpha):
    params = ProblemParams(alpha=alpha, dim=3)
    sys = assemble(params, 10, 0.01)
    assert np.array_equal(sys.A, sys.A.T)
    np.linalg.cholesky(sys.A)
    assert np.all(sys.B > 0.0)
    assert np.all(sys.D >= basis.smallest_eigenvalue(params) * (1.0 - 1e-14))


def test_operator_tends_to_identity(ball):
    for dt in (1e-3, 1e-6):
        sys = assemble(ball, 6, dt)
        bound = dt * np.max(np.abs(sys.rates)) * (1.0 + 1e-12) + 4.0 * np.finfo(float).eps
        assert np.max(np.abs(sys.operator - np.eye(6))) <= bound


def test_initial_states(ball):
    state = init_state(ball, 10, initial_profile(ball))
    assert state.t == 0.0
    assert state.c[0] == pytest.approx(math.sqrt(4.0 * math.pi), rel=1e-12)
    assert np.max(np.abs(state.c[1:])) <= 1e-12

    assert np.all(init_state(ball, 5, lambda r: np.zeros_like(r)).c == 0.0)

    state = init_state(ball, 5, lambda r: ball.weight(r) * (1.0 - r * r))
    assert np.max(np.abs(state.c[2:])) <= 1e-12
    assert np.min(np.abs(state.c[:2])) > 1e-3


def test_scalar_step(ball):
    sys = assemble(ball, 1, 0.1)
    nxt = step(sys, DiffusionState(c=[1.0]))
    assert nxt.c[0] == pytest.approx(1.0 / (1.0 + 0.1 * 32.0 / (3.0 * math.pi)), rel=1e-12)
    assert nxt.t == pytest.approx(0.1)
    assert step(sys, DiffusionState(c=[0.0])).c[0] == 0.0


def test_two_steps_invert_the_squared_operator(ball):
    sys = assemble(ball, 6, 0.05)
    c0 = init_state(ball, 6, lambda r: ball.weight(r) * (1.0 + r * r)).c
    c2 = step(sys, step(sys, DiffusionState(c=c0))).c
    expected = np.linalg.solve(sys.operator @ sys.operator, c0)
    assert np.max(np.abs(c2 - expected)) <= 1e-12 * np.max(np.abs(c0))


def test_state_size_mismatch(ball):
    with pytest.raises(ShapeMismatchError):
        step(assemble(ball, 3, 0.1), DiffusionState(c=np.ones(2)))


def test_evolve_zero_time(ball):
    sys = assemble(ball, 4, 0.1)
    s0 = init_state(ball, 4, initial_profile(ball))
    state, trajectory = evolve(sys, s0, 0.0)
    assert np.array_equal(state.c, s0.c)
    assert len(trajectory.times) == 1


def test_step_count():
    assert step_count(0.25, 1.0) == 4
    assert step_count(2.0**-12, 1.0) == 4096
    with pytest.raises(ConfigurationError):
        step_count(0.3, 1.0)
    with pytest.raises(ConfigurationError):
        step_count(0.1, -1.0)


def test_assemble_rejects_bad_input(disk, ball):
    with pytest.raises(DimensionError):
        assemble(disk, 3, 0.1)
    with pytest.raises(ConfigurationError):
        assemble(ball, 0, 0.1)
    with pytest.raises(ConfigurationError):
        assemble(ball, 3, 0.0)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("dt", [1e-3, 1e-1, 1.0, 10.0])
def test_norms_never_grow(alpha, dt):
    params = ProblemParams(alpha=alpha, dim=3)
    sys = assemble(params, 10, dt)
    state = init_state(params, 10, initial_profile(params))
    _, trajectory = evolve(sys, state, 100 * dt)
    norms = np.asarray(trajectory.norms)
    energies = np.asarray(trajectory.energies)
    assert norms[0] == pytest.approx(np.linalg.norm(state.c))
    assert energies[0] == pytest.approx(energy_norm(sys, state.c))
    assert np.all(np.diff(norms) <= 1e-12 * norms[0])
    assert np.all(np.diff(energies) <= 1e-12 * energies[0])


def test_profile_vanishes_on_the_boundary(ball):
    radii, values = solve_profile(ball, 0.1, t_final=0.5, n_modes=6, radii=np.array([0.0, 0.5, 1.0]))
    assert values[-1] == 0.0
    assert np.all(values[:-1] > 0.0)


def test_initial_profile_is_reproduced(ball):
    sys = assemble(ball, 4, 0.1)
    r = np.linspace(0.0, 1.0, 11)
    values = profile(sys, init_state(ball, 4, initial_profile(ball)), r)
    assert_allclose(values, ball.weight(r), atol=1e-12)


def test_reference_step_has_zero_error():
    study = convergence_study(1.0, [2.0**-6], t_final=0.25, n_modes=4, dt_ref=2.0**-6)
    assert study.errors[0] == 0.0
    assert math.isnan(study.slope)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_first_order_convergence(alpha):
    study = convergence_study(alpha, [2.0**-k for k in range(4, 10)])
    assert 0.85 <= study.slope <= 1.15
    assert np.all(np.diff(study.errors) < 0.0)
