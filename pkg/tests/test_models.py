import math

import numpy as np
import pytest

from odeflow import models
from odeflow.distributed import DistributedState, decompose, gather_to_root
from odeflow.errors import ContractError
from odeflow.state_algebra import StateVector, new_like
from odeflow.steppers import integrate_const, make_stepper


def sv(values):
    return StateVector([np.asarray(values, dtype=float)])


# -- exponential family ------------------------------------------------------------------

@pytest.mark.parametrize("value", [0.0, 2.5])
def test_exponential_rhs_is_identity(value):
    u = sv([value])
    dudt = new_like(u)
    models.ExponentialSystem()(0.0, u, dudt)
    assert dudt.data[0, 0] == value


def test_exponential_closed_form_points():
    assert models.exponential_solution(0.5, 0.5, 0.0) == 0.25
    assert models.exponential_solution(0.0, 0.7, 3.0) == 0.0
    assert models.exponential_solution(1.0, 1.0, 5.0) == pytest.approx(148.4131591025766, rel=1e-15)


def test_exponential_exact_grid():
    part = models.exponential_partition(4)
    field = gather_to_root(models.exponential_exact(0.0, part))[0, :, :, 0]
    assert field[2, 2] == 0.25  # point (0.5, 0.5)
    assert not field[0].any() and not field[:, 0].any()


def test_exponential_trajectory_from_minus_five():
    part = models.exponential_partition(4, workers=2)
    u = models.exponential_exact(-5.0, part)
    integrate_const(make_stepper("fehlberg78"), models.ExponentialSystem(), u, -5.0, 5.0, 0.125)
    l_inf, _ = models.error_norms(u, models.exponential_exact(5.0, part))
    assert l_inf < 1e-12 * math.exp(5.0)


# -- sigmoid -----------------------------------------------------------------------------

@pytest.mark.parametrize("u, expected", [(0.0, 0.0), (1.0, 0.0), (0.5, 0.25)])
def test_sigmoid_rhs(u, expected):
    state = sv([u])
    dudt = new_like(state)
    models.SigmoidSystem()(0.0, state, dudt)
    assert dudt.data[0, 0] == expected


def test_sigmoid_exact():
    assert models.sigmoid_exact(-5.0) == pytest.approx(0.0066928509242848554, rel=1e-15)
    assert models.sigmoid_exact(0.0) == 0.5


# -- Gray-Scott --------------------------------------------------------------------------

def gs_eval(field, workers=1, length=2.5):
    n = field.shape[1]
    part = models.grayscott_partition(n, workers, length)
    u = DistributedState.from_global(part, field)
    dudt = new_like(u)
    models.GrayScottSystem()(0.0, u, dudt)
    return gather_to_root(dudt)


def test_steady_state_is_exactly_zero():
    field = np.stack([np.ones((8, 8, 8)), np.zeros((8, 8, 8))])
    assert not gs_eval(field).any()


def test_homogeneous_field_reaction_only():
    c0, c1 = 0.4, 0.3
    field = np.stack([np.full((6, 6, 6), c0), np.full((6, 6, 6), c1)])
    d = gs_eval(field, workers=2)
    F, K = 0.014, 0.053
    np.testing.assert_allclose(d[0], -c0 * c1 * c1 + F * (1 - c0), rtol=1e-14)
    np.testing.assert_allclose(d[1], c0 * c1 * c1 - (F + K) * c1, rtol=1e-14)


def test_single_voxel_stencil():
    n = 8
    h = 2.5 / n
    field = np.stack([np.ones((n, n, n)), np.zeros((n, n, n))])
    field[0, 3, 4, 5] = 1.5
    d = gs_eval(field, workers=2)
    lap_center = (6 * 1.0 - 6 * 1.5) / h ** 2
    lap_neighbor = (1.5 - 1.0) / h ** 2
    F = 0.014
    assert d[0, 3, 4, 5] == pytest.approx(2e-4 * lap_center + F * (1 - 1.5), rel=1e-13)
    assert d[0, 2, 4, 5] == pytest.approx(2e-4 * lap_neighbor, rel=1e-12)
    assert d[0, 3, 4, 7] == 0.0
    assert not d[1].any()


def test_laplacian_second_order():
    errs = []
    for n in (16, 32):
        h = 2.5 / n
        x = np.arange(n) * h
        wave = np.sin(2 * np.pi * x / 2.5)
        block = np.pad(np.broadcast_to(wave[:, None, None], (n, 4, 4)), 1, mode="wrap")
        lap = models.laplacian(block, 1, (1 / h ** 2,) * 3)
        exact = -(2 * np.pi / 2.5) ** 2 * wave
        errs.append(np.abs(lap[:, 0, 0] - exact).max())
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)


def test_rhs_is_pure_and_partition_invariant():
    field = models.grayscott_initial_field((16, 16, 16), seed=3)
    field[1] += 0.05 * np.random.default_rng(0).random((16, 16, 16))
    ref = gs_eval(field, 1)
    assert gs_eval(field, 1).tobytes() == ref.tobytes()
    for W in (2, 4, 8):
        assert gs_eval(field, W).tobytes() == ref.tobytes()


def test_rhs_leaves_input_unchanged():
    field = models.grayscott_initial_field((8, 8, 8))
    part = models.grayscott_partition(8, 2)
    u = DistributedState.from_global(part, field)
    models.GrayScottSystem()(0.0, u, new_like(u))
    assert gather_to_root(u).tobytes() == field.tobytes()


def test_rhs_needs_ghosts_and_two_components():
    part = decompose((4, 4, 4), 1, ghost_width=0)
    u = DistributedState.zeros(part, 2)
    with pytest.raises(ContractError):
        models.GrayScottSystem()(0.0, u, new_like(u))
    part = models.grayscott_partition(4)
    u = DistributedState.zeros(part, 1)
    with pytest.raises(ContractError):
        models.GrayScottSystem()(0.0, u, new_like(u))


def test_initial_field_layout():
    f = models.grayscott_initial_field((32, 32, 32), seed=0)
    assert f[0, 0, 0, 0] == 1.0 and f[1, 0, 0, 0] == 0.0
    cube = (slice(None), slice(14, 18), slice(14, 18), slice(14, 18))
    c0, c1 = f[0][cube[1:]], f[1][cube[1:]]
    assert np.all(np.abs(c0 / 0.5 - 1) <= 0.01) and np.all(np.abs(c1 / 0.25 - 1) <= 0.01)
    assert (f[1] != 0).sum() == 4 ** 3
    assert not np.all(c1 == c1.flat[0])


def test_initial_field_identical_for_any_w():
    ref = gather_to_root(models.grayscott_init(models.grayscott_partition(16, 1), seed=5))
    for W in (2, 4, 8):
        got = gather_to_root(models.grayscott_init(models.grayscott_partition(16, W), seed=5))
        assert got.tobytes() == ref.tobytes()


def test_initial_field_depends_on_seed():
    a = models.grayscott_initial_field((16, 16, 16), seed=1)
    b = models.grayscott_initial_field((16, 16, 16), seed=2)
    assert not np.array_equal(a, b)


def test_short_run_stays_bounded():
    part = models.grayscott_partition(16, 2)
    u = models.grayscott_init(part)
    integrate_const(make_stepper("rk4"), models.GrayScottSystem(), u, 0.0, 50.0, 1.0)
    g = gather_to_root(u)
    assert g.min() >= -0.05 and g.max() <= 1.3


# -- error norms -------------------------------------------------------------------------

@pytest.mark.parametrize("e, expected", [([0.0, 0.0], (0.0, 0.0)), ([3.0, 4.0], (4.0, 5.0)),
                                         ([1.0, 1.0, 1.0, 1.0], (1.0, 2.0))])
def test_error_norms(e, expected):
    exact = sv(np.linspace(0, 1, len(e)))
    u = sv(np.linspace(0, 1, len(e)) + np.array(e))
    l_inf, l_2 = models.error_norms(u, exact)
    assert l_inf == pytest.approx(expected[0], abs=1e-15)
    assert l_2 == pytest.approx(expected[1], abs=1e-15)


def test_error_norms_partition_invariant():
    rng = np.random.default_rng(0)
    a, b = rng.random((16, 3, 1)), rng.random((16, 3, 1))
    ref = None
    for W in (1, 2, 4, 8):
        part = decompose((16, 3, 1), W)
        got = models.error_norms(DistributedState.from_global(part, a),
                                 DistributedState.from_global(part, b))
        ref = ref or got
        assert got == ref
    assert math.isfinite(ref[1])
