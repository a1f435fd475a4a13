import math

import numpy as np
import pytest

from lowmach.grid import Field, PeriodicGrid
from lowmach.model import (
    CellState,
    ModelParams,
    entropy_quantities,
    max_wave_speed,
    pressure,
    pressure_derivative,
)


def params(kappa=1.0, gamma=2.0, eps=1.0):
    return ModelParams(kappa=kappa, gamma=gamma, eps=eps)


class TestPressure:
    def test_identity_case(self):
        assert pressure(1.0, params()) == 1.0

    def test_power_evaluation(self):
        assert pressure(2.0, params()) == 4.0

    def test_acoustic_background(self):
        # independent evaluation through exp/log
        expected = math.exp(1.4 * math.log(0.955))
        assert pressure(0.955, params(gamma=1.4)) == pytest.approx(expected, rel=1e-15)

    def test_rejects_nonpositive_density(self):
        with pytest.raises(ValueError):
            pressure(0.0, params())
        with pytest.raises(ValueError):
            pressure(-1.0, params())

    def test_array_input(self):
        rho = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(pressure(rho, params()), rho**2)


class TestPressureDerivative:
    def test_gamma_two(self):
        assert pressure_derivative(1.0, params()) == 2.0

    def test_gamma_14(self):
        assert pressure_derivative(1.0, params(gamma=1.4)) == pytest.approx(1.4)

    def test_vortex_background(self):
        expected = 1.4 * math.exp(0.4 * math.log(110.0))
        assert pressure_derivative(110.0, params(gamma=1.4)) == pytest.approx(expected, rel=1e-15)

    def test_rejects_nonpositive_density(self):
        with pytest.raises(ValueError):
            pressure_derivative(0.0, params())


class TestEntropyQuantities:
    def test_rest_state(self):
        q = entropy_quantities(CellState(rho=1.0, mom=(0.0,)), params())
        assert q.eta == pytest.approx(1.0)
        assert q.omega[0] == pytest.approx(0.0)
        assert q.v[0] == pytest.approx(2.0)
        assert q.v[1] == pytest.approx(0.0)

    def test_moving_state(self):
        q = entropy_quantities(CellState(rho=1.0, mom=(1.0,)), params())
        assert q.eta == pytest.approx(1.5)
        assert q.omega[0] == pytest.approx(2.5)

    def test_small_eps_scaling(self):
        q = entropy_quantities(CellState(rho=1.0, mom=(0.0,)), params(eps=0.1))
        assert q.eta == pytest.approx(100.0)

    def test_eta_decomposition_random_states(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            p = params(gamma=float(rng.choice([1.4, 2.0])), eps=float(rng.choice([1.0, 0.1])))
            rho = float(0.5 + 1.5 * rng.random())
            u = tuple(rng.uniform(-2, 2, size=int(rng.integers(1, 3))))
            state = CellState(rho=rho, mom=tuple(rho * uk for uk in u))
            q = entropy_quantities(state, p)
            ke = 0.5 * rho * sum(uk**2 for uk in u)
            pe = pressure(rho, p) / (p.eps**2 * (p.gamma - 1.0))
            assert q.eta == pytest.approx(ke + pe, rel=1e-14)

    def test_v0_closed_form_gamma2(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            eps = float(rng.choice([1.0, 0.5, 0.1]))
            rho = float(0.5 + rng.random())
            u = float(rng.uniform(-2, 2))
            q = entropy_quantities(CellState(rho=rho, mom=(rho * u,)), params(eps=eps))
            assert q.v[0] == pytest.approx(-0.5 * u**2 + 2.0 * rho / eps**2, rel=1e-13)

    def test_omega_identity_exact(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            p = params(gamma=1.4, eps=0.3)
            rho = float(0.5 + rng.random())
            u = tuple(rng.uniform(-2, 2, size=2))
            state = CellState(rho=rho, mom=(rho * u[0], rho * u[1]))
            q = entropy_quantities(state, p)
            pr = pressure(rho, p)
            uk = state.velocity  # the state's own velocity, not the sampled u
            for k in range(2):
                assert q.omega[k] - uk[k] * (q.eta + pr / p.eps**2) == 0.0


class TestCellState:
    def test_rejects_nonpositive_density(self):
        with pytest.raises(ValueError):
            CellState(rho=0.0, mom=(0.0,))

    def test_velocity(self):
        assert CellState(rho=2.0, mom=(1.0,)).velocity == (0.5,)


class TestMaxWaveSpeed:
    def test_constant_field(self):
        grid = PeriodicGrid.interval(4)
        f = Field(grid, np.ones(4), np.ones((1, 4)))
        assert max_wave_speed(f) == pytest.approx(1.0)

    def test_absolute_max(self):
        grid = PeriodicGrid.interval(2)
        f = Field(grid, np.ones(2), np.array([[-2.0, 0.5]]))
        assert max_wave_speed(f) == pytest.approx(2.0)

    def test_component_sum_2d(self):
        grid = PeriodicGrid.box(2, 2)
        rho = np.ones((2, 2))
        mom = np.zeros((2, 2, 2))
        mom[0, 0, 0] = 0.6
        mom[1, 0, 0] = 0.8
        f = Field(grid, rho, mom)
        assert max_wave_speed(f) == pytest.approx(1.4)

    def test_empty_field_errors(self):
        with pytest.raises(ValueError):
            grid = PeriodicGrid.interval(1)
            f = Field(grid, np.ones(1), np.ones((1, 1)))
            f.rho = np.ones(0)
            max_wave_speed(f)


class TestModelParams:
    @pytest.mark.parametrize(
        "kwargs",
        [dict(kappa=0.0), dict(gamma=1.0), dict(gamma=0.9), dict(eps=0.0), dict(eps=-1.0)],
    )
    def test_invalid_params(self, kwargs):
        base = dict(kappa=1.0, gamma=2.0, eps=1.0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            ModelParams(**base)
