"""Backend agreement: the compiled kernels must match the numpy fallback."""

import numpy as np
import pytest

from lowmach import _pykernels

cykernels = pytest.importorskip("lowmach._cykernels")

RNG = np.random.default_rng(99)


def data_1d(n=37):
    rho = 0.5 + RNG.random(n)
    u = RNG.standard_normal(n)
    return rho, u


def data_2d(n1=13, n2=17):
    rho = 0.5 + RNG.random((n1, n2))
    u1 = RNG.standard_normal((n1, n2))
    u2 = RNG.standard_normal((n1, n2))
    return rho, u1, u2


def agree(a, b, tol=1e-13):
    np.testing.assert_allclose(a, b, rtol=tol, atol=tol)


class TestBackend1D:
    def test_central_div(self):
        rho, u = data_1d()
        agree(cykernels.central_div_1d(rho * u, 0.1), _pykernels.central_div_1d(rho * u, 0.1))

    def test_laplacian(self):
        rho, _ = data_1d()
        agree(cykernels.laplacian_1d(rho, 0.05), _pykernels.laplacian_1d(rho, 0.05))

    def test_upwind_mass(self):
        rho, u = data_1d()
        agree(
            cykernels.upwind_mass_div_1d(rho, u, 0.1),
            _pykernels.upwind_mass_div_1d(rho, u, 0.1),
        )

    def test_upwind_conv(self):
        rho, u = data_1d()
        agree(
            cykernels.upwind_conv_div_1d(rho, u, 0.1),
            _pykernels.upwind_conv_div_1d(rho, u, 0.1),
        )

    @pytest.mark.parametrize("gamma", [1.4, 2.0])
    def test_ec(self, gamma):
        rho, u = data_1d()
        agree(
            cykernels.ec_conv_div_1d(rho, u, gamma, 0.1),
            _pykernels.ec_conv_div_1d(rho, u, gamma, 0.1),
        )

    @pytest.mark.parametrize("order", [1, 2])
    def test_es(self, order):
        rho, u = data_1d()
        agree(
            cykernels.es_conv_div_1d(rho, u, 1.4, 2.0, order, 0.1),
            _pykernels.es_conv_div_1d(rho, u, 1.4, 2.0, order, 0.1),
        )


class TestBackend2D:
    def test_central_div(self):
        rho, u1, u2 = data_2d()
        agree(
            cykernels.central_div_2d(rho * u1, rho * u2, 0.1, 0.2),
            _pykernels.central_div_2d(rho * u1, rho * u2, 0.1, 0.2),
        )

    def test_central_grad(self):
        rho, _, _ = data_2d()
        for a, b in zip(
            cykernels.central_grad_2d(rho, 0.1, 0.2), _pykernels.central_grad_2d(rho, 0.1, 0.2)
        ):
            agree(a, b)

    def test_laplacian(self):
        rho, _, _ = data_2d()
        agree(cykernels.laplacian_2d(rho, 0.1, 0.2), _pykernels.laplacian_2d(rho, 0.1, 0.2))

    def test_upwind_mass(self):
        rho, u1, u2 = data_2d()
        agree(
            cykernels.upwind_mass_div_2d(rho, u1, u2, 0.1, 0.2),
            _pykernels.upwind_mass_div_2d(rho, u1, u2, 0.1, 0.2),
        )

    def test_upwind_conv(self):
        rho, u1, u2 = data_2d()
        for a, b in zip(
            cykernels.upwind_conv_div_2d(rho, u1, u2, 0.1, 0.2),
            _pykernels.upwind_conv_div_2d(rho, u1, u2, 0.1, 0.2),
        ):
            agree(a, b)

    @pytest.mark.parametrize("order", [1, 2])
    def test_es(self, order):
        rho, u1, u2 = data_2d()
        for a, b in zip(
            cykernels.es_conv_div_2d(rho, u1, u2, 1.4, 1.0, order, 0.1, 0.2),
            _pykernels.es_conv_div_2d(rho, u1, u2, 1.4, 1.0, order, 0.1, 0.2),
        ):
            agree(a, b)

    def test_ec(self):
        rho, u1, u2 = data_2d()
        for a, b in zip(
            cykernels.ec_conv_div_2d(rho, u1, u2, 2.0, 0.1, 0.2),
            _pykernels.ec_conv_div_2d(rho, u1, u2, 2.0, 0.1, 0.2),
        ):
            agree(a, b)

    def test_double_div(self):
        rho, u1, u2 = data_2d()
        agree(
            cykernels.double_div_2d(rho * u1 * u1, rho * u1 * u2, rho * u2 * u2, 0.1, 0.2),
            _pykernels.double_div_2d(rho * u1 * u1, rho * u1 * u2, rho * u2 * u2, 0.1, 0.2),
        )


def test_rho_gamma_mean_scalar_and_array():
    assert cykernels.rho_gamma_mean(1.0, 3.0, 2.0) == pytest.approx(
        _pykernels.rho_gamma_mean(1.0, 3.0, 2.0), rel=1e-14
    )
    a = 0.5 + RNG.random(20)
    b = 0.5 + RNG.random(20)
    agree(cykernels.rho_gamma_mean(a, b, 1.4), _pykernels.rho_gamma_mean(a, b, 1.4))
