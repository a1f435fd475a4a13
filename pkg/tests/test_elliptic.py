import numpy as np
import pytest

from lowmach.elliptic import HelmholtzOperator, SolverError, assemble_dense, solve_helmholtz
from lowmach.grid import PeriodicGrid


def lu_solve_longdouble(a, b):
    """Gaussian elimination in extended precision (oracle only).

    The matrix is diagonally dominant, so no pivoting is needed.
    """
    a = a.astype(np.longdouble).copy()
    b = b.astype(np.longdouble).copy()
    n = len(b)
    for k in range(n):
        m = a[k + 1 :, k] / a[k, k]
        a[k + 1 :, k:] -= np.outer(m, a[k, k:])
        b[k + 1 :] -= m * b[k]
    x = np.zeros(n, dtype=np.longdouble)
    for k in reversed(range(n)):
        x[k] = (b[k] - a[k, k + 1 :] @ x[k + 1 :]) / a[k, k]
    return np.asarray(x, dtype=float)


class TestTrivialCases:
    def test_alpha_zero_identity(self):
        grid = PeriodicGrid.interval(16)
        b = np.sin(np.arange(16.0))
        x = solve_helmholtz(HelmholtzOperator(grid, 0.0), b)
        np.testing.assert_array_equal(x, b)

    def test_constant_rhs(self):
        grid = PeriodicGrid.interval(32)
        b = np.full(32, 3.25)
        x = solve_helmholtz(HelmholtzOperator(grid, 2.0), b)
        np.testing.assert_allclose(x, b, rtol=1e-14)

    def test_bad_inputs(self):
        grid = PeriodicGrid.interval(8)
        op = HelmholtzOperator(grid, 1.0)
        with pytest.raises(ValueError):
            solve_helmholtz(op, np.ones(7))
        with pytest.raises(ValueError):
            solve_helmholtz(op, np.full(8, np.nan))
        with pytest.raises(ValueError):
            solve_helmholtz(op, np.ones(8), tol=0.0)
        with pytest.raises(ValueError):
            HelmholtzOperator(grid, -1.0)


class TestDenseAssembly:
    def test_three_cell_circulant(self):
        grid = PeriodicGrid.interval(3, 0.0, 3.0)
        mat = assemble_dense(HelmholtzOperator(grid, 1.0))
        np.testing.assert_allclose(mat, [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])

    def test_alpha_zero_identity(self):
        grid = PeriodicGrid.box(3, 4)
        mat = assemble_dense(HelmholtzOperator(grid, 0.0))
        np.testing.assert_array_equal(mat, np.eye(12))

    def test_symmetry(self):
        grid = PeriodicGrid.box(5, 7)
        mat = assemble_dense(HelmholtzOperator(grid, 3.7))
        np.testing.assert_array_equal(mat, mat.T)

    def test_size_limit(self):
        grid = PeriodicGrid.interval(5000)
        with pytest.raises(ValueError):
            assemble_dense(HelmholtzOperator(grid, 1.0))


class TestSolveAgainstDense:
    @pytest.mark.parametrize("alpha", [0.0, 1.0, 1e6])
    @pytest.mark.parametrize("dim", [1, 2])
    def test_matches_dense_oracle(self, alpha, dim):
        grid = PeriodicGrid.interval(64) if dim == 1 else PeriodicGrid.box(16, 16)
        rng = np.random.default_rng(17)
        b = rng.standard_normal(grid.shape)
        op = HelmholtzOperator(grid, alpha)
        x = solve_helmholtz(op, b)
        oracle = lu_solve_longdouble(assemble_dense(op), b.ravel()).reshape(grid.shape)
        assert np.abs(x - oracle).max() <= 1e-10

    def test_mean_preservation(self):
        rng = np.random.default_rng(18)
        for alpha in (0.0, 1.0, 1e6):
            grid = PeriodicGrid.interval(64)
            b = rng.standard_normal(64)
            x = solve_helmholtz(HelmholtzOperator(grid, alpha), b)
            assert abs(x.mean() - b.mean()) <= 1e-12

    def test_sine_mode_symbol(self):
        grid = PeriodicGrid.interval(64)
        x_axis = grid.axis_centers(0)
        b = np.sin(2 * np.pi * x_axis)
        dx = grid.dx[0]
        lam = 4.0 / dx**2 * np.sin(np.pi / 64) ** 2
        x = solve_helmholtz(HelmholtzOperator(grid, 1.0), b)
        np.testing.assert_allclose(x, b / (1.0 + lam), rtol=1e-11)

    def test_residual_contract(self):
        # tol * ||b||, widened by the float64 feasibility floor eps*||A||*||x||
        # that any solver (including the dense direct one) is subject to
        rng = np.random.default_rng(19)
        for alpha in (0.5, 100.0):
            for dim in (1, 2):
                grid = PeriodicGrid.interval(48) if dim == 1 else PeriodicGrid.box(12, 12)
                op = HelmholtzOperator(grid, alpha)
                b = rng.standard_normal(grid.shape)
                x = solve_helmholtz(op, b, tol=1e-12)
                res = np.linalg.norm(op.apply(x) - b)
                floor = 16 * np.finfo(float).eps * op.norm_bound * np.linalg.norm(x)
                assert res <= max(1e-12 * np.linalg.norm(b), floor)

    def test_residual_tight_for_moderate_alpha(self):
        grid = PeriodicGrid.interval(64)
        rng = np.random.default_rng(21)
        b = rng.standard_normal(64)
        op = HelmholtzOperator(grid, 1e-4)  # ||A|| ~ 2.6: plain bound applies
        x = solve_helmholtz(op, b, tol=1e-12)
        assert np.linalg.norm(op.apply(x) - b) <= 1e-12 * np.linalg.norm(b)


class TestConjugateGradientPath:
    def test_matches_direct(self):
        grid = PeriodicGrid.interval(32)
        rng = np.random.default_rng(20)
        b = rng.standard_normal(32)
        op = HelmholtzOperator(grid, 2.0)
        x_cg = solve_helmholtz(op, b, tol=1e-12, method="cg")
        x_direct = solve_helmholtz(op, b, tol=1e-12)
        np.testing.assert_allclose(x_cg, x_direct, atol=1e-10)

    def test_unknown_method(self):
        grid = PeriodicGrid.interval(8)
        with pytest.raises(ValueError):
            solve_helmholtz(HelmholtzOperator(grid, 1.0), np.ones(8), method="lu")


class TestSpdProperty:
    def test_eigenvalues_at_least_one(self):
        for grid in (PeriodicGrid.interval(16), PeriodicGrid.box(6, 8)):
            mat = assemble_dense(HelmholtzOperator(grid, 4.2))
            eigs = np.linalg.eigvalsh(mat)
            assert eigs.min() >= 1.0 - 1e-12
