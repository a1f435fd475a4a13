"""Compare the compiled flux kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 200,1000,4000] [--reps 200]
Also times one full solver step per backend on a representative 1D and 2D
configuration.
"""

import argparse
import time

import numpy as np

from lowmach import _cykernels, _pykernels
from lowmach.grid import PeriodicGrid, sample_initial_condition
from lowmach.imex import get_scheme
from lowmach.problems import get_problem
from lowmach.spatial import DiscretisationType
from lowmach.stepper import StepControls, imex_rk_step


def time_call(fn, reps):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        best = min(best, (time.perf_counter() - t0) / reps)
    return best


def bench_kernels(sizes, reps):
    rng = np.random.default_rng(0)
    print(f"{'kernel':<24} {'n':>7} {'numpy':>12} {'cython':>12} {'speedup':>8}")
    for n in sizes:
        rho = 0.5 + rng.random(n)
        u = rng.standard_normal(n)
        m = rho * u
        dx = 1.0 / n
        cases = [
            ("central_div_1d", lambda k: k.central_div_1d(m, dx)),
            ("laplacian_1d", lambda k: k.laplacian_1d(rho, dx)),
            ("upwind_mass_div_1d", lambda k: k.upwind_mass_div_1d(rho, u, dx)),
            ("upwind_conv_div_1d", lambda k: k.upwind_conv_div_1d(rho, u, dx)),
            ("ec_conv_div_1d", lambda k: k.ec_conv_div_1d(rho, u, 1.4, dx)),
            ("es_conv_div_1d(o2)", lambda k: k.es_conv_div_1d(rho, u, 1.4, 1.0, 2, dx)),
        ]
        for name, call in cases:
            t_py = time_call(lambda: call(_pykernels), reps)
            t_cy = time_call(lambda: call(_cykernels), reps)
            print(f"{name:<24} {n:>7} {t_py * 1e6:>10.1f}us {t_cy * 1e6:>10.1f}us {t_py / t_cy:>7.1f}x")

    n2 = max(32, int(np.sqrt(sizes[-1])))
    rho2 = 0.5 + rng.random((n2, n2))
    u1 = rng.standard_normal((n2, n2))
    u2 = rng.standard_normal((n2, n2))
    d = 1.0 / n2
    cases2 = [
        ("laplacian_2d", lambda k: k.laplacian_2d(rho2, d, d)),
        ("upwind_mass_div_2d", lambda k: k.upwind_mass_div_2d(rho2, u1, u2, d, d)),
        ("es_conv_div_2d(o2)", lambda k: k.es_conv_div_2d(rho2, u1, u2, 1.4, 1.0, 2, d, d)),
    ]
    for name, call in cases2:
        t_py = time_call(lambda: call(_pykernels), reps)
        t_cy = time_call(lambda: call(_cykernels), reps)
        print(f"{name:<24} {n2:>4}x{n2:<3} {t_py * 1e6:>9.1f}us {t_cy * 1e6:>10.1f}us {t_py / t_cy:>7.1f}x")


def bench_full_step(reps):
    print("\nfull IMEX step (spatial kernels via the selected backend):")
    # spatial dispatches through lowmach.kernels, whose binding is fixed at
    # import; swap the module attributes to time each backend in-process
    from lowmach import kernels

    for label, impl in (("numpy", _pykernels), ("cython", _cykernels)):
        for name in dir(impl):
            if not name.startswith("_") and hasattr(kernels, name):
                setattr(kernels, name, getattr(impl, name))
        for problem, n, kind in (("standard_periodic", 1000, 2), ("gresho", 64, 2)):
            prob = get_problem(problem, 0.1)
            grid = (
                PeriodicGrid.interval(n, *prob.domain[0])
                if prob.dim == 1
                else PeriodicGrid(n=(n, n), domain=prob.domain)
            )
            field = sample_initial_condition(prob.ic, grid)
            controls = StepControls(
                cfl=0.5, t_final=1e9, linearisation_rho0=float(field.rho.mean())
            )
            tableau = get_scheme("ars111")
            disc = DiscretisationType(kind=kind)
            dt = 1e-4

            def step():
                imex_rk_step(field, tableau, prob.default_params, controls, disc, grid, dt)

            t = time_call(step, max(5, reps // 20))
            shape = f"{n}" if prob.dim == 1 else f"{n}x{n}"
            print(f"  {label:<7} {problem:<18} {shape:>8}: {t * 1e3:8.3f} ms/step")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="200,1000,4000")
    parser.add_argument("--reps", type=int, default=200)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"backend available: cython={_cykernels.BACKEND == 'cython'}")
    bench_kernels(sizes, args.reps)
    bench_full_step(args.reps)


if __name__ == "__main__":
    main()
