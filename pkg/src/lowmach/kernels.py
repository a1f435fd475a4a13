"""Flux-kernel backend selection.

The compiled extension (`lowmach._cykernels`) is preferred; the vectorized
numpy module is the fallback when the extension is missing or when
LOWMACH_PURE_PYTHON is set.  Both expose the same functions and must agree
to rounding; `tests/test_kernels.py` enforces that and
`benchmarks/bench_kernels.py` compares their speed.
"""

import os

from . import _pykernels

if os.environ.get("LOWMACH_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _cykernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = _impl.BACKEND

central_div_1d = _impl.central_div_1d
laplacian_1d = _impl.laplacian_1d
upwind_mass_div_1d = _impl.upwind_mass_div_1d
upwind_conv_div_1d = _impl.upwind_conv_div_1d
ec_conv_div_1d = _impl.ec_conv_div_1d
es_conv_div_1d = _impl.es_conv_div_1d
double_div_1d = _impl.double_div_1d

central_div_2d = _impl.central_div_2d
central_grad_2d = _impl.central_grad_2d
laplacian_2d = _impl.laplacian_2d
upwind_mass_div_2d = _impl.upwind_mass_div_2d
upwind_conv_div_2d = _impl.upwind_conv_div_2d
ec_conv_div_2d = _impl.ec_conv_div_2d
es_conv_div_2d = _impl.es_conv_div_2d
double_div_2d = _impl.double_div_2d

# scalar/array helper shared by spatial.py and the test harness
rho_gamma_mean = _pykernels.rho_gamma_mean
