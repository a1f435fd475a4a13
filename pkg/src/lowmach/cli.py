"""Command-line front end: single runs, EOC studies, CSV outputs.

Exit codes: 0 completed, 1 configuration or I/O failure, 2 blow-up (the
partially written diagnostics/snapshots are kept so the failure can be
inspected).  All floats are emitted with 17 significant digits so files
round-trip losslessly and reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__
from .diagnostics import gresho_diagnostics, l2_error, make_eoc_table
from .grid import Field, PeriodicGrid, sample_initial_condition
from .imex import SCHEMES, get_scheme
from .problems import PROBLEMS, get_problem
from .spatial import DiscretisationType
from .stepper import BlowUpError, StepControls, run


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    problem: str
    disc_type: int
    eps: float
    cfl: float
    nx: int
    t_final: float
    ny: int = 0  # 0 means "same as nx" for 2D problems
    es_order: int = 1
    q: float = 0.0
    scheme: str = "ars111"
    snapshot_times: list = dc_field(default_factory=list)
    out_dir: str = "out"
    helmholtz_tol: float = 1e-12
    nonlinear_pressure: bool = False
    rho0: float = 0.0  # 0 means "domain mean of the initial density"
    mach_ratio: bool = False

    def validate(self):
        if self.problem not in PROBLEMS:
            raise ConfigError(f"unknown problem '{self.problem}'")
        if self.disc_type not in (1, 2, 3):
            raise ConfigError(f"type must be 1, 2 or 3, got {self.disc_type}")
        if self.es_order not in (1, 2):
            raise ConfigError(f"es_order must be 1 or 2, got {self.es_order}")
        if self.disc_type != 3 and self.es_order != 1:
            raise ConfigError("es_order is only meaningful with --type 3")
        if self.disc_type != 3 and self.q != 0.0:
            raise ConfigError("q is only meaningful with --type 3")
        if self.q < 0:
            raise ConfigError("q must be nonnegative")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme '{self.scheme}'")
        if self.eps <= 0:
            raise ConfigError("eps must be positive")
        if not 0 < self.cfl <= 1:
            raise ConfigError("cfl must lie in (0, 1]")
        if self.nx < 1 or self.ny < 0:
            raise ConfigError("grid sizes must be positive")
        if self.t_final < 0:
            raise ConfigError("tfinal must be nonnegative")
        if self.helmholtz_tol <= 0:
            raise ConfigError("helmholtz_tol must be positive")
        if any(ts < 0 for ts in self.snapshot_times):
            raise ConfigError("snapshot times must be nonnegative")
        if self.rho0 < 0:
            raise ConfigError("rho0 must be positive (or omitted)")
        if self.mach_ratio and self.problem != "gresho":
            raise ConfigError("--mach-ratio is only available for the gresho problem")


def _fmt(x) -> str:
    return f"{x:.17g}"


def _parse_bool(text):
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"expected a boolean, got '{text}'")


def _parse_times(text):
    text = text.strip()
    if not text:
        return []
    return [float(part) for part in text.split(",")]


# config-file key -> (RunConfig attribute, parser)
_KEYS = {
    "problem": ("problem", str),
    "type": ("disc_type", int),
    "es_order": ("es_order", int),
    "q": ("q", float),
    "scheme": ("scheme", str),
    "eps": ("eps", float),
    "cfl": ("cfl", float),
    "nx": ("nx", int),
    "ny": ("ny", int),
    "tfinal": ("t_final", float),
    "snapshots": ("snapshot_times", _parse_times),
    "out": ("out_dir", str),
    "helmholtz_tol": ("helmholtz_tol", float),
    "nonlinear_pressure": ("nonlinear_pressure", _parse_bool),
    "rho0": ("rho0", float),
    "mach_ratio": ("mach_ratio", _parse_bool),
    "version": (None, str),  # recorded in run_meta, ignored on input
}

_REQUIRED = ("problem", "type", "eps", "cfl", "nx", "tfinal")


def read_config_file(path):
    """Parse a flat `key = value` file into config-key/value pairs."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got '{raw.strip()}'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        attr, cast = _KEYS[key]
        if attr is None:
            continue
        try:
            values[key] = cast(value)
        except ValueError as err:
            raise ConfigError(f"{path}:{lineno}: bad value for '{key}': {err}") from None
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1, not argparse's default 2 (2 = blow-up)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_run_flags(p):
    p.add_argument("--config", help="flat key = value config file; flags override it")
    p.add_argument("--problem", choices=sorted(PROBLEMS))
    p.add_argument("--type", type=int, dest="type", help="space discretisation type (1, 2 or 3)")
    p.add_argument("--es-order", type=int, dest="es_order", help="ES reconstruction order (type 3)")
    p.add_argument("--q", type=float, help="ES dissipation strength (type 3)")
    p.add_argument("--scheme", choices=sorted(SCHEMES))
    p.add_argument("--eps", type=float, help="Mach-proportional parameter")
    p.add_argument("--cfl", type=float, help="CFL number in (0, 1]")
    p.add_argument("--nx", type=int, help="cells in x1")
    p.add_argument("--ny", type=int, help="cells in x2 (2D problems; defaults to nx)")
    p.add_argument("--tfinal", type=float, help="final time")
    p.add_argument("--snapshots", type=str, help="comma-separated snapshot times")
    p.add_argument("--out", type=str, help="output directory")
    p.add_argument("--helmholtz-tol", type=float, dest="helmholtz_tol")
    p.add_argument("--nonlinear-pressure", action="store_true", default=None,
                   dest="nonlinear_pressure")
    p.add_argument("--rho0", type=float, help="linearisation density (default: initial mean)")
    p.add_argument("--mach-ratio", action="store_true", default=None, dest="mach_ratio",
                   help="also write mach_ratio_<t>.csv at snapshot times (gresho)")


_FLAG_TO_KEY = {
    "problem": "problem", "type": "type", "es_order": "es_order", "q": "q",
    "scheme": "scheme", "eps": "eps", "cfl": "cfl", "nx": "nx", "ny": "ny",
    "tfinal": "tfinal", "snapshots": "snapshots", "out": "out",
    "helmholtz_tol": "helmholtz_tol", "nonlinear_pressure": "nonlinear_pressure",
    "rho0": "rho0", "mach_ratio": "mach_ratio",
}


def build_config(args) -> RunConfig:
    """Merge config file and flags (flags win), validate, return RunConfig."""
    values = read_config_file(args.config) if args.config else {}
    for flag, key in _FLAG_TO_KEY.items():
        flag_value = getattr(args, flag, None)
        if flag_value is not None:
            attr, cast = _KEYS[key]
            values[key] = cast(flag_value) if isinstance(flag_value, str) else flag_value
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    cfg = RunConfig(
        problem=values["problem"],
        disc_type=values["type"],
        eps=values["eps"],
        cfl=values["cfl"],
        nx=values["nx"],
        t_final=values["tfinal"],
    )
    for key, value in values.items():
        attr, _ = _KEYS[key]
        if attr is not None and key not in _REQUIRED:
            setattr(cfg, attr, value)
    cfg.validate()
    return cfg


def parse_config(argv) -> RunConfig:
    """Parse `run` style flags (plus optional config file) into a RunConfig."""
    parser = _Parser(prog="lowmach run")
    _add_run_flags(parser)
    return build_config(parser.parse_args(argv))


def _setup_run(cfg: RunConfig):
    problem = get_problem(cfg.problem, cfg.eps)
    if problem.dim == 1:
        grid = PeriodicGrid.interval(cfg.nx, *problem.domain[0])
    else:
        ny = cfg.ny if cfg.ny else cfg.nx
        grid = PeriodicGrid(n=(cfg.nx, ny), domain=problem.domain)
    field = sample_initial_condition(problem.ic, grid)
    params = problem.default_params
    rho0 = cfg.rho0 if cfg.rho0 else float(field.rho.mean())
    controls = StepControls(
        cfl=cfg.cfl,
        t_final=cfg.t_final,
        linearisation_rho0=rho0,
        helmholtz_tol=cfg.helmholtz_tol,
        nonlinear_pressure=cfg.nonlinear_pressure,
    )
    disc = DiscretisationType(kind=cfg.disc_type, order=cfg.es_order, q=cfg.q)
    tableau = get_scheme(cfg.scheme)
    return problem, grid, field, params, controls, disc, tableau


def _meta_lines(cfg: RunConfig):
    ny = cfg.ny if cfg.ny else cfg.nx
    lines = [
        f"problem = {cfg.problem}",
        f"type = {cfg.disc_type}",
        f"es_order = {cfg.es_order}",
        f"q = {_fmt(cfg.q)}",
        f"scheme = {cfg.scheme}",
        f"eps = {_fmt(cfg.eps)}",
        f"cfl = {_fmt(cfg.cfl)}",
        f"nx = {cfg.nx}",
        f"ny = {ny}",
        f"tfinal = {_fmt(cfg.t_final)}",
        f"snapshots = {','.join(_fmt(t) for t in cfg.snapshot_times)}",
        f"out = {cfg.out_dir}",
        f"helmholtz_tol = {_fmt(cfg.helmholtz_tol)}",
        f"nonlinear_pressure = {str(cfg.nonlinear_pressure).lower()}",
        f"rho0 = {_fmt(cfg.rho0)}",
        f"mach_ratio = {str(cfg.mach_ratio).lower()}",
        f"version = {__version__}",
    ]
    return lines


def _time_tag(t) -> str:
    return f"{t:g}"


def _write_snapshot(path, field: Field):
    grid = field.grid
    with open(path, "w") as fh:
        if grid.dim == 1:
            fh.write("x,rho,mom1\n")
            (x,) = grid.cell_centers()
            for i in range(grid.n[0]):
                fh.write(f"{_fmt(x[i])},{_fmt(field.rho[i])},{_fmt(field.mom[0][i])}\n")
        else:
            fh.write("x1,x2,rho,mom1,mom2\n")
            x1, x2 = grid.cell_centers()
            for j in range(grid.n[1]):  # x1 fastest
                for i in range(grid.n[0]):
                    fh.write(
                        f"{_fmt(x1[i, j])},{_fmt(x2[i, j])},{_fmt(field.rho[i, j])},"
                        f"{_fmt(field.mom[0][i, j])},{_fmt(field.mom[1][i, j])}\n"
                    )


def _write_mach_ratio(path, field: Field, params):
    from .problems import GRESHO_U1

    _, ratio = gresho_diagnostics(field, params, GRESHO_U1)
    grid = field.grid
    x1, x2 = grid.cell_centers()
    with open(path, "w") as fh:
        fh.write("x1,x2,mach_ratio\n")
        for j in range(grid.n[1]):
            for i in range(grid.n[0]):
                fh.write(f"{_fmt(x1[i, j])},{_fmt(x2[i, j])},{_fmt(ratio[i, j])}\n")


def run_single(cfg: RunConfig) -> int:
    """Execute one configured run; returns the process exit status."""
    try:
        problem, grid, field, params, controls, disc, tableau = _setup_run(cfg)
    except (ConfigError, ValueError, KeyError) as err:
        print(f"lowmach: {err}", file=sys.stderr)
        return 1

    out = Path(cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "run_meta.csv").write_text("\n".join(_meta_lines(cfg)) + "\n")
        diag_fh = open(out / "diagnostics.csv", "w")
    except OSError as err:
        print(f"lowmach: I/O failure: {err}", file=sys.stderr)
        return 1

    def diagnostics_sink(row):
        diag_fh.write(
            f"{_fmt(row.t)},{_fmt(row.entropy)},{_fmt(row.ke)},{_fmt(row.pe)}\n"
        )
        diag_fh.flush()

    def snapshot_sink(requested, actual, snap_field):
        tag = _time_tag(requested)
        _write_snapshot(out / f"snapshot_{tag}.csv", snap_field)
        if cfg.mach_ratio:
            _write_mach_ratio(out / f"mach_ratio_{tag}.csv", snap_field, params)

    diag_fh.write("t,entropy,kinetic_energy,potential_energy\n")
    status = 0
    try:
        final, _ = run(
            field, tableau, params, controls, disc,
            diagnostics_sink=diagnostics_sink,
            snapshot_times=cfg.snapshot_times,
            snapshot_sink=snapshot_sink,
        )
    except BlowUpError as err:
        print(f"lowmach: {err}", file=sys.stderr)
        if err.last_field is not None:
            _write_snapshot(out / "last_state.csv", err.last_field)
        status = 2
    except OSError as err:
        print(f"lowmach: I/O failure: {err}", file=sys.stderr)
        status = 1
    except (ValueError, RuntimeError) as err:
        print(f"lowmach: {err}", file=sys.stderr)
        status = 1
    finally:
        diag_fh.close()
    return status


def run_eoc(cfg: RunConfig, grids, reference_n) -> int:
    """Grid-refinement study against a reference computed at reference_n."""
    if len(grids) < 1:
        print("lowmach: eoc needs at least one grid", file=sys.stderr)
        return 1
    bad = [n for n in grids if reference_n % n != 0]
    if bad:
        print(
            f"lowmach: reference N={reference_n} is not divisible by grid(s) {bad}",
            file=sys.stderr,
        )
        return 1

    def final_field(n):
        sub = RunConfig(**{**cfg.__dict__, "nx": n, "ny": 0, "snapshot_times": []})
        _, _, field, params, controls, disc, tableau = _setup_run(sub)
        result, _ = run(field, tableau, params, controls, disc)
        return result

    try:
        reference = final_field(reference_n)
        problem = get_problem(cfg.problem, cfg.eps)
        variables = ("rho", "u1") if problem.dim == 1 else ("rho", "u1", "u2")
        errors = {v: [] for v in variables}
        dxs = []
        for n in grids:
            field_n = final_field(n)
            errs = l2_error(field_n, reference, variables)
            for v in variables:
                errors[v].append(errs[v])
            dxs.append(field_n.grid.dx[0])
    except BlowUpError as err:
        print(f"lowmach: {err}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as err:
        print(f"lowmach: {err}", file=sys.stderr)
        return 1

    table = make_eoc_table(list(grids), dxs, errors)
    out = Path(cfg.out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        header = "N,dx," + ",".join(f"err_{v},eoc_{v}" for v in variables)
        lines = [header]
        for row in table.rows:
            cells = [str(row.n), _fmt(row.dx)]
            for v in variables:
                cells.append(_fmt(row.errors[v]))
                cells.append("" if row.eocs[v] is None else f"{row.eocs[v]:.4f}")
            lines.append(",".join(cells))
        (out / "eoc.csv").write_text("\n".join(lines) + "\n")
    except OSError as err:
        print(f"lowmach: I/O failure: {err}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="lowmach", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="single simulation run")
    _add_run_flags(run_p)
    eoc_p = sub.add_parser("eoc", help="grid convergence study")
    _add_run_flags(eoc_p)
    eoc_p.add_argument("--grids", type=str, required=True,
                       help="comma-separated study grid sizes")
    eoc_p.add_argument("--reference-n", type=int, required=True, dest="reference_n")

    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "run":
            return run_single(cfg)
        grids = [int(part) for part in args.grids.split(",") if part.strip()]
        return run_eoc(cfg, grids, args.reference_n)
    except ConfigError as err:
        print(f"lowmach: config error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
