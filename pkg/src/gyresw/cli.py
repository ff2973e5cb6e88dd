"""Command-line entry points.

Subcommands: ``verify convergence``, ``verify eta``, ``gyre``, ``tracer``,
``riemann-selftest``, and ``bench``.  Experiment commands accept a JSON
config file (unknown keys rejected) whose values are overridden by any
explicitly given flags; the effective configuration is echoed to the
output directory as provenance.json.
"""

import json
import os
import sys
import time

import click
import numpy as np

from . import __version__
from . import io as gio
from .errors import ConfigError
from .gyre import DAY, GyreSetup, run_gyre
from .kernels import ACTIVE_BACKEND
from .tracer import init_concentration, run_coupled, tracer_centroid
from .verification import (CONVERGENCE_LEVELS, convergence_study,
                           eta_sensitivity_study)

ORDER_WINDOW = (1.7, 2.2)


def parse_length(text):
    """Parse '40km', '40000', or '1e4' into meters."""
    s = str(text).strip().lower()
    if s.endswith("km"):
        return float(s[:-2]) * 1000.0
    if s.endswith("m"):
        return float(s[:-1])
    return float(s)


def load_config(path, allowed, flags):
    """Merge a JSON config under explicit CLI flags.

    allowed: set of recognized keys; unknown keys are rejected by name.
    flags: dict of flag values, where None means "not given".
    """
    merged = {}
    if path is not None:
        with open(path) as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        for key in doc:
            if key not in allowed:
                raise ConfigError(f"{path}: unknown config key {key!r}")
        merged.update(doc)
    for key, val in flags.items():
        if val is not None:
            merged[key] = val
    return merged


def _echo_provenance(out_dir, command, effective):
    doc = {"command": command, "version": __version__,
           "kernel_backend": ACTIVE_BACKEND}
    doc.update(effective)
    gio.write_provenance(os.path.join(out_dir, "provenance.json"), doc)


@click.group()
@click.version_option(__version__)
def main():
    """Finite-volume reduced-gravity shallow-water solver."""


@main.group()
def verify():
    """Manufactured-solution verification studies."""


@verify.command("convergence")
@click.option("--levels", default=",".join(str(n) for n in CONVERGENCE_LEVELS),
              show_default=True, help="Comma-separated grid sizes.")
@click.option("--base-dt", default=0.025, show_default=True,
              help="Time step at N=10; refined as (10/N)^2.")
@click.option("--out", default=None, help="Output directory "
              "(default: GYRE_OUT_DIR or cwd).")
@click.option("--backend", default="active", show_default=True,
              type=click.Choice(["active", "python", "cython"]))
def verify_convergence(levels, base_dt, out, backend):
    """Grid-refinement study of the height-field error at t=1."""
    level_list = tuple(int(v) for v in levels.split(","))
    rows = convergence_study(levels=level_list, base_dt=base_dt,
                             backend=backend)
    out_dir = gio.ensure_out_dir(out)
    path = os.path.join(out_dir, "convergence.csv")
    with open(path, "w") as fh:
        fh.write("N,error,observed_order\n")
        for r in rows:
            fh.write(f"{r.n},{r.error!r},{r.observed_order!r}\n")
    _echo_provenance(out_dir, "verify convergence",
                     {"levels": level_list, "base_dt": base_dt})
    click.echo(f"{'N':>5} {'error':>12} {'order':>7}")
    ok = True
    prev_n = None
    for r in rows:
        order = "" if np.isnan(r.observed_order) else f"{r.observed_order:.2f}"
        click.echo(f"{r.n:>5} {r.error:>12.4e} {order:>7}")
        # the pair against the coarsest grid is pre-asymptotic; judge
        # orders only between levels of 20 cells and up
        if prev_n is not None and prev_n >= 20 and \
           not np.isnan(r.observed_order) and \
           not ORDER_WINDOW[0] <= r.observed_order <= ORDER_WINDOW[1]:
            ok = False
        prev_n = r.n
    click.echo(f"orders within {list(ORDER_WINDOW)}: "
               f"{'PASS' if ok else 'FAIL'}  (table: {path})")
    sys.exit(0 if ok else 1)


@verify.command("eta")
@click.option("--etas", default="0.1,0.3,0.5,0.7,0.9", show_default=True)
@click.option("--out", default=None)
@click.option("--backend", default="active", show_default=True,
              type=click.Choice(["active", "python", "cython"]))
def verify_eta(etas, out, backend):
    """Amplitude-sensitivity study of the u-field error at t=5."""
    eta_list = tuple(float(v) for v in etas.split(","))
    rows = eta_sensitivity_study(etas=eta_list, backend=backend)
    out_dir = gio.ensure_out_dir(out)
    path = os.path.join(out_dir, "eta_sensitivity.csv")
    with open(path, "w") as fh:
        fh.write("eta,momentum_error,u_error,elapsed_s\n")
        for r in rows:
            fh.write(f"{r.eta!r},{r.momentum_error!r},{r.u_error!r},"
                     f"{r.elapsed!r}\n")
    _echo_provenance(out_dir, "verify eta", {"etas": eta_list})
    click.echo(f"{'eta':>5} {'hu error':>12} {'u error':>12} {'seconds':>9}")
    for r in rows:
        click.echo(f"{r.eta:>5.2f} {r.momentum_error:>12.4e} "
                   f"{r.u_error:>12.4e} {r.elapsed:>9.2f}")
    click.echo(f"table: {path}")


_GYRE_KEYS = {"dx", "dt", "years", "nu", "limiter", "splitting",
              "snapshot_days", "out", "formats", "seed", "workers"}


@main.command("gyre")
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True), help="JSON config file.")
@click.option("--dx", default=None, help="Cell size, e.g. 40km.")
@click.option("--dt", default=None, type=float, help="Time step (s).")
@click.option("--years", default=None, type=float,
              help="Simulated years (360-day years).")
@click.option("--nu", default=None, type=float, help="Viscosity (m^2/s).")
@click.option("--limiter", default=None,
              type=click.Choice(["none", "minmod", "mc", "superbee"]))
@click.option("--splitting", default=None,
              type=click.Choice(["godunov", "strang"]))
@click.option("--snapshot-days", default=None, type=float)
@click.option("--out", default=None)
@click.option("--formats", default=None, help="csv, vtk, or csv,vtk.")
@click.option("--seed", default=None, type=int)
@click.option("--workers", default=None, type=int,
              help="Reserved; runs are single-threaded for determinism.")
def gyre_cmd(config_path, **flags):
    """Spin up the wind-driven double gyre and write snapshots."""
    cfg = load_config(config_path, _GYRE_KEYS, flags)
    cfg.setdefault("dx", "40km")
    cfg.setdefault("years", 1.0)
    cfg.setdefault("limiter", "mc")
    cfg.setdefault("splitting", "strang")
    cfg.setdefault("snapshot_days", 30.0)
    cfg.setdefault("formats", "csv")
    dx = parse_length(cfg["dx"])
    setup = GyreSetup() if cfg.get("nu") is None \
        else GyreSetup(nu=float(cfg["nu"]))
    out_dir = gio.ensure_out_dir(cfg.get("out"))
    _echo_provenance(out_dir, "gyre", {**cfg, "dx_m": dx})
    t0 = time.perf_counter()
    q, records, written = run_gyre(
        setup=setup, dx=dx, dt=cfg.get("dt"), years=cfg["years"],
        splitting=cfg["splitting"], limiter=cfg["limiter"], out_dir=out_dir,
        snapshot_days=cfg["snapshot_days"],
        formats=tuple(str(cfg["formats"]).split(",")))
    elapsed = time.perf_counter() - t0
    drift = abs(records[-1].mass - records[0].mass) / records[0].mass
    click.echo(f"{len(records)} steps in {elapsed:.1f}s; "
               f"relative mass drift {drift:.2e}; "
               f"{len(written)} snapshots in {out_dir}")


_TRACER_KEYS = {"dx", "dt", "days", "spinup_years", "state", "seed",
                "distribution", "limiter", "splitting", "out", "formats",
                "workers"}


@main.command("tracer")
@click.option("--config", "config_path", default=None,
              type=click.Path(exists=True))
@click.option("--dx", default=None, help="Cell size, e.g. 10km.")
@click.option("--dt", default=None, type=float,
              help="Time step (s); default 720 (12 minutes).")
@click.option("--days", default=None, type=float, help="Simulated days.")
@click.option("--spinup-years", default=None, type=float,
              help="Years of wind spin-up before releasing the tracer.")
@click.option("--state", default=None, type=click.Path(exists=True),
              help="CSV dump of a spun-up state (fields h,hu,hv); "
                   "replaces --spinup-years.")
@click.option("--seed", default=None, type=int)
@click.option("--distribution", default=None,
              type=click.Choice(["uniform", "gaussian"]))
@click.option("--limiter", default=None,
              type=click.Choice(["none", "minmod", "mc", "superbee"]))
@click.option("--splitting", default=None,
              type=click.Choice(["godunov", "strang"]))
@click.option("--out", default=None)
@click.option("--formats", default=None)
@click.option("--workers", default=None, type=int,
              help="Reserved; runs are single-threaded for determinism.")
def tracer_cmd(config_path, **flags):
    """Release a random two-circle tracer into the spun-up gyre."""
    cfg = load_config(config_path, _TRACER_KEYS, flags)
    cfg.setdefault("dx", "10km")
    cfg.setdefault("dt", 720.0)
    cfg.setdefault("days", 360.0)
    cfg.setdefault("spinup_years", 2.0)
    cfg.setdefault("seed", 0)
    cfg.setdefault("distribution", "uniform")
    cfg.setdefault("limiter", "mc")
    cfg.setdefault("splitting", "strang")
    cfg.setdefault("formats", "csv")
    dx = parse_length(cfg["dx"])
    setup = GyreSetup()
    grid = setup.grid(dx)
    out_dir = gio.ensure_out_dir(cfg.get("out"))
    _echo_provenance(out_dir, "tracer", {**cfg, "dx_m": dx})

    if cfg.get("state") is not None:
        dump = gio.read_csv(cfg["state"])
        if (dump.grid.nx, dump.grid.ny) != (grid.nx, grid.ny):
            raise ConfigError(
                f"state grid {dump.grid.nx}x{dump.grid.ny} does not match "
                f"dx={cfg['dx']} ({grid.nx}x{grid.ny})")
        q0 = np.zeros((3,) + grid.shape)
        jj, ii = grid.interior
        for k, name in enumerate(("h", "hu", "hv")):
            q0[k][jj, ii] = dump[name]
    else:
        click.echo(f"spinning up {cfg['spinup_years']} years at "
                   f"dx={cfg['dx']} ...")
        q0, _, _ = run_gyre(setup=setup, dx=dx, years=cfg["spinup_years"],
                            splitting=cfg["splitting"],
                            limiter=cfg["limiter"])

    c0 = init_concentration(grid, seed=cfg["seed"],
                            distribution=cfg["distribution"])
    q, c, written = run_coupled(
        setup=setup, q0=q0, c0=c0, dx=dx, dt=cfg["dt"],
        t_end=cfg["days"] * DAY, splitting=cfg["splitting"],
        limiter=cfg["limiter"], out_dir=out_dir,
        formats=tuple(str(cfg["formats"]).split(",")), seed=cfg["seed"])
    x0, _ = tracer_centroid(c0, grid)
    x1, _ = tracer_centroid(c, grid)
    click.echo(f"centroid x: {x0 / 1e3:.1f} km -> {x1 / 1e3:.1f} km; "
               f"{len(written)} snapshots in {out_dir}")


@main.command("riemann-selftest")
@click.option("--n", default=10000, show_default=True)
@click.option("--seed", default=0, show_default=True)
def riemann_selftest(n, seed):
    """Property suite for the Roe interface solver on random states."""
    from .riemann import flux_x, flux_y, solve_riemann

    rng = np.random.default_rng(seed)
    g_r = 0.5
    worst_complete = 0.0
    worst_roe = 0.0
    for _ in range(n):
        direction = "x" if rng.random() < 0.5 else "y"
        hl, hr = rng.uniform(0.1, 10.0, 2)
        ul, ur, vl, vr = rng.normal(0, 2, 4)
        ql = np.array([hl, hl * ul, hl * vl])
        qr = np.array([hr, hr * ur, hr * vr])
        dec = solve_riemann(ql, qr, g_r, direction=direction)
        dq = qr - ql
        scale = max(np.abs(dq).max(), 1e-30)
        worst_complete = max(worst_complete,
                             np.abs(dec.waves.sum(axis=0) - dq).max() / scale)
        flux = flux_x if direction == "x" else flux_y
        df = flux(qr, g_r) - flux(ql, g_r)
        fscale = max(np.abs(df).max(), 1e-30)
        worst_roe = max(
            worst_roe,
            np.abs(dec.fluct_minus + dec.fluct_plus - df).max() / fscale)
    click.echo(f"{n} random interfaces: wave completeness "
               f"{worst_complete:.2e}, Roe flux-difference {worst_roe:.2e}")
    ok = worst_complete <= 1e-12 and worst_roe <= 1e-12
    click.echo("PASS" if ok else "FAIL")
    sys.exit(0 if ok else 1)


@main.command("bench")
@click.option("--n", default=200, show_default=True,
              help="Grid cells per direction.")
@click.option("--steps", default=20, show_default=True)
def bench(n, steps):
    """Time the hyperbolic kernel: compiled extension vs numpy fallback."""
    from .kernels import get_backend

    rng = np.random.default_rng(0)
    q = np.empty((3, n + 4, n + 4))
    q[0] = 1.0 + 0.1 * rng.random((n + 4, n + 4))
    q[1] = 0.1 * rng.standard_normal((n + 4, n + 4))
    q[2] = 0.1 * rng.standard_normal((n + 4, n + 4))
    dx = 1.0 / n
    dt = 0.2 * dx
    results = {}
    for name in ("python", "cython"):
        try:
            step, _ = get_backend(name)
        except ImportError:
            click.echo(f"{name:>7}: unavailable")
            continue
        step(q, dx, dx, dt, 1.0, 2, False)   # warm up
        t0 = time.perf_counter()
        for _ in range(steps):
            step(q, dx, dx, dt, 1.0, 2, False)
        results[name] = (time.perf_counter() - t0) / steps
        click.echo(f"{name:>7}: {results[name] * 1e3:8.2f} ms/step "
                   f"({n}x{n}, mc limiter)")
    if len(results) == 2:
        click.echo(f"speedup: {results['python'] / results['cython']:.1f}x")


if __name__ == "__main__":
    main()
