"""Command line entry point: run, check, study and layer subcommands."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis
from .cases import (ConfigError, SimulationError, Simulation, convergence_study, layer_run, load_config,
                    run)
from .fluxes import AdmissibilityError

STUDY_KEYS = ("J_list", "target")


def _fmt(v) -> str:
    return "%.17g" % float(v)


def cmd_run(args) -> int:
    cfg, _ = load_config(args.config, extra_keys=STUDY_KEYS)
    try:
        res = run(cfg, write=True)
    except (SimulationError, AdmissibilityError) as e:
        print(f"status = aborted: {e}")
        return 1
    meta = res.metadata
    print(f"status = {meta['status']}")
    print(f"steps = {meta['steps_done']}")
    print(f"realized_final_time = {_fmt(meta['realized_final_time'])}")
    v = meta["monotonicity"]["verdict"]
    print(f"monotonicity = {'uncertified' if v is None else v}")
    print(f"output_dir = {res.output_dir}")
    return 0


def cmd_check(args) -> int:
    cfg, _ = load_config(args.config, extra_keys=STUDY_KEYS)
    rep = Simulation(cfg).monotonicity()
    print(f"data_bound = {_fmt(Simulation(cfg).m)}")
    for line in rep.lines():
        print(line)
    return 0


def cmd_study(args) -> int:
    cfg, extras = load_config(args.config, extra_keys=STUDY_KEYS)
    J_text = args.J_list or extras.get("J_list")
    if not J_text:
        raise ConfigError("study needs J_list (config key or --J-list)")
    J_list = [int(s) for s in J_text.replace(" ", "").split(",") if s]
    target = args.target or extras.get("target", "exact")
    for line in convergence_study(cfg, J_list, target).lines():
        print(line)
    return 0


def cmd_layer(args) -> int:
    J, C, w, uw, n = args.J, args.C, args.omega, args.u_wall, args.n
    sim = layer_run(J, C, w, uw, n)
    j = np.arange(J)
    cols = {"simulation": sim}
    if w < 2.0:
        cols["longtime"] = analysis.boundary_layer_longtime(w, C, uw, j)
    if w == 1.0:
        cols["chebyshev"] = analysis.boundary_layer_chebyshev(J, C, uw, n, j)
        cols["tridiagonal"] = analysis.tridiagonal_oracle(J, C, uw, n)
    print("j," + ",".join(cols))
    for k in j:
        print(f"{k}," + ",".join(_fmt(c[k]) for c in cols.values()))
    if w < 2.0 and 2.0 - w - w * C != 0.0:
        print(f"# kappa = {_fmt(analysis.stable_root_kappa1(w, C))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqlbm", description="Lattice Boltzmann benchmarks with equilibrium boundary conditions")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run a configuration and write outputs")
    r.add_argument("config")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("check", help="print the monotonicity report of a configuration")
    c.add_argument("config")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("study", help="grid-refinement study")
    s.add_argument("config")
    s.add_argument("--J-list", dest="J_list", default=None, help="comma-separated resolutions")
    s.add_argument("--target", choices=("exact", "godunov", "self"), default=None)
    s.set_defaults(func=cmd_study)

    lay = sub.add_parser("layer", help="wrong-trace boundary layer: predictors against the solver")
    lay.add_argument("--J", type=int, default=20)
    lay.add_argument("--C", type=float, default=-0.5, help="Courant number in (-1, 0)")
    lay.add_argument("--omega", type=float, default=1.0)
    lay.add_argument("--u-wall", dest="u_wall", type=float, default=1.0)
    lay.add_argument("--n", type=int, default=400, help="number of time steps")
    lay.set_defaults(func=cmd_layer)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
