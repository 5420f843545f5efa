"""Benchmark registry, run configuration, the time-stepping driver and file output."""
from __future__ import annotations

import configparser
import json
import math
import os
from dataclasses import dataclass, field as dc_field, fields, asdict, replace
from pathlib import Path
from typing import Callable

import numpy as np

from . import analysis, reference
from .boundary import (Composite, Dirichlet, Extrapolation, ReflectiveWall, boundary_kinds, constant,
                       fill_ghosts)
from .collision import RelaxationParams, relax_guarded, relax_trt
from .equilibria import EquilibriumSpec, euler_equilibrium, initialize_field, sample_cells, scalar_equilibrium
from .fluxes import AdmissibilityError, burgers, cubic, is_admissible, transport
from .lattice import GridSpec, stream
from .monotonicity import check_monotone, max_bgk_omega

OUTPUT_ENV = "EQLBM_OUTPUT_DIR"


class SimulationError(RuntimeError):
    """Non-finite values appeared during a run."""

    def __init__(self, msg, step):
        super().__init__(msg)
        self.step = step


class ConfigError(ValueError):
    pass


def _indicator(a, b, height=1.0):
    return lambda x, y: np.where((x > a) & (x < b), height, 0.0)


def _zero(x, y):
    return np.zeros_like(np.asarray(x, dtype=float))


def _sine(x, y):
    return np.sin(2.0 * np.pi * np.asarray(x))


@dataclass(frozen=True)
class CaseDefinition:
    name: str
    stencil: str
    flux: Callable
    xlim: tuple
    final_time: float
    jx: int
    lam: float
    omega: float
    initial: dict
    ylim: tuple | None = None
    ax: float | None = None
    ay: float | None = None
    outflow_options: tuple = ()
    exact: Callable | None = None
    description: str = ""

    def default_initial(self) -> str:
        return next(iter(self.initial))


def _transport_exact(name):
    u0 = {"indicator": lambda x: np.where((x > 1 / 3) & (x < 2 / 3), 1.0, 0.0),
          "sine": lambda x: np.sin(2 * np.pi * x),
          "zero": lambda x: 0.0 * x}[name]
    return lambda t, x, y: reference.exact_transport(u0, -1.0, t, x)


def _oblique_exact(name):
    return lambda t, x, y: reference.exact_oblique_burgers(t, x, y, math.pi / 3)


def registry() -> list:
    """The five benchmark cases with their default parameters."""
    return [
        CaseDefinition(
            "transport_outflow", "D1Q2", lambda: transport(-1.0), (0.0, 1.0), 0.5, 200, 2.0, 1.0,
            {"indicator": _indicator(1 / 3, 2 / 3), "sine": _sine, "zero": _zero},
            outflow_options=("wrong_trace", "extrap1", "extrap2"), exact=_transport_exact,
            description="u_t - u_x = 0, Dirichlet 0 at the inflow x = 1, numerical choice at the outflow x = 0"),
        CaseDefinition(
            "burgers_outflow", "D1Q2", lambda: burgers(1), (0.0, 1.0), 0.2, 200, 2.0, 1.0,
            {"indicator": _indicator(0.2, 0.5, -1.0), "zero": _zero},
            outflow_options=("wrong_trace", "extrap1", "extrap2"),
            description="Burgers with a left-moving shock leaving through x = 0; T = 1/5 or 1/2"),
        CaseDefinition(
            "nonconvex_sine", "D1Q2", cubic, (0.0, 1.0), 4.0, 200, 10.0 / 7.0, 1.0,
            {"zero": _zero},
            description="flux u^3/3, inflow sin(6t) at x = 0, Dirichlet 0 at x = 1"),
        CaseDefinition(
            "burgers2d_oblique", "D2Q4", lambda: burgers(2), (0.0, 1.0), 0.5, 100, 3.0, 1.0,
            {"zero": _zero}, ylim=(0.0, 1.0), ax=0.25, ay=0.25, exact=_oblique_exact,
            description="2D Burgers, oblique unit shock at angle pi/3 entering through Dirichlet sides"),
        CaseDefinition(
            "euler_mach10", "D2Q4", lambda: None, (0.0, 4.0), 0.2, 100, 30.0, 1.35,
            {"mach10": reference.mach10_initial}, ylim=(0.0, 1.0), ax=0.25, ay=0.25,
            description="double Mach reflection of a Mach 10 shock; variant a (D2Q4) or b (D2Q5, guarded)"),
    ]


def get_case(name: str) -> CaseDefinition:
    for c in registry():
        if c.name == name:
            return c
    raise ConfigError(f"unknown case {name!r}; available: {[c.name for c in registry()]}")


@dataclass
class RunConfig:
    """A case plus overrides.  ``None`` means the case default."""

    case: str
    J: int | None = None
    lam: float | None = None
    omega: float | None = None
    omega_s: float | None = None
    omega_a: float | None = None
    T: float | None = None
    initial: str | None = None
    outflow: str = "wrong_trace"
    wrong_trace: float | None = None
    safe_extrapolation: bool = False
    quadrature: int = 1
    init_quadrature: int = 1
    variant: str = "a"
    output_dir: str | None = None
    snapshot_every: int = 0
    diagnostics_every: int = 1
    entropy_check: bool = True

    def resolved(self) -> dict:
        """Every parameter with case defaults filled in."""
        c = get_case(self.case)
        omega = self.omega if self.omega is not None else c.omega
        wt = self.wrong_trace
        if wt is None:
            # for Burgers a unit trace would be an inflow state, so the wrong trace is 0 there
            wt = 1.0 if self.case == "transport_outflow" else 0.0
        lam = self.lam if self.lam is not None else c.lam
        if self.lam is None and self.case == "euler_mach10" and self.variant == "b":
            # weight 1/8 halves the admissible wave speed at fixed lam
            lam = 2.0 * c.lam
        out = asdict(self)
        out.update(
            J=self.J if self.J is not None else c.jx,
            lam=lam,
            omega=omega,
            omega_s=self.omega_s if self.omega_s is not None else omega,
            omega_a=self.omega_a if self.omega_a is not None else omega,
            T=self.T if self.T is not None else c.final_time,
            initial=self.initial if self.initial is not None else c.default_initial(),
            wrong_trace=wt,
        )
        return out


_BOOL_KEYS = {"safe_extrapolation", "entropy_check"}


def _coerce(name, text):
    ftypes = {f.name: f.type for f in fields(RunConfig)}
    t = ftypes[name]
    text = text.strip()
    if name in _BOOL_KEYS:
        low = text.lower()
        if low not in ("true", "false", "1", "0", "yes", "no"):
            raise ConfigError(f"{name}: expected a boolean, got {text!r}")
        return low in ("true", "1", "yes")
    if "int" in t:
        return int(text)
    if "float" in t:
        return float(_fraction(text))
    return text


def _fraction(text: str) -> float:
    if "/" in text:
        a, b = text.split("/", 1)
        return float(a) / float(b)
    return float(text)


def parse_config_text(text: str, extra_keys=()) -> tuple:
    """Parse flat ``key = value`` lines into a RunConfig and a dict of extra keys."""
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string("[run]\n" + text)
    except configparser.Error as e:
        raise ConfigError(str(e)) from e
    items = dict(cp["run"])
    known = {f.name for f in fields(RunConfig)}
    unknown = set(items) - known - set(extra_keys)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    if "case" not in items:
        raise ConfigError("configuration must name a case")
    kwargs = {k: _coerce(k, v) for k, v in items.items() if k in known}
    extras = {k: v.strip() for k, v in items.items() if k in extra_keys}
    cfg = RunConfig(**kwargs)
    validate(cfg)
    return cfg, extras


def load_config(path, extra_keys=()) -> tuple:
    return parse_config_text(Path(path).read_text(), extra_keys)


def validate(cfg: RunConfig) -> None:
    c = get_case(cfg.case)
    r = cfg.resolved()
    if r["initial"] not in c.initial:
        raise ConfigError(f"{cfg.case}: initial must be one of {list(c.initial)}")
    if c.outflow_options and cfg.outflow not in c.outflow_options:
        raise ConfigError(f"{cfg.case}: outflow must be one of {list(c.outflow_options)}")
    if cfg.variant not in ("a", "b"):
        raise ConfigError("variant must be 'a' or 'b'")
    if r["J"] < 2:
        raise ConfigError("J must be at least 2")
    for k in ("omega_s", "omega_a"):
        if not 0.0 < r[k] <= 2.0:
            raise ConfigError(f"{k}={r[k]} outside (0, 2]")
    if r["lam"] <= 0 or r["T"] < 0:
        raise ConfigError("lam must be positive and T non-negative")
    if cfg.quadrature < 1 or cfg.init_quadrature < 1:
        raise ConfigError("quadrature orders must be >= 1")


# ---------------------------------------------------------------- assembly

def _euler_spec(cfg, r):
    return euler_equilibrium(cfg.variant, r["lam"])


def build_grid(case: CaseDefinition, r: dict) -> GridSpec:
    if case.name == "euler_mach10":
        # square cells of size 1/J on (0,4) x (0,1)
        return GridSpec(case.xlim, 4 * r["J"], r["lam"], r["T"], case.ylim)
    return GridSpec(case.xlim, r["J"], r["lam"], r["T"], case.ylim)


def build_equilibrium(case: CaseDefinition, cfg: RunConfig, r: dict) -> EquilibriumSpec:
    if case.name == "euler_mach10":
        return _euler_spec(cfg, r)
    return scalar_equilibrium(case.stencil, case.flux(), r["lam"], case.ax, case.ay)


def build_boundaries(case: CaseDefinition, cfg: RunConfig, r: dict, grid: GridSpec) -> dict:
    nq = cfg.quadrature
    if case.name in ("transport_outflow", "burgers_outflow"):
        if cfg.outflow == "wrong_trace":
            west = Dirichlet(constant(r["wrong_trace"]), nq)
        else:
            m = data_bound_initial(case, r, grid)
            west = Extrapolation(int(cfg.outflow[-1]), cfg.safe_extrapolation, bound=m)
        return {"west": west, "east": Dirichlet(constant(0.0), nq)}
    if case.name == "nonconvex_sine":
        inflow = lambda t, s: np.sin(6.0 * np.asarray(t)) + 0.0 * np.asarray(s)
        inflow.label = "sin(6t)"
        inflow.bound = 1.0
        return {"west": Dirichlet(inflow, nq), "east": Dirichlet(constant(0.0), nq)}
    if case.name == "burgers2d_oblique":
        side = reference.oblique_shock_datum(math.pi / 3)
        return {s: Dirichlet(side(s), nq) for s in ("west", "east", "south", "north")}
    if case.name == "euler_mach10":
        north = lambda t, s: reference.mach10_north_trace(t, s)
        north.label = "moving_shock_trace"
        return {
            "west": Dirichlet(constant(reference.U_LEFT), nq),
            "east": Dirichlet(constant(reference.U_RIGHT), nq),
            "north": Dirichlet(north, nq),
            "south": Composite([(0.0, reference.MACH10_FOOT, Dirichlet(constant(reference.U_LEFT), nq)),
                                (reference.MACH10_FOOT, 4.0, ReflectiveWall())]),
        }
    raise ConfigError(f"no boundary setup for {case.name}")


def initial_data(case: CaseDefinition, r: dict, grid: GridSpec, nq: int = 1) -> np.ndarray:
    return sample_cells(case.initial[r["initial"]], grid, nq)


def data_bound_initial(case, r, grid) -> float:
    return float(np.abs(initial_data(case, r, grid)).max())


def data_bound(case: CaseDefinition, r: dict, grid: GridSpec, bc: dict, u0: np.ndarray) -> float:
    """max of |initial data| and |Dirichlet data|.

    A datum may state its own supremum as ``bound``; otherwise it is sampled
    at every step midpoint.
    """
    m = float(np.abs(u0).max()) if u0.size else 0.0
    times = (np.arange(max(grid.n_steps, 1)) + 0.5) * grid.dt
    for side, cond in bc.items():
        conds = [p[2] for p in cond.pieces] if isinstance(cond, Composite) else [cond]
        for sub in conds:
            if isinstance(sub, Dirichlet):
                v = getattr(sub.datum, "value", getattr(sub.datum, "bound", None))
                if v is not None:
                    m = max(m, float(np.abs(v).max()))
                    continue
                s = grid.side_coordinates(side)
                for t in times:
                    m = max(m, float(np.abs(np.asarray(sub.datum(t, s))).max()))
    return m


class Simulation:
    """One configured run, advanced step by step."""

    def __init__(self, cfg: RunConfig, u0: np.ndarray | None = None, boundaries: dict | None = None,
                 record_boundary: bool = False):
        validate(cfg)
        self.cfg = cfg
        self.case = get_case(cfg.case)
        self.r = cfg.resolved()
        self.grid = build_grid(self.case, self.r)
        self.eq = build_equilibrium(self.case, cfg, self.r)
        self.bc = boundaries if boundaries is not None else build_boundaries(self.case, cfg, self.r, self.grid)
        self.u0 = u0 if u0 is not None else initial_data(self.case, self.r, self.grid, cfg.init_quadrature)
        if self.u0.ndim == 2:
            self.u0 = self.u0[..., None]
        self.field = initialize_field(self.eq, self.grid, self.u0)
        self.relaxation = RelaxationParams(self.r["omega_s"], self.r["omega_a"])
        self.euler = self.eq.flux.gamma is not None
        self.guarded = self.euler and cfg.variant == "b"
        if self.euler and not np.all(is_admissible(self.u0, self.eq.flux.gamma)):
            raise AdmissibilityError("inadmissible initial data")
        self.m = data_bound(self.case, self.r, self.grid, self.bc, self.u0)
        self.n = 0
        self.fallbacks = 0
        self.record_boundary = record_boundary
        self.boundary_log = {}
        self.initial_adjacent = {s: self._adjacent(s) for s in self.grid.sides()}
        self.diagnostics = []
        self._kappas = [] if self.euler or not cfg.entropy_check else [k * self.m for k in (-1, -0.5, 0, 0.5, 1)]

    def _adjacent(self, side):
        u = self.u0
        return {"west": u[0], "east": u[-1], "south": u[:, 0], "north": u[:, -1]}[side]

    @property
    def time(self) -> float:
        return self.n * self.grid.dt

    def moments(self) -> np.ndarray:
        return self.field.data.sum(axis=0)

    def step(self):
        """collide -> fill ghosts -> stream; returns the ghost report of this step."""
        # blow-ups are reported through SimulationError instead of floating-point warnings
        with np.errstate(over="ignore", invalid="ignore"):
            return self._step()

    def _step(self):
        u = self.moments()
        pre = self.field.data
        if self.guarded:
            post, mask = relax_guarded(self.field, self.eq, self.relaxation.omega_s)
            self.fallbacks += int(mask.sum())
        else:
            post = relax_trt(self.field, self.eq, self.relaxation)
        violations = analysis.entropy_violations(pre, post.data, self.eq, self._kappas) if self._kappas else 0
        rep = fill_ghosts(post, self.bc, self.eq, u, self.n, self.grid)
        self.field = stream(post)
        self.n += 1
        if not self.field.is_finite():
            bad = np.argwhere(~np.isfinite(self.field.data))[0]
            raise SimulationError(f"non-finite value at step {self.n}, cell {tuple(int(c) for c in bad[1:3])}", self.n)
        if self.euler:
            ok = is_admissible(self.moments(), self.eq.flux.gamma)
            if not np.all(ok):
                cell = tuple(int(c) for c in np.argwhere(~ok)[0])
                raise AdmissibilityError(f"inadmissible state at step {self.n}, cell {cell}")
        if self.record_boundary:
            for side, st in rep.states.items():
                self.boundary_log.setdefault(side, []).append(st.copy())
        every = self.cfg.diagnostics_every
        if every and self.n % every == 0:
            self.diagnostics.append(analysis.record_diagnostics(
                self.n, self.time, self.field, pre, self.eq, self.grid.dx, self.grid.dim, violations))
        return rep

    def run(self, callback=None):
        while self.n < self.grid.n_steps:
            self.step()
            if callback is not None:
                callback(self)
        return self.moments()

    def monotonicity(self):
        rep = check_monotone(self.eq.stencil.name, self.r["omega_s"], self.r["omega_a"], self.eq.ax,
                             self.eq.ay, self.r["lam"], self.eq.flux, self.m)
        if self.eq.flux.is_scalar and not rep.trivial:
            rep.omega_star, _ = max_bgk_omega(self.eq.stencil.name, self.eq.ax, self.eq.ay, self.r["lam"],
                                              self.eq.flux, self.m)
        return rep


# ---------------------------------------------------------------- outputs

@dataclass
class RunResult:
    moments: np.ndarray
    grid: GridSpec
    diagnostics: list
    snapshots: list
    metadata: dict
    output_dir: Path | None = None


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def metadata_for(sim: Simulation) -> dict:
    g = sim.grid
    rep = sim.monotonicity()
    return {
        "config": sim.r,
        "case": sim.case.name,
        "description": sim.case.description,
        "stencil": sim.eq.stencil.name,
        "flux": sim.eq.flux.name,
        "equilibrium": {"ax": sim.eq.ax, "ay": sim.eq.ay, "lam": sim.eq.lam},
        "grid": {"jx": g.jx, "jy": g.jy, "dx": g.dx, "dt": g.dt, "n_steps": g.n_steps,
                 "xlim": list(g.xlim), "ylim": list(g.ylim) if g.ylim else None},
        "realized_final_time": g.realized_time,
        "boundaries": boundary_kinds(sim.bc),
        "data_bound": sim.m,
        "monotonicity": {"verdict": rep.verdict, "trivial": rep.trivial, "omega_star": rep.omega_star,
                         "report": rep.lines()},
        "collision": "guarded_bgk" if sim.guarded else "trt",
    }


def _header(meta: dict) -> list:
    flat = {}

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        else:
            flat[prefix] = obj
    walk("", meta)
    return [f"# {k} = {v}" for k, v in flat.items() if k != "monotonicity.report"]


def write_snapshot(path: Path, grid: GridSpec, u: np.ndarray, meta_lines=()) -> None:
    X, Y = grid.mesh()
    M = u.shape[-1]
    cols = ["x"] + (["y"] if grid.dim == 2 else []) + [f"u_{k + 1}" for k in range(M)]
    lines = list(meta_lines) + [",".join(cols)]
    for i in range(grid.jx):
        for j in range(grid.jy):
            vals = [X[i, j]] + ([Y[i, j]] if grid.dim == 2 else []) + list(u[i, j])
            lines.append(",".join(_fmt(v) for v in vals))
    path.write_text("\n".join(lines) + "\n")


def write_diagnostics(path: Path, records: list, meta_lines=()) -> None:
    lines = list(meta_lines) + [",".join(analysis.DIAGNOSTIC_COLUMNS)]
    lines += [",".join(_fmt(v) for v in r.as_row()) for r in records]
    path.write_text("\n".join(lines) + "\n")


def resolve_output_dir(cfg: RunConfig) -> Path:
    env = os.environ.get(OUTPUT_ENV)
    if env:
        return Path(env)
    if cfg.output_dir:
        return Path(cfg.output_dir)
    return Path("eqlbm_output") / cfg.case


def run(cfg: RunConfig, write: bool = True) -> RunResult:
    """Run a configuration to its final time; optionally write CSV / JSON outputs.

    Aborts (after writing metadata with the failure) on non-finite values or
    inadmissible Euler states.
    """
    sim = Simulation(cfg)
    meta = metadata_for(sim)
    snaps = []

    def cb(s):
        if cfg.snapshot_every and s.n % cfg.snapshot_every == 0:
            snaps.append((s.n, s.time, s.moments().copy()))

    out_dir = resolve_output_dir(cfg) if write else None
    error = None
    try:
        sim.run(cb)
        meta["status"] = "completed"
    except (SimulationError, AdmissibilityError) as e:
        meta["status"] = f"aborted: {e}"
        error = e
    meta["steps_done"] = sim.n
    meta["guarded_fallbacks"] = sim.fallbacks
    result = RunResult(sim.moments(), sim.grid, sim.diagnostics, snaps, meta, out_dir)
    if write:
        out_dir.mkdir(parents=True, exist_ok=True)
        head = _header(meta)
        (out_dir / "metadata.json").write_text(json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")
        write_diagnostics(out_dir / "diagnostics.csv", sim.diagnostics, head)
        for n, t, u in snaps:
            write_snapshot(out_dir / f"snapshot_{n:06d}.csv", sim.grid, u, head + [f"# step = {n}", f"# time = {_fmt(t)}"])
        if error is None:
            write_snapshot(out_dir / "final.csv", sim.grid, result.moments, head)
    if error is not None:
        raise error
    return result


# ---------------------------------------------------------------- convergence

def restrict(u: np.ndarray, factor: int, dim: int) -> np.ndarray:
    """Block average of a fine (jx, jy, M) field onto a grid ``factor`` times coarser."""
    if factor == 1:
        return u
    jx, jy, M = u.shape
    if dim == 1:
        return u.reshape(jx // factor, factor, jy, M).mean(axis=1)
    return u.reshape(jx // factor, factor, jy // factor, factor, M).mean(axis=(1, 3))


def godunov_reference(case: CaseDefinition, r: dict, factor: int = 4) -> np.ndarray:
    """Godunov solution on a ``factor``-times finer grid, restricted to the run's grid, shape (J, 1, 1)."""
    if case.name not in ("transport_outflow", "burgers_outflow", "nonconvex_sine"):
        raise ConfigError(f"no Godunov reference for {case.name}")
    flux = case.flux()
    u0f = case.initial[r["initial"]]
    u0 = lambda x: u0f(x, 0.0 * x)
    if case.name == "nonconvex_sine":
        left, right = (lambda t: math.sin(6.0 * t)), None
    else:
        left, right = None, (lambda t: 0.0)
    _, u = reference.godunov_solve(flux, u0, factor * r["J"], r["lam"], r["T"], left, right, case.xlim)
    return u.reshape(r["J"], factor).mean(axis=1)[:, None, None]


def _exact_cells(case, r, grid, nq=8):
    ex = case.exact(r["initial"])
    t = grid.realized_time
    return sample_cells(lambda x, y: ex(t, x, y), grid, nq)


@dataclass
class StudyResult:
    rows: list
    slope: float | None

    def lines(self) -> list:
        out = ["J,dx,l1_error"] + [f"{J},{_fmt(dx)},{_fmt(e)}" for J, dx, e in self.rows]
        out.append(f"slope = {_fmt(self.slope) if self.slope is not None else 'undefined'}")
        return out


def convergence_study(cfg: RunConfig, J_list, target: str = "exact") -> StudyResult:
    """l1 errors over resolutions against the exact solution, a 4x Godunov reference, or the next finer run."""
    J_list = [int(J) for J in J_list]
    if len(J_list) < 2:
        raise ConfigError("need at least two resolutions")
    case = get_case(cfg.case)
    runs = {}

    def solve(J):
        if J not in runs:
            sim = Simulation(replace(cfg, J=J, diagnostics_every=0))
            runs[J] = (sim.run(), sim)
        return runs[J]

    rows = []
    if target == "self":
        for Jc, Jf in zip(J_list, J_list[1:]):
            if Jf % Jc:
                raise ConfigError(f"resolutions {Jc} and {Jf} are not nested")
            uc, sc = solve(Jc)
            uf, _ = solve(Jf)
            diff = uc - restrict(uf, Jf // Jc, sc.grid.dim)
            rows.append((Jc, sc.grid.dx, analysis.grid_lp_norm(diff, 1, sc.grid.dx, sc.grid.dim)))
    else:
        for J in J_list:
            u, sim = solve(J)
            if target == "exact":
                if case.exact is None:
                    raise ConfigError(f"{case.name} has no exact solution")
                ref = _exact_cells(case, sim.r, sim.grid)
            elif target == "godunov":
                ref = godunov_reference(case, sim.r)
            else:
                raise ConfigError(f"unknown target {target!r}")
            rows.append((J, sim.grid.dx, analysis.grid_lp_norm(u - ref, 1, sim.grid.dx, sim.grid.dim)))
    positive = [(dx, e) for _, dx, e in rows if e > 0]
    slope = analysis.convergence_rate(positive) if len(positive) >= 2 else None
    return StudyResult(rows, slope)


def layer_run(J: int, C: float, omega: float, u_wall: float, n: int) -> np.ndarray:
    """Transport solver profile after n steps from a zero datum with a constant west trace."""
    lam = -1.0 / C
    dt = 1.0 / (J * lam)
    cfg = RunConfig("transport_outflow", J=J, lam=lam, omega=omega, T=n * dt, initial="zero",
                    outflow="wrong_trace", wrong_trace=u_wall, diagnostics_every=0, entropy_check=False)
    sim = Simulation(cfg)
    for _ in range(n):
        sim.step()
    return sim.moments()[:, 0, 0]
