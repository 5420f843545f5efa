"""Ghost-strip filling from equilibria.

Each side of the domain carries one boundary condition.  After collision and
before streaming, the incoming velocity's ghost strip on that side receives
``feq_i(state)``, where the state comes from prescribed data (Dirichlet), from
the interior moments (extrapolation, reflective wall) or from a mix of both
along the side (composite).
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .equilibria import EquilibriumSpec
from .fluxes import AdmissibilityError, is_admissible
from .lattice import DistributionField, GridSpec

GHOST_VELOCITY = {"west": "right", "east": "left", "south": "up", "north": "down"}
SIDES = ("west", "east", "south", "north")


def constant(value) -> Callable:
    """Datum returning the same state everywhere and always."""
    value = np.atleast_1d(np.asarray(value, dtype=float))

    def datum(t, s):
        shape = np.broadcast(np.asarray(t), np.asarray(s)).shape
        return np.broadcast_to(value, shape + value.shape)

    datum.value = value
    return datum


def _as_states(values, shape, ncomp):
    v = np.asarray(values, dtype=float)
    if v.shape == shape:
        v = v[..., None]
    return np.broadcast_to(v, shape + (ncomp,))


@dataclass
class Dirichlet:
    """Equilibrium of the time-space mean of ``datum(t, s)`` over each step and face."""

    datum: Callable
    nq: int = 1


@dataclass
class Extrapolation:
    """Equilibrium of the extrapolated trace: u_0 (order 1) or 2 u_0 - u_1 (order 2)."""

    order: int = 1
    safe: bool = False
    bound: float | None = None

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ValueError("extrapolation order must be 1 or 2")
        if self.safe and self.bound is None:
            raise ValueError("safe mode needs the data bound m")


@dataclass
class ReflectiveWall:
    """Equilibrium of the adjacent cell with its wall-normal momentum reversed."""


@dataclass
class Composite:
    """Piecewise condition along a side: list of (s_start, s_end, condition)."""

    pieces: list = dc_field(default_factory=list)

    def validate(self, lo: float, hi: float, tol: float = 1e-12) -> None:
        if not self.pieces:
            raise ValueError("empty composite boundary")
        pcs = sorted(self.pieces, key=lambda p: p[0])
        if abs(pcs[0][0] - lo) > tol or abs(pcs[-1][1] - hi) > tol:
            raise ValueError(f"composite pieces must cover [{lo}, {hi}]")
        for (a0, a1, _), (b0, b1, _) in zip(pcs, pcs[1:]):
            if abs(a1 - b0) > tol:
                raise ValueError("composite pieces must partition the side without gaps or overlaps")
        for a, b, cond in pcs:
            if b <= a:
                raise ValueError("composite piece with empty interval")
            if isinstance(cond, Composite):
                raise ValueError("nested composite boundaries are not supported")


def side_extent(grid: GridSpec, side: str) -> tuple:
    if side in ("west", "east"):
        return grid.ylim if grid.ylim is not None else (0.0, 0.0)
    return grid.xlim


def boundary_datum_average(datum: Callable, grid: GridSpec, side: str, n: int, ncomp: int = 1,
                           nq: int = 1, cells=None) -> np.ndarray:
    """Mean of ``datum`` over [t_n, t_n+1] x face, per boundary cell, shape (L, M).

    ``nq == 1`` is the time-space midpoint rule; otherwise an nq x nq uniform
    midpoint sub-grid (time only for 1D sides).
    """
    if nq < 1:
        raise ValueError("nq must be >= 1")
    dt, dx = grid.dt, grid.dx
    s_centres = grid.side_coordinates(side)
    if cells is not None:
        s_centres = s_centres[np.atleast_1d(cells)]
    frac = (np.arange(nq) + 0.5) / nq
    t_pts = n * dt + frac * dt
    tangential = grid.dim == 2
    s_offs = (frac - 0.5) * dx if tangential else np.zeros(1)
    acc = np.zeros((len(s_centres), ncomp))
    for t in t_pts:
        for ds in s_offs:
            s = s_centres + ds
            acc += _as_states(datum(t, s), s.shape, ncomp)
    return acc / (len(t_pts) * len(s_offs))


def _adjacent(u: np.ndarray, side: str, depth: int) -> np.ndarray:
    if side == "west":
        return u[depth]
    if side == "east":
        return u[-1 - depth]
    if side == "south":
        return u[:, depth]
    return u[:, -1 - depth]


def _normal_component(side: str) -> int:
    return 1 if side in ("west", "east") else 2


@dataclass
class GhostReport:
    """What the last ghost fill used: per-side boundary states and flagged traces."""

    states: dict = dc_field(default_factory=dict)
    dirichlet: dict = dc_field(default_factory=dict)
    out_of_range: int = 0


def _side_states(cond, side, grid, eq, u, n, report, sel=None):
    """Boundary states for the cells ``sel`` of one side (all cells when None)."""
    ncomp = u.shape[-1]
    if isinstance(cond, Dirichlet):
        vals = boundary_datum_average(cond.datum, grid, side, n, ncomp, cond.nq, cells=sel)
        return vals, True
    adj = _adjacent(u, side, 0)
    if sel is not None:
        adj = adj[sel]
    if isinstance(cond, Extrapolation):
        if cond.order == 1:
            vals = adj.copy()
        else:
            nxt = _adjacent(u, side, 1)
            if sel is not None:
                nxt = nxt[sel]
            vals = 2.0 * adj - nxt
        if eq.flux.gamma is not None:
            ok = is_admissible(vals, eq.flux.gamma)
            if not np.all(ok):
                raise AdmissibilityError(f"extrapolated {side} trace inadmissible at boundary cell {int(np.argmin(ok))}")
        elif cond.bound is not None:
            over = np.abs(vals) > cond.bound + 1e-12
            report.out_of_range += int(over.sum())
            if cond.safe:
                vals = np.clip(vals, -cond.bound, cond.bound)
        return vals, False
    if isinstance(cond, ReflectiveWall):
        if ncomp < 3:
            raise ValueError("reflective wall needs a momentum component (Euler states)")
        vals = adj.copy()
        vals[..., _normal_component(side)] *= -1.0
        return vals, False
    raise TypeError(f"unsupported boundary condition {cond!r}")


def fill_ghosts(field: DistributionField, spec: dict, eq: EquilibriumSpec, moments: np.ndarray,
                n: int, grid: GridSpec) -> GhostReport:
    """Fill every ghost strip of a post-collision field in place.

    ``moments`` are the interior moments of the current step (collision
    conserves them, so pre- and post-collision values coincide); ``n`` is the
    step index, used to time-average Dirichlet data over [t_n, t_n+1].
    """
    report = GhostReport()
    for side in grid.sides():
        label = GHOST_VELOCITY[side]
        if not field.stencil.has(label):
            continue
        if side not in spec:
            raise ValueError(f"no boundary condition given for the {side} side")
        cond = spec[side]
        L = grid.side_length(side)
        if isinstance(cond, Composite):
            lo, hi = side_extent(grid, side)
            cond.validate(lo, hi)
            s = grid.side_coordinates(side)
            states = np.empty((L, moments.shape[-1]))
            is_dir = np.zeros(L, dtype=bool)
            assigned = np.zeros(L, dtype=bool)
            for k, (a, b, sub) in enumerate(sorted(cond.pieces, key=lambda p: p[0])):
                last = k == len(cond.pieces) - 1
                sel = np.nonzero((s >= a) & ((s <= b) if last else (s < b)) & ~assigned)[0]
                if sel.size == 0:
                    continue
                vals, d = _side_states(sub, side, grid, eq, moments, n, report, sel)
                states[sel] = vals
                is_dir[sel] = d
                assigned[sel] = True
        else:
            states, d = _side_states(cond, side, grid, eq, moments, n, report)
            is_dir = np.full(L, d)
        field.set_ghost(label, eq.component(label, states))
        report.states[side] = states
        report.dirichlet[side] = is_dir
    return report


def boundary_kinds(spec: dict) -> dict:
    """Readable per-side description, used in run metadata."""
    def describe(c):
        if isinstance(c, Dirichlet):
            v = getattr(c.datum, "value", None)
            name = getattr(c.datum, "label", None)
            if v is not None:
                return f"dirichlet(const={np.array2string(v, separator=',')})"
            return f"dirichlet({name or 'function'}, nq={c.nq})"
        if isinstance(c, Extrapolation):
            return f"extrapolation(order={c.order}, safe={c.safe})"
        if isinstance(c, ReflectiveWall):
            return "reflective_wall"
        if isinstance(c, Composite):
            return "composite[" + "; ".join(f"{a:g}..{b:g}: {describe(s)}" for a, b, s in c.pieces) + "]"
        return repr(c)

    return {side: describe(c) for side, c in spec.items()}
