"""Reference solutions: scalar Godunov scheme and exact benchmark solutions."""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .fluxes import FluxModel, max_abs_flux_derivative

U_LEFT = np.array([8.0, 57.16, -33.0, 563.52])
U_RIGHT = np.array([1.4, 0.0, 0.0, 2.5])
MACH10_FOOT = 1.0 / 6.0


class CFLError(ValueError):
    pass


def _interval_extremum(flux: Callable, lo, hi, critical, take_min: bool):
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    best = np.minimum(flux(lo), flux(hi)) if take_min else np.maximum(flux(lo), flux(hi))
    for c in critical:
        inside = (lo <= c) & (c <= hi)
        fc = float(flux(np.array(c)))
        cand = np.minimum(best, fc) if take_min else np.maximum(best, fc)
        best = np.where(inside, cand, best)
    return best


def godunov_flux(model: FluxModel, ul, ur, axis: str = "x"):
    """min of the flux over [ul, ur] when ul <= ur, max over [ur, ul] otherwise."""
    ul = np.asarray(ul, dtype=float)
    ur = np.asarray(ur, dtype=float)
    f = lambda v: model.flux(axis, v)
    crit = model.flux_critical(axis)
    rising = _interval_extremum(f, ul, ur, crit, take_min=True)
    falling = _interval_extremum(f, ur, ul, crit, take_min=False)
    return np.where(ul <= ur, rising, falling)


def godunov_step(u: np.ndarray, model: FluxModel, left, right, dx: float, dt: float,
                 check_cfl: bool = True) -> np.ndarray:
    """One first-order finite-volume update of 1D cell averages.

    ``left`` / ``right`` are the ghost states beyond each end.
    """
    u = np.asarray(u, dtype=float)
    ext = np.concatenate([[left], u, [right]])
    if check_cfl:
        m = float(np.max(np.abs(ext)))
        speed = max_abs_flux_derivative(model, "x", m)
        if speed * dt / dx > 1.0 + 1e-12:
            raise CFLError(f"CFL number {speed * dt / dx:.4g} exceeds 1")
    F = godunov_flux(model, ext[:-1], ext[1:])
    return u - dt / dx * (F[1:] - F[:-1])


def godunov_solve(model: FluxModel, u0: Callable, jx: int, lam: float, final_time: float,
                  left: Callable | None = None, right: Callable | None = None,
                  xlim=(0.0, 1.0)):
    """Run Godunov with dt = dx / lam.

    ``left`` / ``right`` are Dirichlet data functions of time (evaluated at
    the step midpoint); ``None`` means first-order extrapolation.
    """
    dx = (xlim[1] - xlim[0]) / jx
    dt = dx / lam
    n = int(round(final_time / dt))
    x = xlim[0] + (np.arange(jx) + 0.5) * dx
    u = np.asarray(u0(x), dtype=float) * np.ones(jx)
    for k in range(n):
        tm = (k + 0.5) * dt
        gl = u[0] if left is None else float(left(tm))
        gr = u[-1] if right is None else float(right(tm))
        u = godunov_step(u, model, gl, gr, dx, dt)
    return x, u


def exact_transport(u0: Callable, v: float, t, x, inflow: Callable | None = None, xlim=(0.0, 1.0)):
    """Characteristic solution of u_t + v u_x = 0 on an interval.

    Points whose characteristic entered through the inflow end take
    ``inflow(t_entry)`` (zero when no inflow datum is given).
    """
    x = np.asarray(x, dtype=float)
    foot = x - v * t
    inside = (foot >= xlim[0]) & (foot <= xlim[1])
    out = np.where(inside, u0(np.clip(foot, *xlim)), 0.0).astype(float)
    if inflow is not None and v != 0.0:
        edge = xlim[1] if v < 0 else xlim[0]
        t_entry = t - (x - edge) / v
        vals = np.vectorize(lambda s: float(inflow(s)))(np.atleast_1d(t_entry)).reshape(np.shape(t_entry))
        out = np.where(inside, out, vals)
    return out


def exact_oblique_burgers(t, x, y, theta: float):
    """Unit shock with normal (cos theta, sin theta), translated with velocity (1/2, 1/2)."""
    arg = math.cos(theta) * (np.asarray(x) - 0.5 * t) + math.sin(theta) * (np.asarray(y) - 0.5 * t)
    return (arg <= 0).astype(float)


def oblique_shock_datum(theta: float) -> Callable:
    """Exact oblique-shock trace, indexed by the side the boundary sits on."""
    def on_side(side: str):
        def datum(t, s):
            s = np.asarray(s, dtype=float)
            if side == "west":
                return exact_oblique_burgers(t, 0.0, s, theta)
            if side == "east":
                return exact_oblique_burgers(t, 1.0, s, theta)
            if side == "south":
                return exact_oblique_burgers(t, s, 0.0, theta)
            return exact_oblique_burgers(t, s, 1.0, theta)
        datum.label = f"oblique_shock_{side}"
        return datum
    return on_side


def mach10_shock_position(t: float, y: float = 1.0) -> float:
    """x-position of the undisturbed 60-degree Mach-10 shock at height y."""
    return MACH10_FOOT + (y + 20.0 * t) / math.sqrt(3.0)


def mach10_north_trace(t, x):
    """Pre-shock state left of the moving shock trace on y = 1, post-shock right of it."""
    x = np.asarray(x, dtype=float)
    behind = x <= mach10_shock_position(t)
    return np.where(behind[..., None], U_LEFT, U_RIGHT)


def mach10_initial(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    behind = (y - math.sqrt(3.0) * (x - MACH10_FOOT)) >= 0
    return np.where(behind[..., None], U_LEFT, U_RIGHT)
