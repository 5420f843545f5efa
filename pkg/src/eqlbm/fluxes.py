"""Flux functions for the benchmark conservation laws.

Every evaluator maps an array of states of shape ``(..., M)`` to fluxes of the
same shape.  Scalar models also expose the flux derivative together with the
critical points needed for exact extrema over intervals.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class AdmissibilityError(ValueError):
    """Euler state with non-positive density or pressure."""


@dataclass(frozen=True)
class FluxModel:
    name: str
    ncomp: int
    fx: Callable
    fy: Callable
    dfx: Callable | None = None
    dfy: Callable | None = None
    # roots of fx', fy' (interior extrema of the flux itself)
    flux_critical_x: tuple = ()
    flux_critical_y: tuple = ()
    # roots of fx'', fy'' (interior extrema of the derivative)
    derivative_critical_x: tuple = ()
    derivative_critical_y: tuple = ()
    gamma: float | None = None

    @property
    def is_scalar(self) -> bool:
        return self.ncomp == 1

    def flux(self, axis: str, u):
        return self.fx(u) if axis == "x" else self.fy(u)

    def derivative(self, axis: str):
        return self.dfx if axis == "x" else self.dfy

    def flux_critical(self, axis: str) -> tuple:
        return self.flux_critical_x if axis == "x" else self.flux_critical_y

    def derivative_critical(self, axis: str) -> tuple:
        return self.derivative_critical_x if axis == "x" else self.derivative_critical_y


def _zero(u):
    return np.zeros_like(np.asarray(u, dtype=float))


def transport(vx: float, vy: float = 0.0) -> FluxModel:
    return FluxModel(
        name=f"transport(V=({vx:g},{vy:g}))",
        ncomp=1,
        fx=lambda u: vx * np.asarray(u, dtype=float),
        fy=lambda u: vy * np.asarray(u, dtype=float),
        dfx=lambda u: np.full_like(np.asarray(u, dtype=float), vx),
        dfy=lambda u: np.full_like(np.asarray(u, dtype=float), vy),
    )


def burgers(dim: int = 1) -> FluxModel:
    def f(u):
        u = np.asarray(u, dtype=float)
        return 0.5 * u * u

    def df(u):
        return np.asarray(u, dtype=float).copy()

    return FluxModel(
        name="burgers" if dim == 1 else "burgers2d",
        ncomp=1,
        fx=f,
        fy=f if dim == 2 else _zero,
        dfx=df,
        dfy=df if dim == 2 else _zero,
        flux_critical_x=(0.0,),
        flux_critical_y=(0.0,) if dim == 2 else (),
    )


def cubic() -> FluxModel:
    """Non-convex flux u^3/3 along x only."""
    return FluxModel(
        name="cubic",
        ncomp=1,
        fx=lambda u: np.asarray(u, dtype=float) ** 3 / 3.0,
        fy=_zero,
        dfx=lambda u: np.asarray(u, dtype=float) ** 2,
        dfy=_zero,
        flux_critical_x=(0.0,),
        derivative_critical_x=(0.0,),
    )


def _primitive(u, gamma):
    u = np.asarray(u, dtype=float)
    rho = u[..., 0]
    if np.any(~(rho > 0)):
        bad = np.argwhere(~(rho > 0))
        raise AdmissibilityError(f"non-positive density at index {tuple(bad[0])}")
    vx = u[..., 1] / rho
    vy = u[..., 2] / rho
    p = (gamma - 1.0) * (u[..., 3] - 0.5 * rho * (vx * vx + vy * vy))
    return rho, vx, vy, p


def euler2d(gamma: float = 1.4) -> FluxModel:
    def fx(u):
        rho, vx, vy, p = _primitive(u, gamma)
        E = np.asarray(u, dtype=float)[..., 3]
        return np.stack([rho * vx, rho * vx * vx + p, rho * vx * vy, (E + p) * vx], axis=-1)

    def fy(u):
        rho, vx, vy, p = _primitive(u, gamma)
        E = np.asarray(u, dtype=float)[..., 3]
        return np.stack([rho * vy, rho * vx * vy, rho * vy * vy + p, (E + p) * vy], axis=-1)

    return FluxModel(name="euler2d", ncomp=4, fx=fx, fy=fy, gamma=gamma)


@dataclass(frozen=True)
class EulerState:
    rho: float
    mx: float
    my: float
    energy: float
    gamma: float = 1.4

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.mx, self.my, self.energy])


def euler_pressure(state, gamma: float | None = None):
    """Ideal-gas pressure of conserved states; accepts an EulerState or (..., 4) arrays."""
    if isinstance(state, EulerState):
        gamma = state.gamma
        state = state.as_array()
    if gamma is None:
        gamma = 1.4
    u = np.asarray(state, dtype=float)
    rho = u[..., 0]
    if np.any(rho == 0):
        raise ZeroDivisionError("zero density: velocity undefined")
    kinetic = 0.5 * (u[..., 1] ** 2 + u[..., 2] ** 2) / rho
    return (gamma - 1.0) * (u[..., 3] - kinetic)


def is_admissible(u, gamma: float = 1.4) -> np.ndarray:
    """Cell-wise mask of rho > 0 and p > 0."""
    u = np.asarray(u, dtype=float)
    rho = u[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        safe_rho = np.where(rho > 0, rho, 1.0)
        p = (gamma - 1.0) * (u[..., 3] - 0.5 * (u[..., 1] ** 2 + u[..., 2] ** 2) / safe_rho)
    return (rho > 0) & (p > 0) & np.isfinite(p)


def eval_flux(model: FluxModel, axis: str, u):
    return model.flux(axis, u)


def max_abs_flux_derivative(model: FluxModel, axis: str, m: float) -> float:
    """Exact max of |flux'| on [-m, m] from endpoints and stored critical points."""
    if not model.is_scalar:
        raise ValueError(f"{model.name}: derivative bound only defined for scalar fluxes")
    if m < 0:
        raise ValueError("m must be non-negative")
    df = model.derivative(axis)
    pts = [-m, m] + [c for c in model.derivative_critical(axis) if -m <= c <= m]
    return float(np.max(np.abs(df(np.array(pts, dtype=float)))))
