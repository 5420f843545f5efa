"""Linear-plus-flux equilibria and equilibrium initialisation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fluxes import FluxModel, euler2d
from .lattice import DistributionField, GridSpec, VelocitySet, velocity_set


class StencilMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EquilibriumSpec:
    """f_zero = (1 - 2ax - 2ay) u, f_right/left = ax u +/- fx(u)/(2 lam), same along y."""

    stencil: VelocitySet
    flux: FluxModel
    lam: float
    ax: float
    ay: float = 0.0

    def __post_init__(self):
        st = self.stencil
        if st.dim == 1 and self.ay != 0.0:
            raise StencilMismatch(f"{st.name}: ay must be 0 on a 1D stencil")
        if not st.has("zero") and abs(self.zero_weight) > 1e-14:
            raise StencilMismatch(f"{st.name}: no rest velocity, so 1 - 2ax - 2ay must vanish (got {self.zero_weight})")
        if self.lam <= 0:
            raise ValueError("lattice velocity must be positive")

    @property
    def zero_weight(self) -> float:
        return 1.0 - 2.0 * self.ax - 2.0 * self.ay

    def __call__(self, u) -> np.ndarray:
        """Equilibria of states ``u`` with shape (..., M); returns (q, ..., M)."""
        u = np.asarray(u, dtype=float)
        st = self.stencil
        out = np.empty((st.q,) + u.shape)
        half = 1.0 / (2.0 * self.lam)
        if st.has("right"):
            phx = self.flux.fx(u) * half
            out[st.index("right")] = self.ax * u + phx
            out[st.index("left")] = self.ax * u - phx
        if st.has("up"):
            phy = self.flux.fy(u) * half
            out[st.index("up")] = self.ay * u + phy
            out[st.index("down")] = self.ay * u - phy
        if st.has("zero"):
            out[st.index("zero")] = self.zero_weight * u
        return out

    def component(self, label: str, u) -> np.ndarray:
        """Equilibrium of a single velocity, avoiding the full evaluation."""
        u = np.asarray(u, dtype=float)
        half = 1.0 / (2.0 * self.lam)
        if label == "right":
            return self.ax * u + self.flux.fx(u) * half
        if label == "left":
            return self.ax * u - self.flux.fx(u) * half
        if label == "up":
            return self.ay * u + self.flux.fy(u) * half
        if label == "down":
            return self.ay * u - self.flux.fy(u) * half
        return self.zero_weight * u


def scalar_equilibrium(stencil_name: str, flux: FluxModel, lam: float, ax: float | None = None,
                       ay: float | None = None) -> EquilibriumSpec:
    """Equilibrium spec with the stencil's forced coefficients filled in."""
    st = velocity_set(stencil_name)
    if stencil_name == "D1Q2":
        ax, ay = 0.5, 0.0
    elif stencil_name == "D1Q3":
        ay = 0.0
    elif stencil_name == "D2Q4" and ay is None and ax is not None:
        ay = 0.5 - ax
    if ax is None or ay is None:
        raise ValueError(f"{stencil_name}: equilibrium coefficients required")
    return EquilibriumSpec(st, flux, lam, ax, ay)


def euler_equilibrium(variant: str, lam: float, gamma: float = 1.4) -> EquilibriumSpec:
    """Variant 'a': D2Q4 with coefficients 1/4; variant 'b': D2Q5 with 1/8 and rest weight 1/2."""
    if variant == "a":
        return EquilibriumSpec(velocity_set("D2Q4"), euler2d(gamma), lam, 0.25, 0.25)
    if variant == "b":
        return EquilibriumSpec(velocity_set("D2Q5"), euler2d(gamma), lam, 0.125, 0.125)
    raise ValueError(f"unknown Euler variant {variant!r}")


def sample_cells(func: Callable, grid: GridSpec, nq: int = 1) -> np.ndarray:
    """Cell values of ``func(x, y)`` as shape (jx, jy, M).

    ``nq == 1`` samples cell centres; larger ``nq`` averages an nq^d uniform
    midpoint sub-grid, approximating the cell mean.
    """
    if nq < 1:
        raise ValueError("nq must be >= 1")
    dx = grid.dx
    offsets = (np.arange(nq) + 0.5) / nq - 0.5
    X, Y = grid.mesh()
    yoffs = offsets if grid.dim == 2 else np.zeros(1)
    acc = None
    for ox in offsets:
        for oy in yoffs:
            v = np.asarray(func(X + ox * dx, Y + oy * dx), dtype=float)
            if v.ndim == 2:
                v = v[..., None]
            acc = v if acc is None else acc + v
    return acc / (len(offsets) * len(yoffs))


def initialize_field(spec: EquilibriumSpec, grid: GridSpec, u0) -> DistributionField:
    """Field at equilibrium of the cell data ``u0`` (array (jx, jy, M) or callable of (x, y))."""
    if callable(u0):
        u0 = sample_cells(u0, grid)
    u0 = np.asarray(u0, dtype=float)
    if u0.ndim == 2:
        u0 = u0[..., None]
    if u0.shape[:2] != grid.shape:
        raise ValueError(f"initial data shape {u0.shape} does not match grid {grid.shape}")
    return DistributionField(spec.stencil, spec(u0))
