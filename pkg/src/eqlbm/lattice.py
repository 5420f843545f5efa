"""Velocity stencils, grids, distribution storage and the streaming step.

Distributions are stored as one array of shape ``(q, Jx, Jy, M)``: one slab per
discrete velocity (structure of arrays), cells row-major, ``M`` conserved
components last.  1D problems use ``Jy == 1``.  Each moving velocity owns a
one-cell ghost strip on the side it enters from.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

# velocity label -> (displacement, inflow side of its ghost strip)
_VELOCITIES = {
    "zero": ((0, 0), None),
    "right": ((1, 0), "west"),
    "left": ((-1, 0), "east"),
    "up": ((0, 1), "south"),
    "down": ((0, -1), "north"),
}
_OPPOSITE = {"zero": "zero", "right": "left", "left": "right", "up": "down", "down": "up"}

STENCIL_VELOCITIES = {
    "D1Q2": ("right", "left"),
    "D1Q3": ("zero", "right", "left"),
    "D2Q4": ("right", "left", "up", "down"),
    "D2Q5": ("zero", "right", "left", "up", "down"),
}


class ShapeError(ValueError):
    pass


class GhostError(RuntimeError):
    """A ghost strip needed by the streaming step was not filled."""


@dataclass(frozen=True)
class VelocitySet:
    name: str
    labels: tuple
    displacements: tuple
    opposite: tuple

    @property
    def q(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return 2 if self.name.startswith("D2") else 1

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def has(self, label: str) -> bool:
        return label in self.labels

    def inflow_side(self, label: str):
        return _VELOCITIES[label][1]

    def moving(self):
        return [lab for lab in self.labels if lab != "zero"]


def velocity_set(name: str) -> VelocitySet:
    try:
        labels = STENCIL_VELOCITIES[name]
    except KeyError:
        raise ValueError(f"unknown stencil {name!r}; expected one of {sorted(STENCIL_VELOCITIES)}")
    disp = tuple(_VELOCITIES[lab][0] for lab in labels)
    opp = tuple(labels.index(_OPPOSITE[lab]) for lab in labels)
    return VelocitySet(name, labels, disp, opp)


@dataclass(frozen=True)
class GridSpec:
    """Uniform square-cell grid plus the time step implied by the lattice velocity.

    ``jx`` cells cover ``xlim``; the cell size fixes ``jy`` for 2D domains.
    """

    xlim: tuple
    jx: int
    lam: float
    final_time: float
    ylim: tuple | None = None

    def __post_init__(self):
        if self.jx < 1:
            raise ValueError("jx must be positive")
        if self.lam <= 0:
            raise ValueError("lattice velocity must be positive")
        if self.ylim is not None:
            ny = (self.ylim[1] - self.ylim[0]) / self.dx
            if abs(ny - round(ny)) > 1e-9:
                raise ValueError("y extent is not a whole number of cells")

    @property
    def dim(self) -> int:
        return 1 if self.ylim is None else 2

    @property
    def dx(self) -> float:
        return (self.xlim[1] - self.xlim[0]) / self.jx

    @property
    def jy(self) -> int:
        if self.ylim is None:
            return 1
        return int(round((self.ylim[1] - self.ylim[0]) / self.dx))

    @property
    def shape(self) -> tuple:
        return (self.jx, self.jy)

    @property
    def dt(self) -> float:
        return self.dx / self.lam

    @property
    def n_steps(self) -> int:
        return int(round(self.final_time / self.dt))

    @property
    def realized_time(self) -> float:
        return self.n_steps * self.dt

    def x_centers(self) -> np.ndarray:
        return self.xlim[0] + (np.arange(self.jx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        if self.ylim is None:
            return np.zeros(1)
        return self.ylim[0] + (np.arange(self.jy) + 0.5) * self.dx

    def mesh(self):
        """Cell-centre coordinates, each of shape (jx, jy)."""
        return np.meshgrid(self.x_centers(), self.y_centers(), indexing="ij")

    def side_coordinates(self, side: str) -> np.ndarray:
        """Face-centre tangential coordinates along a side."""
        if side in ("west", "east"):
            return self.y_centers()
        return self.x_centers()

    def side_length(self, side: str) -> int:
        return self.jy if side in ("west", "east") else self.jx

    def sides(self):
        return ("west", "east") if self.dim == 1 else ("west", "east", "south", "north")


@dataclass
class DistributionField:
    stencil: VelocitySet
    data: np.ndarray
    ghosts: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.data.ndim != 4 or self.data.shape[0] != self.stencil.q:
            raise ShapeError(
                f"{self.stencil.name} expects data of shape (q={self.stencil.q}, jx, jy, M), got {self.data.shape}"
            )
        if self.stencil.dim == 1 and self.data.shape[2] != 1:
            raise ShapeError("1D stencils require jy == 1")

    @classmethod
    def zeros(cls, stencil: VelocitySet, grid: GridSpec, ncomp: int) -> "DistributionField":
        return cls(stencil, np.zeros((stencil.q, grid.jx, grid.jy, ncomp)))

    @property
    def shape(self) -> tuple:
        return self.data.shape[1:3]

    @property
    def ncomp(self) -> int:
        return self.data.shape[3]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.data[self.stencil.index(label)]

    def copy(self) -> "DistributionField":
        return DistributionField(self.stencil, self.data.copy(), {k: v.copy() for k, v in self.ghosts.items()})

    def ghost_shape(self, label: str) -> tuple:
        jx, jy = self.shape
        n = jy if label in ("right", "left") else jx
        return (n, self.ncomp)

    def set_ghost(self, label: str, values) -> None:
        if label not in self.stencil.moving():
            raise ShapeError(f"{self.stencil.name} has no ghost strip for velocity {label!r}")
        arr = np.broadcast_to(np.asarray(values, dtype=float), self.ghost_shape(label)).copy()
        self.ghosts[label] = arr

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.data)))


def compute_moments(field: DistributionField) -> np.ndarray:
    """Conserved moment per cell, shape (jx, jy, M).

    Summation runs over the stencil's fixed velocity order so results are
    reproducible bit for bit.
    """
    data = field.data
    if data.ndim != 4:
        raise ShapeError("distribution data must be 4D")
    u = data[0].copy()
    for i in range(1, data.shape[0]):
        u += data[i]
    return u


def stream(post_collision: DistributionField) -> DistributionField:
    """Shift every velocity slab by its displacement, pulling in ghost strips.

    The input is left untouched; the result carries no ghosts.
    """
    st = post_collision.stencil
    src = post_collision.data
    out = np.empty_like(src)
    for i, label in enumerate(st.labels):
        if label == "zero":
            out[i] = src[i]
            continue
        ghost = post_collision.ghosts.get(label)
        if ghost is None:
            raise GhostError(f"ghost strip for velocity {label!r} ({st.inflow_side(label)} side) is not filled")
        if ghost.shape != post_collision.ghost_shape(label):
            raise ShapeError(f"ghost strip for {label!r} has shape {ghost.shape}")
        if label == "right":
            out[i, 1:] = src[i, :-1]
            out[i, 0] = ghost
        elif label == "left":
            out[i, :-1] = src[i, 1:]
            out[i, -1] = ghost
        elif label == "up":
            out[i, :, 1:] = src[i, :, :-1]
            out[i, :, 0] = ghost
        else:
            out[i, :, :-1] = src[i, :, 1:]
            out[i, :, -1] = ghost
    return DistributionField(st, out)
