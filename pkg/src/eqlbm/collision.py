"""TRT / BGK relaxation and a positivity-guarded BGK for the Euler equations."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibria import EquilibriumSpec
from .fluxes import AdmissibilityError, is_admissible
from .lattice import DistributionField


@dataclass(frozen=True)
class RelaxationParams:
    omega_s: float
    omega_a: float

    def __post_init__(self):
        for name in ("omega_s", "omega_a"):
            w = getattr(self, name)
            if not 0.0 < w <= 2.0:
                raise ValueError(f"{name}={w} outside (0, 2]")

    @classmethod
    def bgk(cls, omega: float) -> "RelaxationParams":
        return cls(omega, omega)


def collide(f: np.ndarray, spec: EquilibriumSpec, omega_s: float, omega_a: float) -> np.ndarray:
    """TRT collision on raw distribution arrays of shape (q, ..., M).

    With w+ = (ws + wa)/2 and w- = (ws - wa)/2, every velocity i with
    opposite j relaxes as f_i + w+ (feq_i - f_i) + w- (feq_j - f_j); the rest
    velocity is its own opposite, which leaves it with plain rate ws.
    """
    u = f.sum(axis=0)
    feq = spec(u)
    opp = list(spec.stencil.opposite)
    wp = 0.5 * (omega_s + omega_a)
    wm = 0.5 * (omega_s - omega_a)
    neq = feq - f
    return f + wp * neq + wm * neq[opp]


def relax_trt(field: DistributionField, spec: EquilibriumSpec, params: RelaxationParams) -> DistributionField:
    return DistributionField(field.stencil, collide(field.data, spec, params.omega_s, params.omega_a))


def relax_bgk(field: DistributionField, spec: EquilibriumSpec, omega: float) -> DistributionField:
    return relax_trt(field, spec, RelaxationParams.bgk(omega))


def _lookahead_moments(fstar: np.ndarray, stencil) -> np.ndarray:
    """Moments after a provisional stream; missing inflow reuses the cell's own value."""
    nxt = np.zeros(fstar.shape[1:])
    for i, label in enumerate(stencil.labels):
        g = fstar[i]
        if label == "right":
            g = np.concatenate([g[:1], g[:-1]], axis=0)
        elif label == "left":
            g = np.concatenate([g[1:], g[-1:]], axis=0)
        elif label == "up":
            g = np.concatenate([g[:, :1], g[:, :-1]], axis=1)
        elif label == "down":
            g = np.concatenate([g[:, 1:], g[:, -1:]], axis=1)
        nxt += g
    return nxt


def _source_cells(bad: np.ndarray, stencil) -> np.ndarray:
    """Cells whose post-collision values stream into any flagged cell."""
    mask = bad.copy()
    for label in stencil.moving():
        if label == "right":
            mask[:-1] |= bad[1:]
        elif label == "left":
            mask[1:] |= bad[:-1]
        elif label == "up":
            mask[:, :-1] |= bad[:, 1:]
        elif label == "down":
            mask[:, 1:] |= bad[:, :-1]
    return mask


def relax_guarded(field: DistributionField, spec: EquilibriumSpec, omega: float):
    """BGK at ``omega``, falling back to omega = 1 where the next state would be inadmissible.

    Returns the post-collision field and the boolean fallback mask (jx, jy).
    Raises AdmissibilityError when the fallback cannot restore admissibility.
    """
    if spec.flux.gamma is None:
        raise ValueError("guarded collision needs an Euler flux model")
    gamma = spec.flux.gamma
    st = field.stencil
    u = field.data.sum(axis=0)
    if not np.all(is_admissible(u, gamma)):
        bad = np.argwhere(~is_admissible(u, gamma))[0]
        raise AdmissibilityError(f"inadmissible pre-collision state at cell {tuple(bad)}")
    fstar = collide(field.data, spec, omega, omega)
    bad = ~is_admissible(_lookahead_moments(fstar, st), gamma)
    mask = np.zeros(field.shape, dtype=bool)
    if bad.any():
        mask = _source_cells(bad, st)
        feq = spec(u)
        fstar[:, mask] = feq[:, mask]
        still = ~is_admissible(_lookahead_moments(fstar, st), gamma)
        if still.any():
            cell = tuple(int(c) for c in np.argwhere(still)[0])
            raise AdmissibilityError(f"state at cell {cell} inadmissible even with omega = 1")
    return DistributionField(st, fstar), mask
