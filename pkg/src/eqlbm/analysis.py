"""Run diagnostics, proposition-level checks and boundary-layer predictors.

The boundary-layer part concerns D1Q2 transport with negative Courant number
C = V / lam and a constant (wrong) Dirichlet trace imposed at the outflow
(west) end.  Three independent routes to the same profile are provided: the
Chebyshev closed form, brute-force powers of the tridiagonal step matrix, and
the solver itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .equilibria import EquilibriumSpec
from .lattice import DistributionField

DIAGNOSTIC_COLUMNS = ("step", "time", "l1", "l2", "linf", "tv_u", "tv_f", "eq_distance",
                      "increment_l1", "u_min", "u_max", "entropy_violations")


# ---------------------------------------------------------------- norms

def grid_lp_norm(u, p, dx: float, d: int) -> float:
    """(dx^d sum |u|^p)^(1/p); the max for p = inf."""
    a = np.abs(np.asarray(u, dtype=float)).ravel()
    if a.size == 0:
        return 0.0
    if p == np.inf or p == "inf":
        return float(a.max())
    p = float(p)
    if p == 1.0:
        return float(dx ** d * a.sum())
    return float((dx ** d * np.sum(a ** p)) ** (1.0 / p))


def discrete_tv(v, dx: float, d: int) -> float:
    """Total variation over interior neighbour pairs.

    ``v`` is (jx, jy[, M]) for moments or (q, jx, jy, M) for a full field;
    1D: sum |v_{j+1} - v_j|, 2D: dx * (x-differences + y-differences).
    Leading velocity and trailing component axes are summed over.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim == 2:
        v = v[..., None]
    if v.ndim == 3:
        v = v[None]
    tv = np.abs(np.diff(v, axis=1)).sum()
    if d == 2:
        tv = dx * (tv + np.abs(np.diff(v, axis=2)).sum())
    return float(tv)


def equilibrium_distance(field: DistributionField, spec: EquilibriumSpec, dx: float, d: int) -> float:
    """dx^d sum_j sum_i |f_ij - feq_i(u_j)|."""
    u = field.data.sum(axis=0)
    return float(dx ** d * np.abs(field.data - spec(u)).sum())


def field_l1_distance(f: np.ndarray, g: np.ndarray, dx: float, d: int) -> float:
    return float(dx ** d * np.abs(np.asarray(f) - np.asarray(g)).sum())


def invariant_box(spec: EquilibriumSpec, m: float, comp: int = 0):
    """Per-velocity bounds [feq_i(-m), feq_i(m)] of a scalar monotone scheme."""
    lo = spec(np.array([[-m]]))[:, 0, comp]
    hi = spec(np.array([[m]]))[:, 0, comp]
    return np.minimum(lo, hi), np.maximum(lo, hi)


def entropy_violations(pre: np.ndarray, post: np.ndarray, spec: EquilibriumSpec, kappas,
                       tol: float = 1e-13) -> int:
    """Cells where a collision raised a Kruzhkov kinetic entropy sum_i |f_i - feq_i(k)|."""
    count = 0
    for k in kappas:
        fk = spec(np.full(pre.shape[1:], float(k)))
        before = np.abs(pre - fk).sum(axis=0)
        after = np.abs(post - fk).sum(axis=0)
        count += int(np.count_nonzero(after > before + tol))
    return count


@dataclass
class DiagnosticsRecord:
    step: int
    time: float
    l1: float
    l2: float
    linf: float
    tv_u: float
    tv_f: float
    eq_distance: float
    increment_l1: float
    u_min: float
    u_max: float
    entropy_violations: int = 0

    def as_row(self) -> list:
        return [getattr(self, c) for c in DIAGNOSTIC_COLUMNS]

    def is_finite(self) -> bool:
        return all(math.isfinite(float(v)) for v in self.as_row())

    def to_dict(self) -> dict:
        return asdict(self)


def record_diagnostics(step: int, time: float, field: DistributionField, previous: np.ndarray | None,
                       spec: EquilibriumSpec, dx: float, d: int, violations: int = 0,
                       comp: int = 0) -> DiagnosticsRecord:
    """Diagnostics of ``field`` at step ``step``; norms use component ``comp`` of the moments."""
    u = field.data.sum(axis=0)
    uc = u[..., comp]
    inc = 0.0 if previous is None else field_l1_distance(field.data, previous, dx, d)
    return DiagnosticsRecord(
        step=step, time=time,
        l1=grid_lp_norm(uc, 1, dx, d), l2=grid_lp_norm(uc, 2, dx, d), linf=grid_lp_norm(uc, np.inf, dx, d),
        tv_u=discrete_tv(uc, dx, d), tv_f=discrete_tv(field.data, dx, d),
        eq_distance=equilibrium_distance(field, spec, dx, d), increment_l1=inc,
        u_min=float(uc.min()), u_max=float(uc.max()), entropy_violations=int(violations),
    )


# ---------------------------------------------------------------- boundary layer

def chebyshev_u(k: int, x):
    """Chebyshev polynomial of the second kind U_k(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    if k < 0:
        raise ValueError("degree must be non-negative")
    prev, cur = np.ones_like(x), 2.0 * x
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def _check_courant(C):
    if not -1.0 < C < 0.0:
        raise ValueError(f"Courant number {C} outside (-1, 0)")


def boundary_layer_chebyshev(J: int, C: float, u_wall: float, n: int, j):
    """Closed-form omega = 1 profile u_j^n after n steps from a zero datum."""
    _check_courant(C)
    j = np.atleast_1d(np.asarray(j, dtype=int))
    if np.any((j < 0) | (j >= J)):
        raise ValueError("cell index out of range")
    out = (j == 0).astype(float)
    if n >= 2 and J >= 2:
        h = np.arange(1, J // 2 + 1)
        lam_h = -2.0 * np.cos((J - h + 1) * np.pi / (J + 1))
        base = 0.5 * math.sqrt(1.0 - C * C) * lam_h
        p = np.arange(1, n)
        powers = base[:, None] ** p[None, :]
        ratio = (1.0 + C) / (1.0 - C)
        for k, jj in enumerate(j):
            parity = 1.0 + (-1.0) ** (jj + p)
            inner = (powers * parity[None, :]).sum(axis=1)
            weights = (4.0 - lam_h ** 2) * chebyshev_u(int(jj), 0.5 * lam_h)
            out[k] += ratio ** (jj / 2.0) / (2 * J + 2) * float(np.sum(weights * inner))
    return u_wall * 0.5 * (1.0 + C) * out


def tridiagonal_oracle(J: int, C: float, u_wall: float, n: int) -> np.ndarray:
    """u^n = u_wall (1+C)/2 sum_{p<n} A^p e_1 by repeated matrix-vector products."""
    _check_courant(C)
    A = np.diag(np.full(J - 1, 0.5 * (1.0 + C)), -1) + np.diag(np.full(J - 1, 0.5 * (1.0 - C)), 1)
    term = np.zeros(J)
    term[0] = 1.0
    acc = np.zeros(J)
    for _ in range(n):
        acc += term
        term = A @ term
    return u_wall * 0.5 * (1.0 + C) * acc


def neumann_limit(C: float, u_wall: float, j):
    """Infinite-J, infinite-time omega = 1 profile u_wall ((1+C)/(1-C))^(j+1)."""
    return u_wall * ((1.0 + C) / (1.0 - C)) ** (np.asarray(j, dtype=float) + 1.0)


def stable_root_kappa1(omega: float, C: float) -> float:
    """Decaying spatial root (2 - w + wC) / (2 - w - wC) of the characteristic equation at z = 1."""
    den = 2.0 - omega - omega * C
    if den == 0.0:
        raise ZeroDivisionError("degenerate characteristic equation: 2 - omega - omega C = 0")
    if abs(omega * (1.0 - C) - 2.0) < 1e-14:
        # omega = 2 / (1 - C): the numerator vanishes identically, rounding aside
        return 0.0
    return (2.0 - omega + omega * C) / den


def characteristic_roots(omega: float, C: float, z: complex = 1.0):
    """Numerical roots of (2-w-wC)/2 k + (2-w+wC)/2 / k = z + (1-w)/z, as (stable, unstable).

    The stable root has the smaller modulus.
    """
    a = 0.5 * (2.0 - omega - omega * C)
    c = 0.5 * (2.0 - omega + omega * C)
    rhs = z + (1.0 - omega) / z
    if a == 0.0:
        raise ZeroDivisionError("degenerate characteristic equation: 2 - omega - omega C = 0")
    roots = np.roots([a, -rhs, c])
    roots = sorted(roots, key=abs)
    cast = (lambda r: float(r.real)) if np.isrealobj(z) and all(abs(r.imag) < 1e-14 for r in roots) else complex
    return cast(roots[0]), cast(roots[1])


def boundary_layer_longtime(omega: float, C: float, u_wall: float, j):
    """Large-time, large-J profile; collapses onto the first cell at omega = 2 / (1 - C)."""
    _check_courant(C)
    if not 0.0 < omega < 2.0:
        raise ValueError("omega must lie in (0, 2)")
    j = np.asarray(j, dtype=float)
    if abs(omega * (1.0 - C) - 2.0) < 1e-14:
        return u_wall * 0.5 * (1.0 + C) * (j == 0)
    kappa = stable_root_kappa1(omega, C)
    amp = u_wall * (2.0 - omega) * (1.0 + C) / (2.0 - omega * (1.0 + C))
    return amp * kappa ** j


def longtime_window(J: int, C: float) -> int:
    """Step count after which the long-time profile is used for comparisons."""
    return int(math.ceil(4 * J / (1.0 - abs(C))))


# ---------------------------------------------------------------- proposition checks

@dataclass
class CheckReport:
    name: str
    passed: bool
    worst_margin: float
    details: dict

    def line(self) -> str:
        return f"{self.name}: {'pass' if self.passed else 'FAIL'} (worst margin {self.worst_margin:.6g})"


def _same_scheme(ea, eb) -> bool:
    # flux models are rebuilt per run, so compare them by name and gamma
    return (ea.stencil == eb.stencil and ea.flux.name == eb.flux.name and ea.flux.gamma == eb.flux.gamma
            and (ea.lam, ea.ax, ea.ay) == (eb.lam, eb.ax, eb.ay))


def check_l1_contraction(sim_a, sim_b, tol: float = 1e-10) -> CheckReport:
    """Step two simulations in lockstep and test the l1 bound at every step.

    ||g^n - f^n||_1 <= ||g^0 - f^0||_1 + dx^d sum_{k<n} sum_sides sum |v~^k - u~^k|,
    the last term being lam times the boundary-data L1 norm under the scheme's
    own boundary quadrature.  Only Dirichlet sides keep the bound valid.
    """
    ga, gb = sim_a.grid, sim_b.grid
    if ga != gb or not _same_scheme(sim_a.eq, sim_b.eq) or sim_a.relaxation != sim_b.relaxation:
        raise ValueError("runs differ in grid, equilibrium or relaxation")
    dx, d = ga.dx, ga.dim
    initial = field_l1_distance(sim_a.field.data, sim_b.field.data, dx, d)
    boundary = 0.0
    margins = []
    for _ in range(ga.n_steps):
        ra = sim_a.step()
        rb = sim_b.step()
        for side, sa in ra.states.items():
            if not np.all(ra.dirichlet[side]) or not np.all(rb.dirichlet[side]):
                raise ValueError(f"{side} side is not Dirichlet; the l1 bound does not apply")
            boundary += dx ** d * np.abs(rb.states[side] - sa).sum()
        lhs = field_l1_distance(sim_a.field.data, sim_b.field.data, dx, d)
        margins.append(initial + boundary + tol - lhs)
    worst = float(min(margins)) if margins else 0.0
    return CheckReport("l1_contraction", worst >= 0.0, worst,
                       {"initial": initial, "boundary": boundary, "steps": len(margins)})


def equicontinuity_constant(u0: np.ndarray, initial_adjacent: dict, boundary_series: dict,
                            dx: float, d: int) -> float:
    """Constant C with ||f^{n+1} - f^n||_1 <= C dx for a Dirichlet run.

    ``initial_adjacent`` maps side -> interior states next to that side at
    step 0 and ``boundary_series`` maps side -> array (n_steps, L[, M]) of
    boundary states.  The bound collects the data variation, the initial
    mismatch between data and adjacent cells and the time variation of the
    boundary states.
    """
    c = 2.0 * discrete_tv(u0, dx, d)
    w = dx ** (d - 1)
    for side, series in boundary_series.items():
        s = np.asarray(series, dtype=float)
        if s.shape[0] == 0:
            continue
        adj = np.asarray(initial_adjacent[side], dtype=float).reshape(s[0].shape)
        c += w * np.abs(adj - s[0]).sum()
        if s.shape[0] > 1:
            c += w * np.abs(np.diff(s, axis=0)).sum()
    return float(c)


def check_equicontinuity(increments, dx: float, constant: float, tol: float = 1e-12) -> CheckReport:
    inc = np.asarray(increments, dtype=float)
    worst = float(constant * dx - inc.max()) if inc.size else float(constant * dx)
    return CheckReport("equicontinuity", worst >= -tol, worst,
                       {"max_increment_over_dx": float(inc.max() / dx) if inc.size else 0.0, "constant": constant})


def tv_constant(u0: np.ndarray, m: float, lam: float, T: float, boundary_series: dict, dx: float, d: int) -> float:
    """Data-assembled upper bound for the total variation of the distributions.

    ``boundary_series`` maps side -> array (n_steps, L) of boundary states.
    1D / box reduction: twice the sum of the initial variation, the initial
    sup-norm per axis, lam T m per side and the time variation plus sup of
    every side's data.
    """
    u0 = np.asarray(u0, dtype=float)
    total = discrete_tv(u0, dx, d) + 2.0 * d * float(np.abs(u0).max())
    total += len(boundary_series) * lam * T * m
    for side, series in boundary_series.items():
        s = np.asarray(series, dtype=float)
        s = s.reshape(s.shape[0], -1)
        if s.shape[0] == 0:
            continue
        var_t = np.abs(np.diff(s, axis=0)).sum() * dx ** (d - 1) if len(s) > 1 else 0.0
        total += var_t + float(np.abs(s).max())
    return 2.0 * total


def check_tv_bound(tv_series, constant: float) -> CheckReport:
    tv = np.asarray(tv_series, dtype=float)
    worst = float(constant - tv.max())
    return CheckReport("tv_bound", worst >= 0.0, worst, {"max_tv": float(tv.max()), "constant": constant})


def convergence_rate(errors) -> float:
    """Least-squares slope of log(error) against log(dx)."""
    pts = [(float(h), float(e)) for h, e in errors]
    if len(pts) < 2:
        raise ValueError("need at least two (dx, error) points")
    if any(h <= 0 or e <= 0 for h, e in pts):
        raise ValueError("grid sizes and errors must be positive")
    h, e = np.log(np.array(pts)).T
    return float(np.polyfit(h, e, 1)[0])


def front_position(values, x, level: float) -> float:
    """Right-most x where ``values`` falls through ``level``, linearly interpolated."""
    v = np.asarray(values, dtype=float)
    x = np.asarray(x, dtype=float)
    idx = np.nonzero((v[:-1] >= level) & (v[1:] < level))[0]
    if idx.size == 0:
        raise ValueError("no downward crossing of the level")
    i = idx[-1]
    frac = (v[i] - level) / (v[i] - v[i + 1])
    return float(x[i] + frac * (x[i + 1] - x[i]))
