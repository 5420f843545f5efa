"""Monotone-relaxation certificates and the largest monotone BGK rate.

The inequalities are checked in the form ``lhs <= rhs``; the slack is
``rhs - lhs`` and a configuration is certified when every slack is at least
-1e-12.  Euler (vectorial) fluxes are reported as uncertified: the theory is
scalar only.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fluxes import FluxModel, max_abs_flux_derivative

SLACK_TOL = 1e-12


@dataclass
class Inequality:
    name: str
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.slack >= -SLACK_TOL


@dataclass
class MonotonicityReport:
    stencil: str
    inequalities: list = dc_field(default_factory=list)
    verdict: bool | None = None
    trivial: bool = False
    note: str = ""
    omega_star: float | None = None

    def lines(self) -> list:
        out = [f"stencil = {self.stencil}"]
        for q in self.inequalities:
            out.append(f"{q.name}: lhs = {q.lhs:.17g}, rhs = {q.rhs:.17g}, slack = {q.slack:.17g}, holds = {q.holds}")
        if self.note:
            out.append(f"note = {self.note}")
        verdict = "uncertified" if self.verdict is None else ("monotone" if self.verdict else "not monotone")
        out.append(f"verdict = {verdict}")
        if self.omega_star is not None:
            out.append(f"omega_star = {self.omega_star:.17g}")
        return out


def _pair_condition(axis, ws, wa, a, r):
    lhs = 0.5 * wa * r
    rhs = ws * a + 0.5 * min(2.0 - ws - wa, 0.0, wa - ws)
    return Inequality(f"flux_{axis}", lhs, rhs)


def _rest_condition(ws, w0):
    return Inequality("rest_weight", max(0.0, ws - 1.0), ws * w0)


def check_monotone(stencil: str, omega_s: float, omega_a: float, ax: float, ay: float, lam: float,
                   flux: FluxModel, m: float) -> MonotonicityReport:
    rep = MonotonicityReport(stencil)
    if not flux.is_scalar:
        rep.note = f"{flux.name} is vectorial; monotonicity theory is scalar only"
        return rep
    if stencil in ("D1Q2", "D1Q3") and ay != 0.0:
        raise ValueError(f"{stencil}: ay must be 0")
    if stencil == "D1Q2" and ax != 0.5:
        raise ValueError("D1Q2: ax must be 1/2")
    if stencil == "D2Q4" and abs(1.0 - 2 * ax - 2 * ay) > 1e-14:
        raise ValueError("D2Q4: 1 - 2ax - 2ay must vanish")
    rx = max_abs_flux_derivative(flux, "x", m) / lam
    ry = max_abs_flux_derivative(flux, "y", m) / lam if stencil.startswith("D2") else 0.0
    if stencil == "D2Q5":
        rep.inequalities = [_rest_condition(omega_s, 1.0 - 2 * ax - 2 * ay),
                            _pair_condition("x", omega_s, omega_a, ax, rx),
                            _pair_condition("y", omega_s, omega_a, ay, ry)]
    elif stencil == "D2Q4":
        rep.inequalities = [_pair_condition("x", omega_s, omega_a, ax, rx),
                            _pair_condition("y", omega_s, omega_a, ay, ry)]
    elif stencil == "D1Q3":
        rep.inequalities = [_rest_condition(omega_s, 1.0 - 2 * ax),
                            _pair_condition("x", omega_s, omega_a, ax, rx)]
    elif stencil == "D1Q2":
        # the symmetric rate plays no role here
        rep.inequalities = [Inequality("flux_x", omega_a * rx, omega_a + 2.0 * min(1.0 - omega_a, 0.0))]
    else:
        raise ValueError(f"unknown stencil {stencil!r}")
    if rx == 0.0 and ry == 0.0:
        rep.trivial = True
        rep.note = "all Courant numbers vanish (excluded trivial case)"
        rep.verdict = False
        return rep
    rep.verdict = all(q.holds for q in rep.inequalities)
    return rep


def max_bgk_omega(stencil: str, ax: float, ay: float, lam: float, flux: FluxModel, m: float,
                  tol: float = 1e-15):
    """Largest omega in (0, 2] passing ``check_monotone`` with omega_s = omega_a.

    Returns ``(omega_star, ok)``; ``ok`` is False (and omega_star 0) when no
    rate is admissible.  Feasible rates form an interval (0, omega_star], so
    bisection on the verdict is exact up to ``tol``.
    """
    def passes(w):
        rep = check_monotone(stencil, w, w, ax, ay, lam, flux, m)
        # exact feasibility here; the reporting tolerance would bias the bisection upwards
        return bool(rep.verdict) and all(q.slack >= 0.0 for q in rep.inequalities)

    lo = 1e-9
    if not passes(lo):
        return 0.0, False
    if passes(2.0):
        return 2.0, True
    hi = 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo, True
