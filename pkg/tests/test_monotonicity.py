import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqlbm.cases import RunConfig, run
from eqlbm.fluxes import burgers, cubic, euler2d, transport
from eqlbm.monotonicity import check_monotone, max_bgk_omega

QUOTED = [
    ("D1Q2", 0.5, 0.0, 2.0, transport(-1.0), 4 / 3),
    ("D1Q2", 0.5, 0.0, 10 / 7, cubic(), 20 / 17),
    ("D2Q4", 0.25, 0.25, 3.0, burgers(2), 12 / 11),
]


def test_transport_examples():
    ok = check_monotone("D1Q2", 1.2, 1.2, 0.5, 0.0, 2.0, transport(-1.0), 1.0)
    assert ok.verdict and ok.inequalities[0].slack == pytest.approx(0.2)
    bad = check_monotone("D1Q2", 1.5, 1.5, 0.5, 0.0, 2.0, transport(-1.0), 1.0)
    assert bad.verdict is False and bad.inequalities[0].slack == pytest.approx(-0.25)


def test_d2q4_burgers_threshold_is_sharp():
    rep = check_monotone("D2Q4", 12 / 11, 12 / 11, 0.25, 0.25, 3.0, burgers(2), 1.0)
    assert rep.verdict
    assert min(q.slack for q in rep.inequalities) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("stencil,ax,ay,lam,flux,expected", QUOTED)
def test_quoted_thresholds(stencil, ax, ay, lam, flux, expected):
    w, ok = max_bgk_omega(stencil, ax, ay, lam, flux, 1.0)
    assert ok and abs(w - expected) <= 1e-12
    assert check_monotone(stencil, w, w, ax, ay, lam, flux, 1.0).verdict
    assert not check_monotone(stencil, w + 1e-6, w + 1e-6, ax, ay, lam, flux, 1.0).verdict


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 0.95))
def test_d1q2_closed_form(r):
    # transport speed r * lam
    w, ok = max_bgk_omega("D1Q2", 0.5, 0.0, 1.0, transport(-r), 1.0)
    assert ok and w == pytest.approx(2 / (1 + r), abs=1e-12)


def test_inequality_counts():
    b1, b2 = burgers(1), burgers(2)
    assert len(check_monotone("D2Q5", 1, 1, 0.2, 0.2, 5, b2, 1).inequalities) == 3
    assert len(check_monotone("D2Q4", 1, 1, 0.25, 0.25, 5, b2, 1).inequalities) == 2
    assert len(check_monotone("D1Q3", 1, 1, 0.3, 0.0, 5, b1, 1).inequalities) == 2
    assert len(check_monotone("D1Q2", 1, 1, 0.5, 0.0, 5, b1, 1).inequalities) == 1


def test_coefficient_mismatch():
    with pytest.raises(ValueError):
        check_monotone("D1Q2", 1, 1, 0.4, 0.0, 2, burgers(1), 1)
    with pytest.raises(ValueError):
        check_monotone("D2Q4", 1, 1, 0.2, 0.2, 2, burgers(2), 1)


def test_trivial_case_not_certified():
    rep = check_monotone("D1Q2", 1, 1, 0.5, 0.0, 2, burgers(1), 0.0)
    assert rep.trivial and rep.verdict is False


def test_euler_uncertified():
    rep = check_monotone("D2Q4", 1.35, 1.35, 0.25, 0.25, 30, euler2d(), 1.0)
    assert rep.verdict is None
    assert "verdict = uncertified" in rep.lines()


def test_no_admissible_rate():
    # lam below the wave speed: no omega works
    w, ok = max_bgk_omega("D1Q2", 0.5, 0.0, 0.5, burgers(1), 1.0)
    assert not ok and w == 0.0


@pytest.mark.parametrize("case,omega", [("transport_outflow", 4 / 3), ("burgers_outflow", 1.2),
                                        ("nonconvex_sine", 20 / 17)])
def test_certified_runs_obey_maximum_principle(case, omega):
    res = run(RunConfig(case, J=100, omega=omega, T=1.0 if case == "nonconvex_sine" else None), write=False)
    m = res.metadata["data_bound"]
    assert res.metadata["monotonicity"]["verdict"]
    assert all(-m - 1e-12 <= d.u_min and d.u_max <= m + 1e-12 for d in res.diagnostics)
