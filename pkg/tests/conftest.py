import sys

import numpy as np
import pytest

from eqlbm.fluxes import burgers, cubic, transport
from eqlbm.equilibria import scalar_equilibrium


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# certified scalar schemes: (stencil, flux, lam, ax, ay, omega_s, omega_a), all monotone at m = 1
CERTIFIED = {
    "d1q2_transport": ("D1Q2", transport(-1.0), 2.0, 0.5, 0.0, 4 / 3, 4 / 3),
    "d1q2_burgers": ("D1Q2", burgers(1), 2.0, 0.5, 0.0, 1.2, 1.2),
    "d1q2_cubic": ("D1Q2", cubic(), 10 / 7, 0.5, 0.0, 1.0, 1.0),
    "d1q3_burgers": ("D1Q3", burgers(1), 3.0, 0.3, 0.0, 1.2, 1.1),
    "d2q4_burgers": ("D2Q4", burgers(2), 3.0, 0.25, 0.25, 12 / 11, 12 / 11),
    "d2q5_burgers": ("D2Q5", burgers(2), 5.0, 0.2, 0.2, 1.0, 1.0),
}


def certified_spec(key):
    st, fl, lam, ax, ay, ws, wa = CERTIFIED[key]
    return scalar_equilibrium(st, fl, lam, ax, ay), ws, wa


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
