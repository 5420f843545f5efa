import numpy as np
import pytest

from eqlbm.fluxes import (AdmissibilityError, EulerState, burgers, cubic, euler2d, euler_pressure, is_admissible,
                          max_abs_flux_derivative, transport)
from eqlbm.reference import U_LEFT, U_RIGHT


def test_scalar_fluxes():
    assert float(burgers().fx(np.array(2.0))) == 2.0
    assert float(cubic().fx(np.array(-1.0))) == pytest.approx(-1 / 3)
    assert float(transport(-1.0).fx(np.array(3.0))) == -3.0
    assert float(burgers(1).fy(np.array(3.0))) == 0.0


@pytest.mark.parametrize("model,axis,m,expected", [
    (transport(-1.0), "x", 1.0, 1.0),
    (burgers(2), "y", 1.0, 1.0),
    (cubic(), "x", 1.0, 1.0),
    (cubic(), "x", 0.5, 0.25),
])
def test_derivative_bounds(model, axis, m, expected):
    assert max_abs_flux_derivative(model, axis, m) == expected


def test_derivative_bound_rejects_systems():
    with pytest.raises(ValueError):
        max_abs_flux_derivative(euler2d(), "x", 1.0)


def test_mach10_pressures():
    # post-shock pressure 116.5 from the stated energy; pre-shock pressure 1
    assert euler_pressure(U_LEFT) == pytest.approx(116.50136, abs=1e-5)
    assert euler_pressure(EulerState(*U_RIGHT)) == pytest.approx(1.0)


def test_pressure_zero_density():
    with pytest.raises(ZeroDivisionError):
        euler_pressure(np.array([0.0, 0.0, 0.0, 1.0]))


def test_euler_flux_rejects_vacuum():
    with pytest.raises(AdmissibilityError):
        euler2d().fx(np.array([[0.0, 0.0, 0.0, 1.0]]))


def test_euler_flux_at_rest():
    u = np.array([1.4, 0.0, 0.0, 2.5])
    np.testing.assert_allclose(euler2d().fx(u), [0, 1.0, 0, 0])
    np.testing.assert_allclose(euler2d().fy(u), [0, 0, 1.0, 0])


def test_admissibility_mask():
    u = np.array([U_LEFT, U_RIGHT, [1.0, 0.0, 0.0, -1.0], [-1.0, 0, 0, 1.0], [np.nan, 0, 0, 1]])
    assert is_admissible(u).tolist() == [True, True, False, False, False]
