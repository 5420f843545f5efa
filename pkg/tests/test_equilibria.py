import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqlbm.equilibria import (EquilibriumSpec, StencilMismatch, euler_equilibrium, initialize_field,
                              sample_cells, scalar_equilibrium)
from eqlbm.fluxes import burgers, euler2d, transport
from eqlbm.lattice import GridSpec, compute_moments, velocity_set
from eqlbm.reference import U_LEFT


def test_transport_wrong_trace_values():
    spec = scalar_equilibrium("D1Q2", transport(-1.0), 2.0)
    f = spec(np.array([[1.0]]))
    assert f[spec.stencil.index("right"), 0, 0] == 0.25
    assert f[spec.stencil.index("left"), 0, 0] == 0.75


def test_d2q4_needs_zero_rest_weight():
    with pytest.raises(StencilMismatch):
        EquilibriumSpec(velocity_set("D2Q4"), burgers(2), 3.0, 0.2, 0.2)


def test_1d_rejects_ay():
    with pytest.raises(StencilMismatch):
        EquilibriumSpec(velocity_set("D1Q3"), burgers(1), 3.0, 0.3, 0.1)


@settings(max_examples=50, deadline=None)
@given(st.floats(-5, 5), st.sampled_from(["D1Q2", "D1Q3", "D2Q4", "D2Q5"]))
def test_scalar_consistency(u, stencil):
    ax, ay = {"D1Q2": (0.5, 0.0), "D1Q3": (0.3, 0.0), "D2Q4": (0.25, 0.25), "D2Q5": (0.2, 0.1)}[stencil]
    fl = burgers(2 if stencil.startswith("D2") else 1)
    spec = scalar_equilibrium(stencil, fl, 4.0, ax, ay)
    f = spec(np.array([[u]]))[:, 0, 0]
    vs = spec.stencil
    assert f.sum() == pytest.approx(u, abs=1e-12)
    lam_moment = 4.0 * sum(f[i] * vs.displacements[i][0] for i in range(vs.q))
    assert lam_moment == pytest.approx(0.5 * u * u, abs=1e-12)


@pytest.mark.parametrize("variant,q", [("a", 4), ("b", 5)])
def test_euler_variants(variant, q):
    spec = euler_equilibrium(variant, 30.0)
    f = spec(U_LEFT[None])
    assert f.shape == (q, 1, 4)
    np.testing.assert_allclose(f.sum(axis=0)[0], U_LEFT, rtol=1e-14)
    if variant == "b":
        np.testing.assert_allclose(f[spec.stencil.index("zero"), 0], 0.5 * U_LEFT)


def test_component_matches_full():
    spec = euler_equilibrium("b", 60.0)
    full = spec(U_LEFT[None])
    for lab in spec.stencil.labels:
        np.testing.assert_allclose(spec.component(lab, U_LEFT[None]), full[spec.stencil.index(lab)])


def test_initialization_recovers_data():
    g = GridSpec((0.0, 1.0), 10, 2.0, 1.0)
    spec = scalar_equilibrium("D1Q2", burgers(1), 2.0)
    f = initialize_field(spec, g, lambda x, y: np.sin(x))
    np.testing.assert_allclose(compute_moments(f)[:, 0, 0], np.sin(g.x_centers()), atol=1e-15)


def test_sample_cells_subgrid_average():
    g = GridSpec((0.0, 1.0), 4, 1.0, 1.0)
    v = sample_cells(lambda x, y: x, g, nq=5)
    np.testing.assert_allclose(v[:, 0, 0], g.x_centers())
    step = sample_cells(lambda x, y: (x > 0.3).astype(float), g, nq=100)
    assert step[1, 0, 0] == pytest.approx(0.8)


def test_initialization_shape_mismatch():
    g = GridSpec((0.0, 1.0), 10, 2.0, 1.0)
    spec = scalar_equilibrium("D1Q2", burgers(1), 2.0)
    with pytest.raises(ValueError):
        initialize_field(spec, g, np.zeros((11, 1, 1)))
