import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dgdealias.euler import cons_to_prim, prim_to_cons
from dgdealias.solver.mesh import SolutionField, build_mesh, conserved_totals
from dgdealias.spectral import build_operators, gauss_rule
from dgdealias.tgv import (
    TGVParams,
    case_presets,
    desk_n_el,
    enstrophy,
    kinetic_energy,
    preset_by_label,
    tgv_field,
    tgv_initial_state,
    velocity_gradient,
)

from conftest import uniform_field


def test_params():
    p = TGVParams()
    assert p.mach == pytest.approx(0.1)
    assert (p.length, p.rho0, p.V0, p.c0, p.gamma) == (1.0, 1.0, 1.0, 10.0, 1.4)


def test_initial_state_examples():
    w = cons_to_prim(tgv_initial_state(0.0, 0.0, 0.0))
    np.testing.assert_allclose(w[:4], [1, 0, 0, 0], atol=1e-15)
    assert w[4] == pytest.approx(100 / 1.4 + 0.375, rel=1e-14)
    assert w[4] == pytest.approx(71.8036, abs=1e-4)
    w = cons_to_prim(tgv_initial_state(np.pi / 2, 0.0, 0.0))
    assert w[1] == pytest.approx(1.0) and abs(w[2]) < 1e-15


@given(st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi), st.floats(-np.pi, np.pi))
def test_initial_state_pointwise(x, y, z):
    q = tgv_initial_state(x, y, z)
    assert q[3] == 0.0
    np.testing.assert_array_equal(q, tgv_initial_state(np.array(x), np.array(y), np.array(z)))
    assert q[1] == pytest.approx(np.sin(x) * np.cos(y) * np.cos(z), abs=1e-15)


def test_length_scale():
    p = TGVParams(length=2.0)
    np.testing.assert_allclose(tgv_initial_state(np.pi, 0.0, 0.0, p), tgv_initial_state(np.pi / 2, 0.0, 0.0))


def test_initial_diagnostics():
    f = tgv_field(7, 4)
    assert kinetic_energy(f) == pytest.approx(0.125, abs=1e-6)
    assert enstrophy(f) == pytest.approx(0.375, abs=1e-5)
    assert np.max(np.abs(conserved_totals(f)[1:4])) < 1e-12


def test_enstrophy_oracle_by_quadrature():
    # independent check of 3/8 from the analytic vorticity on a tensor Gauss grid
    g = gauss_rule(24)
    x = np.pi * g.nodes
    w = np.pi * g.weights
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    om2 = ((np.cos(X) * np.sin(Y) * np.sin(Z)) ** 2 + (np.sin(X) * np.cos(Y) * np.sin(Z)) ** 2
           + (2 * np.sin(X) * np.sin(Y) * np.cos(Z)) ** 2)
    W = np.einsum("i,j,k->ijk", w, w, w)
    assert np.sum(W * 0.5 * om2) / (2 * np.pi) ** 3 == pytest.approx(0.375, abs=1e-13)


def test_mean_pressure():
    f = tgv_field(5, 3)
    p = cons_to_prim(f.data)[4]
    mean = conserved_totals(SolutionField(f.mesh, f.ops, np.broadcast_to(p, f.data.shape).copy()))[0] / f.mesh.volume
    assert mean == pytest.approx(100 / 1.4, abs=1e-10)


def test_diagnostics_of_simple_flows():
    rest = uniform_field(N=3, n_el=2, prim=(1.0, 0, 0, 0, 1.0))
    assert kinetic_energy(rest) == 0.0
    moving = uniform_field(N=3, n_el=2, prim=(1.0, 0.3, -0.4, 0.0, 1.0))
    assert enstrophy(moving) == pytest.approx(0.0, abs=1e-24)
    assert kinetic_energy(moving) == pytest.approx(0.125)
    faster = uniform_field(N=3, n_el=2, prim=(1.0, 0.6, -0.8, 0.0, 1.0))
    assert kinetic_energy(faster) == pytest.approx(4 * kinetic_energy(moving))


def test_rigid_rotation_vorticity():
    mesh, ops = build_mesh(2, extent=1.0), build_operators(3)

    def state(x, y, z):
        one = np.ones_like(x)
        return prim_to_cons(np.stack([one, -y, x, 0 * one, 10 * one]))

    f = SolutionField.from_function(mesh, ops, state)
    A = velocity_gradient(f)
    wz = A[1, 0] - A[0, 1]
    np.testing.assert_allclose(wz**2, 4.0, rtol=1e-12)
    assert enstrophy(f) == pytest.approx(2.0, rel=1e-12)


def test_case_presets():
    presets = case_presets()
    assert len(presets) == 2 * 21
    cell = preset_by_label("m8_ne14")
    assert cell.crashed_ci_llf and not cell.crashed_ci_roe and not cell.desk
    stable = preset_by_label("m5_ne32")
    assert not stable.crashed_ci_llf and not stable.crashed_ci_roe
    assert preset_by_label("m3_ne37").n_dof == 111**3 == 1367631
    assert preset_by_label("m8_ne28").crashed_ci_roe
    desk = preset_by_label("m5_ne32_desk")
    assert desk.desk and desk.m == 5 and desk.N == 4 and desk.n_el == desk_n_el(32) == 4
    for p in presets:
        assert p.n_dof == (p.n_el * p.m) ** 3
    with pytest.raises(KeyError):
        preset_by_label("m9_ne1")


def test_llf_column_crashes_only_at_high_order():
    for p in case_presets():
        assert p.crashed_ci_llf == (p.m >= 6)
