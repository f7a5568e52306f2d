import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from dgdealias.euler import prim_to_cons
from dgdealias.solver.mesh import SolutionField, build_mesh
from dgdealias.spectral import build_operators

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_prim(rng, shape, amp=0.3):
    rho = 1.0 + amp * rng.uniform(-1, 1, shape)
    vel = amp * rng.uniform(-1, 1, (3, *shape))
    p = 1.0 + amp * rng.uniform(-1, 1, shape)
    return np.stack([rho, *vel, p])


def random_field(rng, N=3, n_el=2, amp=0.3):
    mesh = build_mesh(n_el)
    ops = build_operators(N)
    m = N + 1
    shape = (*mesh.n_el, m, m, m)
    return SolutionField(mesh, ops, prim_to_cons(random_prim(rng, shape, amp)))


def uniform_field(N=3, n_el=2, prim=(1.2, 0.3, -0.2, 0.1, 2.0)):
    mesh = build_mesh(n_el)
    ops = build_operators(N)
    state = prim_to_cons(np.array(prim, dtype=float))
    return SolutionField.from_function(mesh, ops, lambda x, y, z: state.reshape(5, 1, 1, 1, 1, 1, 1))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# criterion number -> list of (ok, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
