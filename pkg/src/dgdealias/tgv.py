"""Inviscid Taylor-Green vortex: initial state, volume diagnostics, case presets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .euler import GAMMA
from .solver.mesh import SolutionField, build_mesh
from .spectral import build_operators


@dataclass(frozen=True)
class TGVParams:
    length: float = 1.0
    rho0: float = 1.0
    V0: float = 1.0
    c0: float = 10.0
    gamma: float = GAMMA

    @property
    def mach(self) -> float:
        return self.V0 / self.c0


def tgv_initial_state(x, y, z, params: TGVParams = TGVParams()):
    """Conserved TGV state (5, ...) at points x, y, z."""
    x, y, z = (np.asarray(a, dtype=float) / params.length for a in (x, y, z))
    rho = np.full(np.broadcast_shapes(x.shape, y.shape, z.shape), params.rho0)
    u = params.V0 * np.sin(x) * np.cos(y) * np.cos(z)
    v = -params.V0 * np.cos(x) * np.sin(y) * np.cos(z)
    w = np.zeros_like(rho)
    p = (params.rho0 * params.c0**2 / params.gamma
         + params.rho0 * params.V0**2 * (np.cos(2 * x) + np.cos(2 * y)) * (2 + np.cos(2 * z)) / 16)
    E = p / (params.gamma - 1.0) + 0.5 * rho * (u * u + v * v)
    return np.stack([rho, rho * u, rho * v, rho * w, E])


def tgv_field(N: int, n_el, params: TGVParams = TGVParams()) -> SolutionField:
    mesh = build_mesh(n_el, extent=2 * np.pi * params.length)
    return SolutionField.from_function(mesh, build_operators(N), lambda x, y, z: tgv_initial_state(x, y, z, params))


def _volume_average(field: SolutionField, values):
    w = field.ops.weights
    w3 = w[:, None, None] * w[None, :, None] * w[None, None, :]
    per_elem = np.einsum("xyzijk,ijk->xyz", values, w3)
    return field.mesh.jacobian * per_elem.sum() / field.mesh.volume


def kinetic_energy(field: SolutionField) -> float:
    """Volume average of rho |u|^2 / 2."""
    q = field.data
    return float(_volume_average(field, 0.5 * (q[1] ** 2 + q[2] ** 2 + q[3] ** 2) / q[0]))


def velocity_gradient(field: SolutionField):
    """Nodal tensor A[i, j] = du_i/dx_j from the collocation derivative, shape (3, 3, ...)."""
    q = field.data
    vel = q[1:4] / q[0]
    scale = [1.0 / h for h in field.mesh.metric]
    grads = []
    for d in range(3):
        # vel has node axes 4, 5, 6 (component axis first)
        grads.append(scale[d] * np.moveaxis(np.tensordot(field.ops.D, vel, axes=(1, 4 + d)), 0, 4 + d))
    return np.stack(grads, axis=1)


def enstrophy(field: SolutionField) -> float:
    """Volume average of rho |omega|^2 / 2."""
    A = velocity_gradient(field)
    wx = A[2, 1] - A[1, 2]
    wy = A[0, 2] - A[2, 0]
    wz = A[1, 0] - A[0, 1]
    return float(_volume_average(field, 0.5 * field.data[0] * (wx * wx + wy * wy + wz * wz)))


@dataclass(frozen=True)
class CasePreset:
    m: int
    n_el: int
    label: str
    crashed_ci_roe: bool = False
    crashed_ci_llf: bool = False
    desk: bool = False

    @property
    def N(self) -> int:
        return self.m - 1

    @property
    def n_dof(self) -> int:
        return (self.n_el * self.m) ** 3


# (n_el row, crashed with consistent integration for Roe, for LLF); columns m = 2..8
_TABLE = [
    ((56, 37, 28, 23, 19, 16, 14), (), (6, 7, 8)),
    ((79, 52, 39, 32, 28, 23, 19), (8,), (6, 7, 8)),
    ((112, 75, 56, 45, 39, 32, 28), (7, 8), (6, 7, 8)),
]


def desk_n_el(n_el: int) -> int:
    return max(2, round(n_el / 8))


def case_presets():
    """Case matrix cells plus reduced-resolution desk variants (``*_desk``)."""
    presets = []
    for row, roe_crash, llf_crash in _TABLE:
        for m, n in zip(range(2, 9), row):
            label = f"m{m}_ne{n}"
            presets.append(CasePreset(m, n, label, m in roe_crash, m in llf_crash))
    presets += [
        CasePreset(p.m, desk_n_el(p.n_el), p.label + "_desk", p.crashed_ci_roe, p.crashed_ci_llf, desk=True)
        for p in list(presets)
    ]
    return presets


def preset_by_label(label: str) -> CasePreset:
    for p in case_presets():
        if p.label == label:
            return p
    raise KeyError(f"unknown preset {label!r}")
