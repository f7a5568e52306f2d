"""Time loop: CFL step size, crash detection, diagnostics and snapshots."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .. import euler
from ..euler import InterfaceFlux, InvalidStateError
from .io import write_checkpoint
from .mesh import SolutionField, conserved_totals
from .rhs import DGOperator, VolumeKernel, check_combination
from .rk import low_storage_rk_step

log = logging.getLogger(__name__)

SERIES_COLUMNS = ("t", "kinetic_energy", "enstrophy", "mass", "momx", "momy", "momz", "energy")


class SolverCrash(RuntimeError):
    pass


@dataclass(frozen=True)
class SolverConfig:
    N: int
    n_el: int | tuple = 4
    kernel: VolumeKernel = VolumeKernel.SPLIT_KG
    flux: InterfaceFlux = InterfaceFlux.ROE_KG
    quad_points: int | None = None
    cfl: float = 0.5
    t_end: float = 14.0
    output_every: float | None = 0.1
    snapshot_times: tuple = ()
    checkpoint_dir: str | None = None
    dt: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kernel", VolumeKernel(self.kernel))
        object.__setattr__(self, "flux", InterfaceFlux(self.flux))
        check_combination(self.kernel, self.flux, self.quad_points, self.N)
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"CFL must lie in (0, 1], got {self.cfl}")
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.dt is not None and self.dt <= 0:
            raise ValueError("fixed dt must be positive")

    @property
    def labels(self):
        out = {"kernel": self.kernel.value, "flux": self.flux.value}
        if self.quad_points is not None:
            out["Q"] = str(self.quad_points)
        return out


@dataclass
class RunResult:
    status: str  # "completed" or "crashed"
    t_crash: float | None
    t_final: float
    series: np.ndarray
    field: SolutionField
    snapshots: dict = dc_field(default_factory=dict)
    checkpoints: list = dc_field(default_factory=list)
    steps: int = 0

    @property
    def crashed(self) -> bool:
        return self.status == "crashed"


def compute_dt(field_or_data, mesh, N, cfl):
    """cfl * min over axes of dx / ((2N+1) * max(|u_axis| + a))."""
    data = field_or_data.data if isinstance(field_or_data, SolutionField) else field_or_data
    prim = euler.cons_to_prim(data)
    a = np.sqrt(euler.GAMMA * prim[4] / prim[0])
    dt = np.inf
    for d, h in enumerate(mesh.dx):
        lam = float(np.max(np.abs(prim[1 + d]) + a))
        if not np.isfinite(lam):
            raise SolverCrash("non-finite wave speed")
        if lam > 0:
            dt = min(dt, h / ((2 * N + 1) * lam))
    return cfl * dt


def diagnostics_row(field: SolutionField, t: float):
    from ..tgv import enstrophy, kinetic_energy

    return np.concatenate([[t, kinetic_energy(field), enstrophy(field)], conserved_totals(field)])


def make_operator(config: SolverConfig, field: SolutionField) -> DGOperator:
    return DGOperator(field.mesh, field.ops, config.kernel, config.flux, config.quad_points)


def _event_times(config):
    events = set(float(t) for t in config.snapshot_times if 0 < t <= config.t_end)
    if config.output_every:
        n = int(np.floor(config.t_end / config.output_every + 1e-9))
        events.update(round(i * config.output_every, 12) for i in range(1, n + 1))
    events.add(float(config.t_end))
    return sorted(t for t in events if t > 0)


def _checkpoint(config, field, t, stem):
    if config.checkpoint_dir is None:
        return ()
    os.makedirs(config.checkpoint_dir, exist_ok=True)
    path = os.path.join(config.checkpoint_dir, f"{stem}_t{t:g}")
    return write_checkpoint(path, field, t, config.labels)


def run(config: SolverConfig, initial: SolutionField, stem: str = "snapshot") -> RunResult:
    """Advance ``initial`` to ``config.t_end``; crashes are reported, not raised."""
    if initial.N != config.N:
        raise ValueError(f"config N={config.N} does not match field N={initial.N}")
    op = make_operator(config, initial)
    mesh, N = initial.mesh, initial.N
    U = initial.data.copy()
    t = 0.0
    rows = [diagnostics_row(initial, t)]
    snapshots, checkpoints = {}, []
    snap_times = [float(s) for s in config.snapshot_times]
    if 0.0 in snap_times:
        snapshots[0.0] = initial.copy()
        checkpoints.extend(_checkpoint(config, initial, 0.0, stem))
    events = _event_times(config)
    status, t_crash, steps = "completed", None, 0
    tol = 1e-12 * max(1.0, config.t_end)

    for target in events:
        while t < target - tol:
            try:
                dt = config.dt if config.dt is not None else compute_dt(U, mesh, N, config.cfl)
                dt = min(dt, target - t)
                U_new = low_storage_rk_step(U, op.rate, dt)
                euler.cons_to_prim(U_new)
            except (InvalidStateError, SolverCrash, FloatingPointError) as exc:
                log.info("crash after t=%.6f: %s", t, exc)
                status, t_crash = "crashed", t
                break
            U, t = U_new, t + dt
            steps += 1
        if status == "crashed":
            break
        t = target
        current = SolutionField(mesh, initial.ops, U)
        rows.append(diagnostics_row(current, t))
        if any(abs(t - s) <= tol for s in snap_times):
            snapshots[t] = current.copy()
            checkpoints.extend(_checkpoint(config, current, t, stem))

    final = SolutionField(mesh, initial.ops, U)
    return RunResult(status, t_crash, t, np.array(rows), final, snapshots, checkpoints, steps)
