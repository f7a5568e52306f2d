"""Uniform periodic Cartesian meshes and element-major nodal fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..spectral import OperatorSet


@dataclass(frozen=True)
class CartesianMesh:
    """Periodic box split into ``n_el[d]`` equal elements along each axis."""

    n_el: tuple[int, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if len(self.n_el) not in (1, 3) or not len(self.n_el) == len(self.lower) == len(self.upper):
            raise ValueError("mesh needs matching 1D or 3D element counts and extents")
        if min(self.n_el) < 1:
            raise ValueError(f"n_el must be >= 1, got {self.n_el}")
        if any(hi <= lo for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("upper bounds must exceed lower bounds")

    @property
    def dims(self) -> int:
        return len(self.n_el)

    @property
    def extent(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in zip(self.lower, self.upper))

    @property
    def dx(self) -> tuple[float, ...]:
        return tuple(L / n for L, n in zip(self.extent, self.n_el))

    @property
    def metric(self) -> tuple[float, ...]:
        """x_xi, y_eta, z_zeta: half element widths."""
        return tuple(0.5 * h for h in self.dx)

    @property
    def jacobian(self) -> float:
        return float(np.prod(self.metric))

    @property
    def volume(self) -> float:
        return float(np.prod(self.extent))

    @property
    def n_elements(self) -> int:
        return int(np.prod(self.n_el))

    def node_coordinates(self, nodes):
        """Per-axis coordinate arrays of shape (n_el[d], len(nodes))."""
        nodes = np.asarray(nodes, dtype=float)
        return [
            lo + h * (np.arange(n)[:, None] + 0.5 * (nodes[None, :] + 1.0))
            for lo, h, n in zip(self.lower, self.dx, self.n_el)
        ]

    def grid(self, nodes):
        """Broadcast x, y, z node arrays of shape (Ex, Ey, Ez, m, m, m)."""
        cx, cy, cz = self.node_coordinates(nodes)
        x = cx[:, None, None, :, None, None]
        y = cy[None, :, None, None, :, None]
        z = cz[None, None, :, None, None, :]
        shape = np.broadcast_shapes(x.shape, y.shape, z.shape)
        return np.broadcast_to(x, shape), np.broadcast_to(y, shape), np.broadcast_to(z, shape)


def build_mesh(n_el, extent=2 * np.pi, dims: int = 3, lower=None) -> CartesianMesh:
    """Uniform periodic mesh; ``n_el`` and ``extent`` may be scalars or per-axis."""
    counts = tuple(int(n) for n in np.broadcast_to(n_el, (dims,)))
    ext = tuple(float(e) for e in np.broadcast_to(extent, (dims,)))
    lo = tuple(-0.5 * e for e in ext) if lower is None else tuple(float(v) for v in np.broadcast_to(lower, (dims,)))
    return CartesianMesh(counts, lo, tuple(a + e for a, e in zip(lo, ext)))


@dataclass
class SolutionField:
    """Conserved nodal values, stored as (5, Ex, Ey, Ez, m, m, m).

    Component-first storage keeps each conserved variable contiguous for the
    kernels; :meth:`element_major` gives the (Ex, Ey, Ez, 5, m, m, m) view used
    on disk.
    """

    mesh: CartesianMesh
    ops: OperatorSet
    data: np.ndarray

    def __post_init__(self):
        m = self.ops.N + 1
        expected = (5, *self.mesh.n_el, m, m, m)
        if self.data.shape != expected:
            raise ValueError(f"field data must have shape {expected}, got {self.data.shape}")

    @property
    def N(self) -> int:
        return self.ops.N

    @property
    def n_dof(self) -> int:
        m = self.N + 1
        return int(np.prod([n * m for n in self.mesh.n_el]))

    def element_major(self):
        return np.moveaxis(self.data, 0, 3)

    def copy(self):
        return SolutionField(self.mesh, self.ops, self.data.copy())

    @classmethod
    def from_function(cls, mesh, ops, func):
        """Sample ``func(x, y, z) -> (5, ...)`` conserved state at the nodes."""
        x, y, z = mesh.grid(ops.nodes)
        data = np.asarray(func(x, y, z), dtype=float)
        return cls(mesh, ops, np.ascontiguousarray(np.broadcast_to(data, (5, *x.shape))))


def conserved_totals(field: SolutionField):
    """Integral of each conserved component over the box (fixed summation order)."""
    w = field.ops.weights
    w3 = w[:, None, None] * w[None, :, None] * w[None, None, :]
    per_elem = np.einsum("cxyzijk,ijk->cxyz", field.data, w3)
    return field.mesh.jacobian * per_elem.reshape(5, -1).sum(axis=1)
