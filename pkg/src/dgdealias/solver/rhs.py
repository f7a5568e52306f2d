"""Semi-discrete DGSEM operators for the 3D Euler equations on periodic boxes.

Three volume treatments share one interface machinery:

* collocated strong form (LGL quadrature, diagonal mass matrix),
* split form, where the volume derivative becomes a flux-differencing sum
  over symmetric two-point fluxes,
* over-integrated weak form with Q-point Gauss rules per axis and the exact
  (full) LGL mass matrix.

Rates are returned as arrays shaped like ``SolutionField.data``.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .. import euler
from ..euler import InterfaceFlux, TwoPointFlux
from ..spectral import OperatorSet, gauss_rule, interpolation_matrix
from ._kernels import KIND_CODES, make_aux, split_volume
from .mesh import CartesianMesh, SolutionField


class VolumeKernel(str, Enum):
    STANDARD = "standard"
    OVERINTEGRATED = "overintegrated"
    SPLIT_DU = "split-du"
    SPLIT_KG = "split-kg"


SPLIT_KINDS = {VolumeKernel.SPLIT_DU: TwoPointFlux.DU, VolumeKernel.SPLIT_KG: TwoPointFlux.KG}


def check_combination(kernel, flux, quad_points=None, N=None):
    kernel, flux = VolumeKernel(kernel), InterfaceFlux(flux)
    if flux is InterfaceFlux.CENTRAL and kernel is not VolumeKernel.SPLIT_KG:
        raise ValueError("the central interface flux requires the split-kg volume kernel")
    if kernel is VolumeKernel.OVERINTEGRATED:
        if quad_points is None:
            raise ValueError("over-integration needs a quadrature point count Q")
        if N is not None and quad_points < N + 1:
            raise ValueError(f"over-integration needs Q >= N+1 = {N + 1}, got {quad_points}")
    return kernel, flux


def apply_along(mat, arr, axis):
    """Contract ``mat[r, s]`` with axis ``axis`` of ``arr``."""
    arr = np.ascontiguousarray(arr)
    axis %= arr.ndim
    lead, n = arr.shape[:axis], arr.shape[axis]
    trail = arr.shape[axis + 1:]
    if not trail:
        return (arr.reshape(-1, n) @ mat.T).reshape(*lead, mat.shape[0])
    x = arr.reshape(int(np.prod(lead, dtype=int)), n, int(np.prod(trail, dtype=int)))
    return np.matmul(mat, x).reshape(*lead, mat.shape[0], *trail)


def _take(a, index, axis):
    return np.take(a, index, axis=axis)


class DGOperator:
    """Right-hand side evaluator ``rate(U) = dU/dt`` for one scheme.

    ``two_point`` selects the flux-differencing kernel explicitly; by default
    it follows the volume kernel (and is unused for standard/over-integrated).
    """

    def __init__(self, mesh: CartesianMesh, ops: OperatorSet, kernel=VolumeKernel.SPLIT_KG,
                 flux=InterfaceFlux.ROE_KG, quad_points=None, two_point=None):
        if mesh.dims != 3:
            raise ValueError("the Euler operator needs a 3D mesh")
        self.kernel, self.flux = check_combination(kernel, flux, quad_points, ops.N)
        self.mesh, self.ops = mesh, ops
        self.scale = np.array([1.0 / h for h in mesh.metric])  # 2 / dx
        if two_point is not None:
            self.core = TwoPointFlux(two_point)
        else:
            self.core = SPLIT_KINDS.get(self.kernel, TwoPointFlux.STANDARD_CENTRAL)
        self.use_split = two_point is not None or self.kernel in SPLIT_KINDS
        self.D = np.ascontiguousarray(ops.D)
        self.w = np.asarray(ops.weights)
        if self.kernel is VolumeKernel.OVERINTEGRATED:
            self._setup_overintegration(quad_points)

    def _setup_overintegration(self, Q):
        g = gauss_rule(Q)
        Ig = interpolation_matrix(self.ops.nodes, g.nodes)
        Dg = Ig @ self.ops.D
        self.Q = Q
        self.Ig = Ig
        self.test_d = (g.weights[:, None] * Dg).T
        self.test = (g.weights[:, None] * Ig).T
        self.mass = Ig.T @ (g.weights[:, None] * Ig)
        self.mass_inv = np.linalg.inv(self.mass)

    # -- interfaces ---------------------------------------------------------

    def face_states(self, U, axis):
        """Left/right traces at the face to the right of every element."""
        qL = _take(U, -1, 4 + axis)
        qR = np.roll(_take(U, 0, 4 + axis), -1, axis=1 + axis)
        return qL, qR

    def numerical_flux(self, qL, qR, axis):
        return euler.interface_flux(self.flux, self.core, qL, qR, axis)

    # -- volume terms (reference space, no metric) ---------------------------

    def collocated_volume(self, U, prim, axis):
        """sum_n D_in f(q_n) along ``axis``."""
        return apply_along(self.D, euler._flux_from(U, prim, axis), 4 + axis)

    def split_volume(self, U, prim, scale, kind=None):
        kind = self.core if kind is None else TwoPointFlux(kind)
        m = self.ops.N + 1
        nE = self.mesh.n_elements
        aux = np.ascontiguousarray(make_aux(U, prim).reshape(9, nE, m**3))
        out = np.empty((5, nE, m**3))
        split_volume(KIND_CODES[kind.value], aux, self.D, np.asarray(scale, dtype=float), out)
        return out.reshape(U.shape)

    # -- full rates ----------------------------------------------------------

    def __call__(self, U):
        return self.rate(U)

    def rate(self, U):
        if self.kernel is VolumeKernel.OVERINTEGRATED:
            return self._rate_overintegrated(U)
        return self._rate_collocated(U)

    def _rate_collocated(self, U):
        prim = euler.cons_to_prim(U)
        if self.use_split:
            total = self.split_volume(U, prim, self.scale)
        else:
            total = np.zeros_like(U)
            for d in range(3):
                total += self.scale[d] * self.collocated_volume(U, prim, d)
        for d in range(3):
            ax = 4 + d
            qL, qR = self.face_states(U, d)
            fstar = self.numerical_flux(qL, qR, d)
            f_right = euler._flux_from(qL, _take(prim, -1, ax), d)
            f_left = euler._flux_from(_take(U, 0, ax), _take(prim, 0, ax), d)
            right = (fstar - f_right) * (self.scale[d] / self.w[-1])
            left = (np.roll(fstar, 1, axis=1 + d) - f_left) * (self.scale[d] / self.w[0])
            idx_r = [slice(None)] * U.ndim
            idx_r[ax] = -1
            idx_l = [slice(None)] * U.ndim
            idx_l[ax] = 0
            total[tuple(idx_r)] += right
            total[tuple(idx_l)] -= left
        return -total

    def _rate_overintegrated(self, U):
        euler.cons_to_prim(U)  # nodal admissibility
        Ug = U
        for ax in (4, 5, 6):
            Ug = apply_along(self.Ig, Ug, ax)
        prim_g = euler.cons_to_prim(Ug)
        res = np.zeros_like(U)
        for d in range(3):
            f = euler._flux_from(Ug, prim_g, d)
            for ax in (4, 5, 6):
                f = apply_along(self.test_d if ax == 4 + d else self.test, f, ax)
            res += self.scale[d] * f
        for d in range(3):
            face_axes = (4, 5)  # node axes left on a face array
            qL, qR = self.face_states(U, d)
            for ax in face_axes:
                qL = apply_along(self.Ig, qL, ax)
                qR = apply_along(self.Ig, qR, ax)
            fstar = self.numerical_flux(qL, qR, d)
            for ax in face_axes:
                fstar = apply_along(self.test, fstar, ax)
            idx_r = [slice(None)] * U.ndim
            idx_r[4 + d] = -1
            idx_l = [slice(None)] * U.ndim
            idx_l[4 + d] = 0
            res[tuple(idx_r)] -= self.scale[d] * fstar
            res[tuple(idx_l)] += self.scale[d] * np.roll(fstar, 1, axis=1 + d)
        for ax in (4, 5, 6):
            res = apply_along(self.mass_inv, res, ax)
        return res


def rhs_standard(field: SolutionField, flux=InterfaceFlux.ROE_CLASSIC):
    return DGOperator(field.mesh, field.ops, VolumeKernel.STANDARD, flux).rate(field.data)


def rhs_split(field: SolutionField, kind=TwoPointFlux.KG, flux=None):
    kind = TwoPointFlux(kind)
    if flux is None:
        flux = InterfaceFlux.ROE_KG if kind is TwoPointFlux.KG else InterfaceFlux.ROE_CLASSIC
    kernel = VolumeKernel.SPLIT_KG if kind is TwoPointFlux.KG else VolumeKernel.SPLIT_DU
    if kind is TwoPointFlux.STANDARD_CENTRAL:
        kernel = VolumeKernel.STANDARD
    return DGOperator(field.mesh, field.ops, kernel, flux, two_point=kind).rate(field.data)


def rhs_overintegrated(field: SolutionField, Q: int, flux=InterfaceFlux.ROE_CLASSIC):
    return DGOperator(field.mesh, field.ops, VolumeKernel.OVERINTEGRATED, flux, quad_points=Q).rate(field.data)
