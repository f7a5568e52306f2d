"""Compressible Euler state algebra, two-point fluxes and interface fluxes.

States are numpy arrays whose first axis holds the five components,
conserved ``[rho, rho*u, rho*v, rho*w, rho*e]`` or primitive
``[rho, u, v, w, p]``; any trailing shape is allowed.  ``axis`` selects the
Cartesian direction (0, 1, 2).  Metric factors are never applied here.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

GAMMA = 1.4

__all__ = [
    "GAMMA",
    "InvalidStateError",
    "TwoPointFlux",
    "InterfaceFlux",
    "cons_to_prim",
    "prim_to_cons",
    "physical_flux",
    "two_point_flux",
    "max_wave_speed",
    "llf_interface",
    "roe_average",
    "roe_dissipation",
    "roe_eigenvalues",
    "roe_interface",
    "central_interface",
    "interface_flux",
]


class InvalidStateError(ValueError):
    """Non-admissible state; ``values`` holds the offending entries."""

    def __init__(self, message, values=None):
        super().__init__(message)
        self.values = values


class TwoPointFlux(str, Enum):
    STANDARD_CENTRAL = "central"
    DU = "du"
    KG = "kg"


class InterfaceFlux(str, Enum):
    LLF = "llf"
    ROE_CLASSIC = "roe"
    ROE_KG = "roe-kg"
    CENTRAL = "central"


def _check(rho, p):
    bad = ~((rho > 0) & (p > 0) & np.isfinite(rho) & np.isfinite(p))
    if np.any(bad):
        raise InvalidStateError(
            f"non-admissible state: {int(np.count_nonzero(bad))} point(s) with rho<=0, p<=0 or non-finite",
            values={"rho": np.asarray(rho)[bad], "p": np.asarray(p)[bad]},
        )


def pressure(q):
    return (GAMMA - 1.0) * (q[4] - 0.5 * (q[1] ** 2 + q[2] ** 2 + q[3] ** 2) / q[0])


def cons_to_prim(q, check=True):
    q = np.asarray(q, dtype=float)
    rho = q[0]
    if check and np.any(~(rho > 0)):
        _check(rho, np.ones_like(rho))
    u, v, w = q[1] / rho, q[2] / rho, q[3] / rho
    p = (GAMMA - 1.0) * (q[4] - 0.5 * rho * (u * u + v * v + w * w))
    if check:
        _check(rho, p)
    return np.stack([rho, u, v, w, p])


def prim_to_cons(w):
    w = np.asarray(w, dtype=float)
    rho, u, v, ww, p = w
    _check(rho, p)
    E = p / (GAMMA - 1.0) + 0.5 * rho * (u * u + v * v + ww * ww)
    return np.stack([rho, rho * u, rho * v, rho * ww, E])


def _flux_from(q, prim, axis):
    un = prim[1 + axis]
    mass = q[0] * un
    f = np.stack([mass, q[1] * un, q[2] * un, q[3] * un, (q[4] + prim[4]) * un])
    f[1 + axis] += prim[4]
    return f


def physical_flux(q, axis: int):
    q = np.asarray(q, dtype=float)
    return _flux_from(q, cons_to_prim(q), axis)


def max_wave_speed(q, axis: int):
    prim = cons_to_prim(q)
    return np.abs(prim[1 + axis]) + np.sqrt(GAMMA * prim[4] / prim[0])


def two_point_flux(kind, qL, qR, axis: int):
    """Symmetric, consistent two-point flux of the chosen splitting."""
    kind = TwoPointFlux(kind)
    qL = np.asarray(qL, dtype=float)
    qR = np.asarray(qR, dtype=float)
    pL, pR = cons_to_prim(qL), cons_to_prim(qR)
    if kind is TwoPointFlux.STANDARD_CENTRAL:
        return 0.5 * (_flux_from(qL, pL, axis) + _flux_from(qR, pR, axis))
    un = 0.5 * (pL[1 + axis] + pR[1 + axis])
    p_avg = 0.5 * (pL[4] + pR[4])
    if kind is TwoPointFlux.DU:
        f = np.stack([
            0.5 * (qL[0] + qR[0]) * un,
            0.5 * (qL[1] + qR[1]) * un,
            0.5 * (qL[2] + qR[2]) * un,
            0.5 * (qL[3] + qR[3]) * un,
            0.5 * ((qL[4] + pL[4]) + (qR[4] + pR[4])) * un,
        ])
    else:
        mass = 0.5 * (pL[0] + pR[0]) * un
        e_avg = 0.5 * (qL[4] / qL[0] + qR[4] / qR[0])
        f = np.stack([
            mass,
            mass * 0.5 * (pL[1] + pR[1]),
            mass * 0.5 * (pL[2] + pR[2]),
            mass * 0.5 * (pL[3] + pR[3]),
            mass * e_avg + p_avg * un,
        ])
    f[1 + axis] += p_avg
    return f


def llf_interface(core, qL, qR, axis: int):
    """Local Lax-Friedrichs: symmetric part from ``core``, dissipation -lambda/2 [[q]]."""
    lam = np.maximum(max_wave_speed(qL, axis), max_wave_speed(qR, axis))
    return two_point_flux(core, qL, qR, axis) - 0.5 * lam * (np.asarray(qR) - np.asarray(qL))


def _swap(q, axis):
    if axis == 0:
        return q
    idx = [0, 1, 2, 3, 4]
    idx[1], idx[1 + axis] = idx[1 + axis], idx[1]
    return q[idx]


def roe_average(qL, qR):
    """Roe-averaged velocity (3, ...), total enthalpy and sound speed."""
    pL, pR = cons_to_prim(qL), cons_to_prim(qR)
    sL, sR = np.sqrt(pL[0]), np.sqrt(pR[0])
    hL = (qL[4] + pL[4]) / pL[0]
    hR = (qR[4] + pR[4]) / pR[0]
    wsum = sL + sR
    vel = (sL * pL[1:4] + sR * pR[1:4]) / wsum
    H = (sL * hL + sR * hR) / wsum
    a2 = (GAMMA - 1.0) * (H - 0.5 * np.sum(vel * vel, axis=0))
    if np.any(~(a2 > 0)):
        raise InvalidStateError("Roe average has non-positive squared sound speed", values={"a2": a2[~(a2 > 0)]})
    return vel, H, np.sqrt(a2)


def roe_eigenvalues(u, a, kg_eigenvalues: bool = False):
    """Absolute characteristic speeds; the KG variant reuses |u+a| for the first wave."""
    first = np.abs(u + a) if kg_eigenvalues else np.abs(u - a)
    return first, np.abs(u), np.abs(u), np.abs(u), np.abs(u + a)


def roe_dissipation(qL, qR, axis: int, kg_eigenvalues: bool = False):
    """|A_roe| (qR - qL) in direction ``axis``; returns the matrix-vector product."""
    qL = _swap(np.asarray(qL, dtype=float), axis)
    qR = _swap(np.asarray(qR, dtype=float), axis)
    (u, v, w), H, a = roe_average(qL, qR)
    d = qR - qL
    # wave strengths of the jump in the Roe eigenvector basis
    a3 = d[2] - v * d[0]
    a4 = d[3] - w * d[0]
    d5 = d[4] - a3 * v - a4 * w
    a2 = (GAMMA - 1.0) / a**2 * (d[0] * (H - u * u) + u * d[1] - d5)
    a1 = (d[0] * (u + a) - d[1] - a * a2) / (2.0 * a)
    a5 = d[0] - a1 - a2
    lam1, lam_u, _, _, lam5 = roe_eigenvalues(u, a, kg_eigenvalues)
    s1, s2, s5 = lam1 * a1, lam_u * a2, lam5 * a5
    s3, s4 = lam_u * a3, lam_u * a4
    ke = 0.5 * (u * u + v * v + w * w)
    diss = np.stack([
        s1 + s2 + s5,
        s1 * (u - a) + s2 * u + s5 * (u + a),
        (s1 + s2 + s5) * v + s3,
        (s1 + s2 + s5) * w + s4,
        s1 * (H - u * a) + s2 * ke + s3 * v + s4 * w + s5 * (H + u * a),
    ])
    return _swap(diss, axis)


def roe_interface(variant, qL, qR, axis: int, core=None):
    """Roe flux; ``core`` overrides the symmetric part (default: central for
    the classical variant, KG for the kinetic-energy-stable variant)."""
    variant = InterfaceFlux(variant)
    if variant not in (InterfaceFlux.ROE_CLASSIC, InterfaceFlux.ROE_KG):
        raise ValueError(f"not a Roe variant: {variant}")
    kg = variant is InterfaceFlux.ROE_KG
    if core is None:
        core = TwoPointFlux.KG if kg else TwoPointFlux.STANDARD_CENTRAL
    sym = two_point_flux(core, qL, qR, axis)
    return sym - 0.5 * roe_dissipation(qL, qR, axis, kg_eigenvalues=kg)


def central_interface(qL, qR, axis: int):
    return two_point_flux(TwoPointFlux.KG, qL, qR, axis)


def interface_flux(flux, core, qL, qR, axis: int):
    """Dispatch on :class:`InterfaceFlux` with the volume kernel's two-point flux as core."""
    flux = InterfaceFlux(flux)
    if flux is InterfaceFlux.LLF:
        return llf_interface(core, qL, qR, axis)
    if flux is InterfaceFlux.CENTRAL:
        return central_interface(qL, qR, axis)
    if flux is InterfaceFlux.ROE_KG:
        return roe_interface(flux, qL, qR, axis, core=TwoPointFlux.KG)
    return roe_interface(flux, qL, qR, axis, core=core)
