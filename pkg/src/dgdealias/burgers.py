"""Frozen-solution aliasing analysis and a small split-form DGSEM for 1D Burgers.

The frozen analysis evaluates the volume terms of the weak split form on a
single reference element with the boundary flux dropped, maps the nodal
right-hand side to modal space and reports one value per Legendre mode.
``alpha = 1`` is the conservative form, ``alpha = 0`` the advective one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import (
    derivative_matrix,
    interpolation_matrix,
    lgl_rule,
    orthonormal_legendre,
    vandermonde,
)
from .solver.rk import low_storage_rk_step

__all__ = [
    "FrozenSpec",
    "TRHSReport",
    "BurgersResult",
    "turbulent_modal_coeffs",
    "frozen_trhs",
    "exact_trhs",
    "relative_energy_rate",
    "conservative_sequence",
    "ordering_checks",
    "burgers_rhs",
    "burgers_run",
]


@dataclass(frozen=True)
class FrozenSpec:
    N: int
    alpha: float = 1.0
    quad_points: int | None = None
    perturbation_amplitude: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.perturbation_amplitude <= 0.5:
            raise ValueError(f"perturbation amplitude must lie in [0, 0.5], got {self.perturbation_amplitude}")
        if self.quad_points is not None and self.quad_points < self.N + 1:
            raise ValueError(f"need quad_points >= N+1 = {self.N + 1}, got {self.quad_points}")

    @property
    def Q(self) -> int:
        return self.N + 1 if self.quad_points is None else self.quad_points


@dataclass
class TRHSReport:
    N: int
    label: str
    values: np.ndarray
    relative_rate: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.values) != self.N + 1:
            raise ValueError("TRHS report needs N+1 values")


def turbulent_modal_coeffs(N: int, amplitude: float = 0.0, seed: int = 0) -> np.ndarray:
    """Modal coefficients (j+1)^(-5/6), optionally with multiplicative noise."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    qhat = np.arange(1, N + 2, dtype=float) ** (-5.0 / 6.0)
    if amplitude:
        rng = np.random.default_rng(seed)
        qhat = qhat * (1.0 + amplitude * rng.uniform(-1.0, 1.0, N + 1))
    return qhat


def _volume_residual(qhat, N, alpha, Q):
    quad = lgl_rule(Q - 1)
    xq, wq = quad.nodes, quad.weights
    Dq = derivative_matrix(xq)
    basis = lgl_rule(N).nodes
    ell = interpolation_matrix(basis, xq)  # ell[k, i] = l_i(x_k)
    dell = ell @ derivative_matrix(basis)  # l_i'(x_k), exact for degree N-1

    q = vandermonde(xq, N + 1) @ qhat
    dq = Dq @ q
    conservative = dell.T @ (wq * 0.5 * q * q)
    if alpha == 1.0:
        return conservative
    # products with l_i are collocated at the Q points and differentiated as degree Q-1 interpolants
    d_q_ell = Dq @ (q[:, None] * ell)
    advective = ell.T @ (wq * 0.5 * q * dq) - d_q_ell.T @ (wq * 0.5 * q)
    return alpha * conservative + (alpha - 1.0) * advective


def _report(qhat, N, residual, label):
    rule = lgl_rule(N)
    values = np.linalg.solve(vandermonde(rule.nodes), residual / rule.weights)
    return TRHSReport(N, label, values, values * np.arange(1, N + 2) ** (5.0 / 6.0))


def frozen_trhs(qhat, spec: FrozenSpec) -> TRHSReport:
    qhat = np.asarray(qhat, dtype=float)
    N = spec.N
    if len(qhat) != N + 1:
        raise ValueError(f"expected {N + 1} modal coefficients, got {len(qhat)}")
    residual = _volume_residual(qhat, N, spec.alpha, spec.Q)
    return _report(qhat, N, residual, f"alpha={spec.alpha:g},Q={spec.Q}")


def exact_trhs(qhat, N: int) -> TRHSReport:
    """Conservative TRHS with 2N+2 LGL points; exact for the degree 3N-1 integrand."""
    qhat = np.asarray(qhat, dtype=float)
    residual = _volume_residual(qhat, N, 1.0, 2 * N + 2)
    return _report(qhat, N, residual, "exact")


def relative_energy_rate(report: TRHSReport, qhat=None) -> np.ndarray:
    if qhat is not None and len(qhat) != len(report.values):
        raise ValueError("modal coefficient and report lengths differ")
    return report.values * np.arange(1, len(report.values) + 1) ** (5.0 / 6.0)


def conservative_sequence(qhat, N: int, Qs=None):
    """TRHS_N of the conservative form for increasing Q (default N+1 .. 2N+2)."""
    Qs = range(N + 1, 2 * N + 3) if Qs is None else Qs
    return np.array([frozen_trhs(qhat, FrozenSpec(N, 1.0, Q)).values[N] for Q in Qs])


def ordering_checks(qhat, N: int, Q: int | None = None, tol: float = 1e-12) -> dict:
    """Pass/fail of the aliasing properties at mode N.

    * ``ordering``: TRHS(0) < TRHS(1/2) < TRHS(exact) < TRHS(1)
    * ``from_above``: conservative values with Q in [N+1, 2N+2] never drop below
      the exact one (beyond ``tol`` relative) and start strictly above it
    * ``monotone``: the conservative gap shrinks as Q grows
    * ``consistent``: Q = 2N+2 reproduces the exact value
    """
    vals = {a: frozen_trhs(qhat, FrozenSpec(N, a, Q)).values[N] for a in (0.0, 0.5, 1.0)}
    exact = exact_trhs(qhat, N).values[N]
    seq = conservative_sequence(qhat, N)
    gap = seq - exact
    scale = tol * max(1.0, abs(exact))
    return {
        "ordering": bool(vals[0.0] < vals[0.5] < exact < vals[1.0]),
        "from_above": bool(gap[0] > scale and np.all(gap > -scale)),
        "monotone": bool(np.all(np.diff(gap) < scale)),
        "consistent": bool(abs(gap[-1]) <= scale),
    }


# ---------------------------------------------------------------------------
# time-marching split form


@dataclass
class BurgersResult:
    status: str
    t_crash: float | None
    times: np.ndarray
    totals: np.ndarray
    x: np.ndarray
    q: np.ndarray


def _llf(qL, qR):
    return 0.25 * (qL * qL + qR * qR) - 0.5 * np.maximum(np.abs(qL), np.abs(qR)) * (qR - qL)


def burgers_rhs(q, D, weights, dx, alpha):
    """Strong split-form rate for q of shape (n_el, N+1) on a periodic mesh."""
    f = 0.5 * q * q
    vol = alpha * (f @ D.T) + (1.0 - alpha) * q * (q @ D.T)
    fstar = _llf(q[:, -1], np.roll(q[:, 0], -1))  # face e sits right of element e
    surf = np.zeros_like(q)
    surf[:, -1] += (fstar - f[:, -1]) / weights[-1]
    surf[:, 0] -= (np.roll(fstar, 1) - f[:, 0]) / weights[0]
    return -(2.0 / dx) * (vol + surf)


def burgers_run(N, n_el, alpha, cfl, t_end, initial, domain=(-1.0, 1.0), dt=None) -> BurgersResult:
    """March the split-form Burgers DGSEM on a periodic mesh.

    ``initial`` is either a callable of x or an (n_el, N+1) array of nodal
    values.  A fixed ``dt`` overrides the CFL rule.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    rule = lgl_rule(N)
    D = derivative_matrix(rule.nodes)
    lo, hi = domain
    dx = (hi - lo) / n_el
    x = lo + dx * (np.arange(n_el)[:, None] + 0.5 * (rule.nodes[None, :] + 1.0))
    q = np.array(initial(x) if callable(initial) else initial, dtype=float)
    if q.shape != x.shape:
        raise ValueError(f"initial data must have shape {x.shape}")

    def total(v):
        return 0.5 * dx * np.sum(v @ rule.weights)

    def rate(v):
        return burgers_rhs(v, D, rule.weights, dx, alpha)

    t = 0.0
    times, totals = [0.0], [(total(q), total(0.5 * q * q))]
    while t < t_end - 1e-14 * max(1.0, t_end):
        if dt is None:
            speed = np.abs(q).max()
            step = cfl * dx / ((2 * N + 1) * speed) if speed > 0 else t_end - t
        else:
            step = dt
        step = min(step, t_end - t)
        with np.errstate(over="ignore", invalid="ignore"):
            q_new = low_storage_rk_step(q, rate, step)
        if not np.all(np.isfinite(q_new)):
            return BurgersResult("crashed", t, np.array(times), np.array(totals), x, q)
        q, t = q_new, t + step
        times.append(t)
        totals.append((total(q), total(0.5 * q * q)))
    return BurgersResult("completed", None, np.array(times), np.array(totals), x, q)
