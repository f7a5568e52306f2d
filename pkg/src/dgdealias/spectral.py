"""One-dimensional quadrature, nodal/modal bases and collocation operators.

Everything here lives on the reference interval [-1, 1].  Matrices are small
dense float64 arrays; an :class:`OperatorSet` is frozen after construction and
may be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "RuleKind",
    "QuadratureRule",
    "OperatorSet",
    "OperatorConstructionError",
    "lgl_rule",
    "gauss_rule",
    "legendre",
    "orthonormal_legendre",
    "lagrange_basis_eval",
    "barycentric_weights",
    "derivative_matrix",
    "interpolation_matrix",
    "vandermonde",
    "build_operators",
]

MAX_NEWTON_ITER = 100
NEWTON_TOL = 4.0 * np.finfo(float).eps
SBP_TOL = 1e-12


class OperatorConstructionError(RuntimeError):
    """Raised when a quadrature or operator fails its self-check."""


class RuleKind(str, Enum):
    LGL = "LGL"
    GAUSS = "GaussLegendre"


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureRule:
    kind: RuleKind
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        """Number of nodes."""
        return len(self.nodes)

    def integrate(self, values):
        return np.dot(self.weights, values)


def legendre(n: int, x):
    """Legendre polynomial L_n and its derivative at ``x`` (three-term recurrence)."""
    x = np.asarray(x, dtype=float)
    if n == 0:
        return np.ones_like(x), np.zeros_like(x)
    if n == 1:
        return x.copy(), np.ones_like(x)
    l_m2, l_m1 = np.ones_like(x), x.copy()
    d_m2, d_m1 = np.zeros_like(x), np.ones_like(x)
    for k in range(2, n + 1):
        lk = ((2 * k - 1) * x * l_m1 - (k - 1) * l_m2) / k
        dk = d_m2 + (2 * k - 1) * l_m1
        l_m2, l_m1 = l_m1, lk
        d_m2, d_m1 = d_m1, dk
    return l_m1, d_m1


def orthonormal_legendre(n: int, x):
    """L_n scaled to unit L2 norm on [-1, 1]."""
    val, _ = legendre(n, x)
    return val * np.sqrt((2 * n + 1) / 2.0)


def _lgl_q_and_l(n: int, x):
    # q = L_{n+1} - L_{n-1} vanishes at interior LGL nodes; returns q, q', L_n.
    l_np1, d_np1 = legendre(n + 1, x)
    l_nm1, d_nm1 = legendre(n - 1, x)
    l_n, _ = legendre(n, x)
    return l_np1 - l_nm1, d_np1 - d_nm1, l_n


def lgl_rule(N: int) -> QuadratureRule:
    """N+1 Legendre-Gauss-Lobatto nodes and weights (degree 2N-1 exact)."""
    if N < 1:
        raise ValueError(f"LGL rule needs N >= 1, got {N}")
    nodes = np.empty(N + 1)
    weights = np.empty(N + 1)
    nodes[0], nodes[N] = -1.0, 1.0
    w_end = 2.0 / (N * (N + 1))
    weights[0] = weights[N] = w_end
    for j in range(1, (N + 1) // 2):
        x = -np.cos(np.pi * j / N)
        for _ in range(MAX_NEWTON_ITER):
            q, dq, _ = _lgl_q_and_l(N, x)
            delta = -q / dq
            x += delta
            if abs(delta) <= NEWTON_TOL * abs(x):
                break
        else:
            raise OperatorConstructionError(f"LGL Newton iteration did not converge (N={N}, j={j})")
        _, _, l_n = _lgl_q_and_l(N, x)
        nodes[j], nodes[N - j] = x, -x
        weights[j] = weights[N - j] = 2.0 / (N * (N + 1) * l_n**2)
    if N % 2 == 0:
        _, _, l_n = _lgl_q_and_l(N, 0.0)
        nodes[N // 2] = 0.0
        weights[N // 2] = 2.0 / (N * (N + 1) * l_n**2)
    return QuadratureRule(RuleKind.LGL, _frozen(nodes), _frozen(weights))


def gauss_rule(Q: int) -> QuadratureRule:
    """Q-point Gauss-Legendre rule (interior nodes, degree 2Q-1 exact)."""
    if Q < 1:
        raise ValueError(f"Gauss rule needs Q >= 1, got {Q}")
    if Q == 1:
        return QuadratureRule(RuleKind.GAUSS, _frozen([0.0]), _frozen([2.0]))
    nodes = np.empty(Q)
    weights = np.empty(Q)
    for j in range((Q + 1) // 2):
        x = -np.cos((2 * j + 1) * np.pi / (2 * Q))
        for _ in range(MAX_NEWTON_ITER):
            lq, dlq = legendre(Q, x)
            delta = -lq / dlq
            x += delta
            if abs(delta) <= NEWTON_TOL * abs(x):
                break
        else:
            raise OperatorConstructionError(f"Gauss Newton iteration did not converge (Q={Q}, j={j})")
        _, dlq = legendre(Q, x)
        nodes[j], nodes[Q - 1 - j] = x, -x
        weights[j] = weights[Q - 1 - j] = 2.0 / ((1.0 - x**2) * dlq**2)
    if Q % 2 == 1:
        _, dlq = legendre(Q, 0.0)
        nodes[Q // 2] = 0.0
        weights[Q // 2] = 2.0 / dlq**2
    return QuadratureRule(RuleKind.GAUSS, _frozen(nodes), _frozen(weights))


def _check_distinct(nodes):
    nodes = np.asarray(nodes, dtype=float)
    if len(np.unique(nodes)) != len(nodes):
        raise ValueError(f"nodes must be distinct, got {nodes}")
    return nodes


def lagrange_basis_eval(nodes, i: int, x):
    """Value of the Lagrange cardinal polynomial l_i of ``nodes`` at ``x``."""
    nodes = _check_distinct(nodes)
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for l, xl in enumerate(nodes):
        if l != i:
            out = out * (x - xl) / (nodes[i] - xl)
    return out


def barycentric_weights(nodes):
    nodes = _check_distinct(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def derivative_matrix(nodes):
    """D[m, n] = l_n'(x_m); diagonal from the negative-sum identity."""
    nodes = _check_distinct(nodes)
    w = barycentric_weights(nodes)
    diff = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(diff, 1.0)
    D = (w[None, :] / w[:, None]) / diff
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


def interpolation_matrix(src, dst):
    """Matrix whose row r holds l_j(dst[r]) for the Lagrange basis on ``src``."""
    src = _check_distinct(src)
    dst = np.atleast_1d(np.asarray(dst, dtype=float))
    w = barycentric_weights(src)
    diff = dst[:, None] - src[None, :]
    hit = diff == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        t = w[None, :] / diff
        mat = t / t.sum(axis=1, keepdims=True)
    rows = hit.any(axis=1)
    mat[rows] = hit[rows].astype(float)
    return mat


def vandermonde(nodes, n_modes: int | None = None):
    """V[i, j] = orthonormal L_j(nodes[i])."""
    nodes = np.asarray(nodes, dtype=float)
    n_modes = len(nodes) if n_modes is None else n_modes
    return np.stack([orthonormal_legendre(j, nodes) for j in range(n_modes)], axis=1)


@dataclass(frozen=True)
class OperatorSet:
    """Collocation operators of the degree-N LGL nodal basis."""

    N: int
    rule: QuadratureRule
    D: np.ndarray
    V: np.ndarray
    Vinv: np.ndarray

    @property
    def nodes(self):
        return self.rule.nodes

    @property
    def weights(self):
        return self.rule.weights

    @property
    def M(self):
        """Diagonal of the collocated mass matrix."""
        return self.rule.weights

    @property
    def B(self):
        b = np.zeros((self.N + 1, self.N + 1))
        b[0, 0], b[-1, -1] = -1.0, 1.0
        return b

    @property
    def Q(self):
        return self.M[:, None] * self.D

    def sbp_residual(self) -> float:
        Q = self.Q
        return float(np.abs(Q + Q.T - self.B).max())


def build_operators(N: int) -> OperatorSet:
    if not 1 <= N <= 31:
        raise ValueError(f"polynomial degree must satisfy 1 <= N <= 31, got {N}")
    rule = lgl_rule(N)
    V = vandermonde(rule.nodes)
    ops = OperatorSet(N, rule, _frozen(derivative_matrix(rule.nodes)), _frozen(V), _frozen(np.linalg.inv(V)))
    res = ops.sbp_residual()
    if res > SBP_TOL:
        raise OperatorConstructionError(f"SBP residual {res:.3e} exceeds {SBP_TOL:g} at N={N}")
    return ops
