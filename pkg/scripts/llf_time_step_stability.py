"""Largest stable CFL of the low-storage RK scheme for LLF-type interface dissipation.

Frozen-coefficient model: 1D periodic DGSEM for u_t + c u_x = 0 with the
interface flux c{u} - s/2 [u].  LLF gives the slow waves c = |u| ~ 1 but
s = |u| + a; acoustic waves have c = s.  A tensor-product 3D operator has
eigenvalues that are sums of three 1D ones, so those are tested against the
RK amplification polynomial with the step rule dt = cfl dx / ((2N+1) s).
"""

import argparse

import numpy as np

from dgdealias.solver.rk import RK4_A, RK4_B
from dgdealias.spectral import build_operators


def amplification(z):
    u, k = np.ones_like(z), np.zeros_like(z)
    for a, b in zip(RK4_A, RK4_B):
        k = a * k + z * u
        u = u + b * k
    return u


def dg_operator(N, n_el, c, s, dx):
    ops = build_operators(N)
    D, w = np.asarray(ops.D), np.asarray(ops.weights)
    n = N + 1
    L = np.zeros((n_el * n, n_el * n))
    for e in range(n_el):
        block = slice(e * n, (e + 1) * n)
        L[block, block] -= c * D * 2 / dx
        right, left = e * n + N, e * n
        faces = (
            (right, 1, right, ((e + 1) % n_el) * n),  # own state is the left one
            (left, -1, ((e - 1) % n_el) * n + N, left),  # own state is the right one
        )
        for row, sign, uL, uR in faces:
            coeff = sign * 2 / (dx * w[0])
            L[row, uL] -= coeff * 0.5 * (c + s)
            L[row, uR] -= coeff * 0.5 * (c - s)
            L[row, row] += coeff * c
    return L


def max_growth(cfl, N, n_el, c, s):
    dx = 2 * np.pi / n_el
    dt = cfl * dx / ((2 * N + 1) * s)
    ev = np.linalg.eigvals(dg_operator(N, n_el, c, s, dx))
    z = dt * (ev[:, None, None] + ev[None, :, None] + ev[None, None, :]).ravel()
    return float(np.abs(amplification(z)).max())


def critical_cfl(N, n_el, slow, fast):
    lo, hi = 0.0, 1.0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        stable = all(max_growth(mid, N, n_el, c, fast) <= 1 + 1e-9 for c in (slow, fast))
        lo, hi = (mid, hi) if stable else (lo, mid)
    return lo


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="1,2,3,4,5,6,7")
    ap.add_argument("--n-el", type=int, default=4)
    ap.add_argument("--slow", type=float, default=1.0, help="|u| of the shear and entropy waves")
    ap.add_argument("--fast", type=float, default=11.0,
                    help="|u| + a, the LLF dissipation speed")
    args = ap.parse_args()
    print("N,critical_cfl_llf,growth_at_cfl_0.5")
    for N in (int(v) for v in args.orders.split(",")):
        print(f"{N},{critical_cfl(N, args.n_el, args.slow, args.fast):.3f},"
              f"{max_growth(0.5, N, args.n_el, args.slow, args.fast):.4f}")


if __name__ == "__main__":
    main()
