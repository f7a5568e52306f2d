"""Spurious pressure rate of each volume kernel on a density wave at uniform p and u.

The exact solution keeps p constant; a kernel that preserves this equilibrium
gives dp/dt at round-off.  Prints max |dp/dt| per (kernel, N, n_el).
"""

import argparse

import numpy as np

from dgdealias.euler import GAMMA, prim_to_cons
from dgdealias.solver.mesh import SolutionField, build_mesh
from dgdealias.solver.rhs import DGOperator
from dgdealias.spectral import build_operators

VELOCITY = (1.0, 0.5, -0.3)


def wave(x, y, z):
    one = np.ones_like(x)
    return prim_to_cons(np.stack([1 + 0.2 * np.sin(x), *(v * one for v in VELOCITY), one]))


def pressure_rate(field, kernel, Q=None):
    r = DGOperator(field.mesh, field.ops, kernel, "llf", Q)(field.data)
    q = field.data
    u = q[1:4] / q[0]
    return (GAMMA - 1) * (r[4] - np.sum(u * r[1:4], axis=0) + 0.5 * np.sum(u * u, axis=0) * r[0])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="2,3,4")
    ap.add_argument("--meshes", default="8,16,32")
    args = ap.parse_args()
    print("kernel,N,n_el,max_abs_dpdt")
    for kernel in ("standard", "overintegrated", "split-du", "split-kg"):
        for N in (int(v) for v in args.orders.split(",")):
            for n in (int(v) for v in args.meshes.split(",")):
                f = SolutionField.from_function(build_mesh((n, 1, 1)), build_operators(N), wave)
                Q = 2 * (N + 1) if kernel == "overintegrated" else None
                print(f"{kernel},{N},{n},{np.abs(pressure_rate(f, kernel, Q)).max():.3e}")


if __name__ == "__main__":
    main()
