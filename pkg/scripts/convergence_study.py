"""Density-wave advection: L2 density error and observed order per kernel.

Writes one CSV row per (kernel, N, n_el); the order column compares each
mesh with the previous one.
"""

import argparse
import math

import numpy as np

from dgdealias.euler import prim_to_cons
from dgdealias.solver.driver import SolverConfig, run
from dgdealias.solver.mesh import SolutionField, build_mesh
from dgdealias.solver.rhs import apply_along
from dgdealias.spectral import build_operators, gauss_rule, interpolation_matrix

VELOCITY = (1.0, 0.5, -0.3)


def wave(x, y, z, t):
    one = np.ones_like(x)
    rho = 1.0 + 0.2 * np.sin(x - VELOCITY[0] * t)
    return prim_to_cons(np.stack([rho, *(v * one for v in VELOCITY), one]))


def l2_density_error(field, t):
    g = gauss_rule(field.N + 4)
    I = interpolation_matrix(field.ops.nodes, g.nodes)
    rho = field.data[0]
    for ax in (3, 4, 5):
        rho = apply_along(I, rho, ax)
    x, y, z = field.mesh.grid(g.nodes)
    w3 = np.einsum("i,j,k->ijk", g.weights, g.weights, g.weights)
    return math.sqrt(field.mesh.jacobian * np.einsum("xyzijk,ijk->", (rho - wave(x, y, z, t)[0]) ** 2, w3))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kernels", default="standard,overintegrated,split-du,split-kg")
    ap.add_argument("--orders", default="2,3,4")
    ap.add_argument("--meshes", default="8,16,32,64")
    ap.add_argument("--flux", default="llf")
    ap.add_argument("--t-end", type=float, default=1.0)
    ap.add_argument("--out", default="convergence.csv")
    args = ap.parse_args()
    rows = ["kernel,N,n_el,error,order"]
    for kernel in args.kernels.split(","):
        for N in (int(v) for v in args.orders.split(",")):
            prev = None
            for n in (int(v) for v in args.meshes.split(",")):
                f = SolutionField.from_function(build_mesh((n, 1, 1)), build_operators(N),
                                                lambda x, y, z: wave(x, y, z, 0.0))
                dt = 0.2 * (2 * np.pi / n) / ((2 * N + 1) * 2.2)
                Q = 2 * (N + 1) if kernel == "overintegrated" else None
                cfg = SolverConfig(N=N, kernel=kernel, flux=args.flux, quad_points=Q, t_end=args.t_end,
                                   output_every=None, dt=dt)
                err = l2_density_error(run(cfg, f).field, args.t_end)
                order = "" if prev is None else f"{math.log2(prev / err):.3f}"
                rows.append(f"{kernel},{N},{n},{err:.17g},{order}")
                print(rows[-1], flush=True)
                prev = err
    with open(args.out, "w") as fh:
        fh.write("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()
