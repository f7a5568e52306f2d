"""Relative energy rate per Legendre mode for the frozen Burgers problem.

One CSV per N with columns mode, exact, and one column per alpha, at
Q = N + 1; plus the alpha = 1 highest-mode value as Q grows.
"""

import argparse

from dgdealias.burgers import (
    FrozenSpec,
    conservative_sequence,
    exact_trhs,
    frozen_trhs,
    turbulent_modal_coeffs,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", default="3,7,15")
    ap.add_argument("--alphas", default="1.0,0.5,0.0")
    ap.add_argument("--prefix", default="burgers")
    args = ap.parse_args()
    alphas = [float(a) for a in args.alphas.split(",")]
    for N in (int(v) for v in args.orders.split(",")):
        qhat = turbulent_modal_coeffs(N)
        cols = [exact_trhs(qhat, N).relative_rate] + [frozen_trhs(qhat, FrozenSpec(N, a)).relative_rate for a in alphas]
        with open(f"{args.prefix}_N{N}_rates.csv", "w") as fh:
            fh.write("mode,exact," + ",".join(f"alpha{a:g}" for a in alphas) + "\n")
            for j in range(N + 1):
                fh.write(f"{j}," + ",".join(f"{c[j]:.17g}" for c in cols) + "\n")
        seq = conservative_sequence(qhat, N)
        exact = exact_trhs(qhat, N).values[N]
        with open(f"{args.prefix}_N{N}_overintegration.csv", "w") as fh:
            fh.write("Q,TRHS_N,gap\n")
            for Q, v in zip(range(N + 1, 2 * N + 3), seq):
                fh.write(f"{Q},{v:.17g},{v - exact:.17g}\n")
        print(f"N={N}: wrote {args.prefix}_N{N}_rates.csv and {args.prefix}_N{N}_overintegration.csv")


if __name__ == "__main__":
    main()
