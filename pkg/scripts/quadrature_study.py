"""Crash time versus quadrature points for a desk-scale TGV case.

Thin wrapper over the ``quadrature-study`` subcommand that loops over both
classical fluxes and prints the resulting tables.
"""

import argparse
import os

from dgdealias.cli import main as cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--n-el", type=int, default=3)
    ap.add_argument("--t-end", type=float, default=14.0)
    ap.add_argument("--out", default="quadrature_study")
    args = ap.parse_args()
    for flux in ("llf", "roe"):
        out = os.path.join(args.out, flux)
        cli(["quadrature-study", "--m", str(args.m), "--n-el", str(args.n_el), "--flux", flux,
             "--t-end", str(args.t_end), "--output", out])
        print(f"-- {flux}")
        print(open(os.path.join(out, "quadrature_study.csv")).read())


if __name__ == "__main__":
    main()
