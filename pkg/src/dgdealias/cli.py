"""Command-line front end.

Every subcommand writes its artifacts plus ``manifest.json`` into
``--output``.  Values come from flags, then ``--config`` (flat ``key=value``
text, keys spelled like the long flags), then built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import __version__, analysis, burgers
from .euler import InterfaceFlux
from .solver.driver import RunResult, SolverConfig, run
from .solver.io import CheckpointError, read_checkpoint, read_meta, write_series_csv
from .solver.rhs import VolumeKernel, check_combination
from .spectral import build_operators
from .tgv import TGVParams, preset_by_label, tgv_field

log = logging.getLogger("dgdealias")


class UsageError(Exception):
    pass


def _floats(text):
    return tuple(float(v) for v in str(text).split(",") if v.strip())


def _ints(text):
    return tuple(int(v) for v in str(text).split(",") if v.strip())


def _pair(text):
    lo, hi = _floats(text)
    return lo, hi


def fmt(x) -> str:
    return format(float(x), ".17g")


class Manifest:
    def __init__(self, command, outdir, args):
        self.outdir = outdir
        self.data = {
            "command": command,
            "version": __version__,
            "config": {k: v for k, v in vars(args).items() if k not in ("func",)},
            "status": "error",
            "artifacts": [],
        }
        self.t0 = time.perf_counter()

    def add(self, *paths):
        for p in paths:
            self.data["artifacts"].append(os.path.relpath(p, self.outdir))

    def write(self):
        self.data["wall_clock_s"] = time.perf_counter() - self.t0
        path = os.path.join(self.outdir, "manifest.json")
        with open(path, "w") as fh:
            json.dump(self.data, fh, indent=2, default=str, sort_keys=True)
        return path


# -- burgers-aliasing -------------------------------------------------------------


def cmd_burgers_aliasing(args, manifest):
    N = args.N
    Q = args.Q if args.Q is not None else N + 1
    if Q < N + 1:
        raise UsageError(f"--Q must be >= N+1 = {N + 1}")
    alphas = _floats(args.alpha)
    if not alphas or any(not 0.0 <= a <= 1.0 for a in alphas):
        raise UsageError("--alpha needs comma-separated values in [0, 1]")
    qhat = burgers.turbulent_modal_coeffs(N, args.amplitude, args.seed)
    reports = [burgers.frozen_trhs(qhat, burgers.FrozenSpec(N, a, Q)) for a in alphas]
    reports.append(burgers.exact_trhs(qhat, N))
    for rep in reports:
        name = "trhs_exact.csv" if rep.label == "exact" else f"trhs_alpha{rep.label.split(',')[0][6:]}_Q{Q}.csv"
        path = os.path.join(args.output, name)
        with open(path, "w") as fh:
            fh.write("mode,qhat,TRHS,relative_rate\n")
            for j, (v, r) in enumerate(zip(rep.values, rep.relative_rate)):
                fh.write(f"{j},{fmt(qhat[j])},{fmt(v)},{fmt(r)}\n")
        manifest.add(path)
    checks = burgers.ordering_checks(qhat, N, Q)
    seq = burgers.conservative_sequence(qhat, N)
    path = os.path.join(args.output, "ordering_report.txt")
    with open(path, "w") as fh:
        fh.write(f"N={N} Q={Q} amplitude={args.amplitude} seed={args.seed}\n")
        for name, ok in checks.items():
            fh.write(f"{name}: {'PASS' if ok else 'FAIL'}\n")
        fh.write("conservative TRHS_N for Q=N+1..2N+2: " + ",".join(fmt(v) for v in seq) + "\n")
    manifest.add(path)
    manifest.data["checks"] = checks
    manifest.data["status"] = "completed"
    return 0


# -- tgv --------------------------------------------------------------------------


def _solver_config(args, N, checkpoint_dir):
    try:
        return SolverConfig(
            N=N,
            kernel=args.kernel,
            flux=args.flux,
            quad_points=args.Q,
            cfl=args.cfl,
            t_end=args.t_end,
            output_every=args.output_every,
            snapshot_times=_floats(args.snapshots),
            checkpoint_dir=checkpoint_dir,
            dt=args.dt,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _resolve_case(args):
    if args.preset:
        try:
            p = preset_by_label(args.preset)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        return p.N, p.n_el
    if args.N is None or args.n_el is None:
        raise UsageError("give --preset or both --N and --n-el")
    return args.N, args.n_el


def _record_run(manifest, result: RunResult, args, series_name="timeseries.csv"):
    path = write_series_csv(os.path.join(args.output, series_name), result.series)
    manifest.add(path, *result.checkpoints)
    manifest.data.update(status=result.status, t_crash=result.t_crash, t_final=result.t_final, steps=result.steps)


def cmd_tgv(args, manifest):
    try:
        check_combination(args.kernel, args.flux, args.Q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.init:
        try:
            field, t0, _ = read_checkpoint(args.init)
        except CheckpointError as exc:
            raise UsageError(str(exc)) from exc
        manifest.data["initial_time"] = t0
        N = field.N
    else:
        N, n_el = _resolve_case(args)
        field = tgv_field(N, n_el, TGVParams())
    config = _solver_config(args, N, args.output)
    manifest.data["n_dof"] = field.n_dof
    result = run(config, field, stem="tgv")
    _record_run(manifest, result, args)
    log.info("tgv %s at t=%.4f (%d steps)", result.status, result.t_final, result.steps)
    return 0


# -- quadrature-study ---------------------------------------------------------------


def cmd_quadrature_study(args, manifest):
    m = args.m
    Qs = _ints(args.Q_list) if args.Q_list else tuple(range(m, 2 * m + 1))
    if any(Q < m for Q in Qs):
        raise UsageError(f"every Q must be >= m = {m}")
    try:
        InterfaceFlux(args.flux)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for Q in Qs:
        ns = argparse.Namespace(**{**vars(args), "kernel": VolumeKernel.OVERINTEGRATED.value, "Q": Q,
                                   "snapshots": ""})
        config = _solver_config(ns, m - 1, None)
        result = run(config, tgv_field(m - 1, args.n_el))
        series = write_series_csv(os.path.join(args.output, f"timeseries_Q{Q}.csv"), result.series)
        manifest.add(series)
        rows.append((Q, result.status, result.t_crash))
        log.info("Q=%d: %s t_c=%s", Q, result.status, result.t_crash)
    path = os.path.join(args.output, "quadrature_study.csv")
    with open(path, "w") as fh:
        fh.write("Q,status,t_c\n")
        for Q, status, tc in rows:
            fh.write(f"{Q},{status},{'' if tc is None else fmt(tc)}\n")
    manifest.add(path)
    manifest.data["status"] = "completed"
    manifest.data["results"] = [{"Q": Q, "status": s, "t_c": tc} for Q, s, tc in rows]
    return 0


# -- analyze ------------------------------------------------------------------------


def cmd_analyze(args, manifest):
    try:
        field, t, _ = read_checkpoint(args.checkpoint)
    except CheckpointError as exc:
        raise UsageError(str(exc)) from exc
    grid = analysis.probe_field(field)
    stem = os.path.basename(args.checkpoint).rsplit(".", 1)[0] if args.checkpoint.endswith((".meta", ".bin")) \
        else os.path.basename(args.checkpoint)
    manifest.data.update(time=t, n_probes=grid.n_points, trace_ratio=None)
    if args.mode in ("spectrum", "both"):
        spec = analysis.energy_spectrum(grid)
        manifest.add(analysis.write_spectrum_csv(os.path.join(args.output, f"{stem}_spectrum.csv"), spec))
    if args.mode in ("qr", "both"):
        try:
            hist = analysis.qr_histogram(grid, bins=args.bins, r_range=_pair(args.r_range),
                                         q_range=_pair(args.q_range))
        except analysis.InvalidInputError as exc:
            raise UsageError(str(exc)) from exc
        manifest.add(
            analysis.write_qr_csv(os.path.join(args.output, f"{stem}_qr.csv"), hist),
            analysis.write_discriminant_csv(os.path.join(args.output, f"{stem}_discriminant.csv"), hist),
        )
        manifest.data.update(trace_ratio=analysis.trace_ratio(grid), n_clipped=hist.n_clipped)
    manifest.data["status"] = "completed"
    return 0


# -- operators-dump -----------------------------------------------------------------


def cmd_operators_dump(args, manifest):
    try:
        ops = build_operators(args.N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    m = args.N + 1
    out = {}
    path = os.path.join(args.output, f"lgl_N{args.N}_nodes.csv")
    with open(path, "w") as fh:
        fh.write("i,node,weight\n")
        for i in range(m):
            fh.write(f"{i},{fmt(ops.nodes[i])},{fmt(ops.weights[i])}\n")
    out["nodes"] = path
    for name, mat in (("D", ops.D), ("V", ops.V), ("Q", ops.Q)):
        path = os.path.join(args.output, f"lgl_N{args.N}_{name}.csv")
        with open(path, "w") as fh:
            for row in mat:
                fh.write(",".join(fmt(v) for v in row) + "\n")
        out[name] = path
    manifest.add(*out.values())
    manifest.data.update(status="completed", sbp_residual=ops.sbp_residual())
    return 0


# -- parser -------------------------------------------------------------------------


def _add_run_flags(p):
    p.add_argument("--kernel", choices=[k.value for k in VolumeKernel], default="split-kg")
    p.add_argument("--flux", choices=[f.value for f in InterfaceFlux], default="roe-kg")
    p.add_argument("--Q", type=int, default=None, help="quadrature points per axis (over-integration)")
    p.add_argument("--cfl", type=float, default=0.5)
    p.add_argument("--t-end", type=float, default=14.0)
    p.add_argument("--output-every", type=float, default=0.1)
    p.add_argument("--dt", type=float, default=None, help="fixed step instead of the CFL rule")


def build_parser():
    parser = argparse.ArgumentParser(prog="dgdealias", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="flat key=value file of flag defaults")
    common.add_argument("--output", default="out", help="output directory")
    common.add_argument("--threads", type=int, default=None, help="cap on compiled-kernel worker threads")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("burgers-aliasing", parents=[common], help="frozen Burgers TRHS study")
    p.add_argument("--N", type=int, default=7)
    p.add_argument("--Q", type=int, default=None)
    p.add_argument("--alpha", default="1.0,0.5,0.0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitude", type=float, default=0.0)
    p.set_defaults(func=cmd_burgers_aliasing)

    p = sub.add_parser("tgv", parents=[common], help="Taylor-Green vortex run")
    p.add_argument("--preset", default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--n-el", type=int, default=None)
    p.add_argument("--snapshots", default="9,14", help="comma-separated checkpoint times")
    p.add_argument("--init", default=None, help="start from this checkpoint instead of the TGV state")
    _add_run_flags(p)
    p.set_defaults(func=cmd_tgv)

    p = sub.add_parser("quadrature-study", parents=[common], help="crash time versus Q")
    p.add_argument("--m", type=int, required=False, default=None)
    p.add_argument("--n-el", type=int, default=None)
    p.add_argument("--Q-list", default=None, help="comma-separated Q values (default m..2m)")
    _add_run_flags(p)
    p.set_defaults(func=cmd_quadrature_study, flux="llf")

    p = sub.add_parser("analyze", parents=[common], help="spectrum and QR diagram of a checkpoint")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--mode", choices=["spectrum", "qr", "both"], default="both")
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--r-range", default="-5,5")
    p.add_argument("--q-range", default="-5,5")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("operators-dump", parents=[common], help="write LGL nodes, weights, D, V, Q")
    p.add_argument("--N", type=int, default=7)
    p.set_defaults(func=cmd_operators_dump)
    return parser


def read_config(path):
    """Flat ``key=value`` file; keys may use dashes or underscores."""
    try:
        raw = read_meta(path)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in raw.items()}


def parse_args(argv=None):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.config:
        cfg = read_config(args.config)
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = sorted(set(cfg) - known)
        if unknown:
            parser.error(f"unknown config keys: {', '.join(unknown)}")
        # string defaults pass through each flag's type converter; explicit flags still win
        subparser.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def _require(args):
    if args.command == "analyze" and not args.checkpoint:
        raise UsageError("analyze needs --checkpoint")
    if args.command == "quadrature-study" and (args.m is None or args.n_el is None):
        raise UsageError("quadrature-study needs --m and --n-el")


def main(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"dgdealias: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads:
        import numba

        numba.set_num_threads(max(1, min(args.threads, numba.config.NUMBA_NUM_THREADS)))
    os.makedirs(args.output, exist_ok=True)
    manifest = Manifest(args.command, args.output, args)
    code = 1
    try:
        _require(args)
        code = args.func(args, manifest)
    except UsageError as exc:
        print(f"dgdealias {args.command}: error: {exc}", file=sys.stderr)
        manifest.data["error"] = str(exc)
        code = 2
    except Exception as exc:  # noqa: BLE001 - recorded in the manifest, then re-raised
        manifest.data["error"] = repr(exc)
        manifest.write()
        raise
    manifest.write()
    return code


if __name__ == "__main__":
    sys.exit(main())
