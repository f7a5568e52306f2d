"""Checkpoint files: ``<stem>.meta`` (key=value text) and ``<stem>.bin``.

The binary holds little-endian float64 values in element-major,
component-major order, i.e. a C-ordered (Ex, Ey, Ez, 5, m, m, m) array.
"""

from __future__ import annotations

import os

import numpy as np

from ..euler import GAMMA
from ..spectral import build_operators
from .mesh import CartesianMesh, SolutionField


class CheckpointError(ValueError):
    pass


def write_checkpoint(stem, field: SolutionField, t: float, labels: dict | None = None):
    stem = os.fspath(stem)
    meta = {
        "N": field.N,
        "n_el": ",".join(str(n) for n in field.mesh.n_el),
        "t": repr(float(t)),
        "gamma": repr(GAMMA),
        "lower": ",".join(repr(v) for v in field.mesh.lower),
        "upper": ",".join(repr(v) for v in field.mesh.upper),
        "layout": "element-major,component-major,float64-le",
    }
    meta.update(labels or {})
    with open(stem + ".meta", "w") as fh:
        for key, value in meta.items():
            fh.write(f"{key}={value}\n")
    field.element_major().astype("<f8").tofile(stem + ".bin")
    return stem + ".meta", stem + ".bin"


def read_meta(path):
    meta = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                key, _, value = line.partition("=")
                meta[key.strip()] = value.strip()
    return meta


def read_checkpoint(stem):
    """Return (field, t, meta); raises CheckpointError on malformed input."""
    stem = os.fspath(stem)
    if stem.endswith((".meta", ".bin")):
        stem = stem.rsplit(".", 1)[0]
    try:
        meta = read_meta(stem + ".meta")
        N = int(meta["N"])
        n_el = tuple(int(v) for v in meta["n_el"].split(","))
        lower = tuple(float(v) for v in meta["lower"].split(","))
        upper = tuple(float(v) for v in meta["upper"].split(","))
        t = float(meta["t"])
    except (OSError, KeyError, ValueError) as exc:
        raise CheckpointError(f"cannot read checkpoint metadata {stem}.meta: {exc}") from exc
    m = N + 1
    expected = 8 * 5 * int(np.prod(n_el)) * m**3
    try:
        size = os.path.getsize(stem + ".bin")
    except OSError as exc:
        raise CheckpointError(f"missing checkpoint data {stem}.bin") from exc
    if size != expected:
        raise CheckpointError(f"{stem}.bin holds {size} bytes, expected {expected} for N={N}, n_el={n_el}")
    raw = np.fromfile(stem + ".bin", dtype="<f8").reshape(*n_el, 5, m, m, m)
    mesh = CartesianMesh(n_el, lower, upper)
    field = SolutionField(mesh, build_operators(N), np.ascontiguousarray(np.moveaxis(raw, 3, 0)).astype(float))
    return field, t, meta


def write_series_csv(path, series, columns=None):
    """Time-series CSV with 17-significant-digit values."""
    from .driver import SERIES_COLUMNS

    columns = columns or SERIES_COLUMNS
    series = np.atleast_2d(np.asarray(series, dtype=float))
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in series:
            fh.write(",".join(format(float(v), ".17g") for v in row) + "\n")
    return path


def read_series_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
    return header, np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
