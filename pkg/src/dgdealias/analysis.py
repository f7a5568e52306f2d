"""Post-processing: equispaced probing, energy spectra and QR diagrams.

Probes sit at ``x_r = x_min + (r + 1/2) L / n_p`` with ``n_p = n_el (N+1)``,
so none lands on an element face and every element owns exactly ``N+1``
probes per direction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .solver.mesh import SolutionField
from .solver.rhs import apply_along
from .spectral import interpolation_matrix


class InvalidInputError(ValueError):
    pass


@dataclass(frozen=True)
class ProbeGrid:
    """Probe coordinates with velocity (3, nx, ny, nz) and gradient (3, 3, nx, ny, nz).

    ``gradient[i, j]`` is du_i/dx_j.
    """

    coords: tuple
    velocity: np.ndarray
    gradient: np.ndarray
    extent: tuple = (2 * np.pi,) * 3

    @property
    def shape(self):
        return self.velocity.shape[1:]

    @property
    def n_points(self) -> int:
        return int(np.prod(self.shape))


def probe_offsets(m: int):
    """Reference-element probe positions, -1 + (2r + 1)/m."""
    return -1.0 + (2.0 * np.arange(m) + 1.0) / m


def _to_global(arr):
    # (..., Ex, Ey, Ez, m, m, m) -> (..., Ex*m, Ey*m, Ez*m)
    lead = arr.shape[:-6]
    ex, ey, ez, mx, my, mz = arr.shape[-6:]
    k = len(lead)
    order = list(range(k)) + [k, k + 3, k + 1, k + 4, k + 2, k + 5]
    return np.ascontiguousarray(arr.transpose(order)).reshape(*lead, ex * mx, ey * my, ez * mz)


def probe_field(field: SolutionField) -> ProbeGrid:
    """Interpolate nodal velocity (u = m / rho pointwise) and its gradient to the probes."""
    mesh, ops = field.mesh, field.ops
    m = ops.N + 1
    P = interpolation_matrix(ops.nodes, probe_offsets(m))
    Pd = P @ ops.D
    vel = field.data[1:4] / field.data[0]
    node_axes = (4, 5, 6)

    probed = vel
    for ax in node_axes:
        probed = apply_along(P, probed, ax)
    grads = []
    for d in range(3):
        g = vel
        for ax in node_axes:
            g = apply_along(Pd if ax == 4 + d else P, g, ax)
        grads.append(g / mesh.metric[d])
    gradient = np.stack(grads, axis=1)

    coords = tuple(
        lo + (np.arange(n * m) + 0.5) * L / (n * m)
        for lo, L, n in zip(mesh.lower, mesh.extent, mesh.n_el)
    )
    return ProbeGrid(coords, _to_global(probed), _to_global(gradient), tuple(mesh.extent))


# -- spectra -------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    k: np.ndarray
    E: np.ndarray
    modal_total: float  # sum over every Fourier mode, before shell truncation
    mean_ke: float  # volume mean of |u'|^2 / 2 of the de-meaned samples

    @property
    def k_max(self) -> int:
        return int(self.k[-1]) if len(self.k) else 0


def energy_spectrum(source) -> Spectrum:
    """Shell-binned kinetic energy spectrum of a ProbeGrid or a (3, nx, ny, nz) velocity array.

    Shells are integer mode numbers (nearest-integer rounding of |k|); with
    the default 2*pi box these coincide with physical wavenumbers.
    """
    vel = source.velocity if isinstance(source, ProbeGrid) else np.asarray(source, dtype=float)
    if vel.ndim != 4 or vel.shape[0] != 3:
        raise InvalidInputError(f"velocity must have shape (3, nx, ny, nz), got {vel.shape}")
    shape = vel.shape[1:]
    if min(shape) < 4:
        raise InvalidInputError(f"spectrum needs at least 4 probes per direction, got {shape}")
    n_total = int(np.prod(shape))
    fluct = vel - vel.mean(axis=(1, 2, 3), keepdims=True)
    uhat = np.fft.fftn(fluct, axes=(1, 2, 3)) / n_total
    modal = 0.5 * np.sum(uhat.real**2 + uhat.imag**2, axis=0)

    kx, ky, kz = (np.fft.fftfreq(n, 1.0 / n) for n in shape)
    kmag = np.sqrt(kx[:, None, None] ** 2 + ky[None, :, None] ** 2 + kz[None, None, :] ** 2)
    shell = np.rint(kmag).astype(int)
    k_max = min(shape) // 2 - 1
    E = np.bincount(shell.ravel(), weights=modal.ravel(), minlength=k_max + 1)[1 : k_max + 1]
    return Spectrum(
        k=np.arange(1, k_max + 1),
        E=E,
        modal_total=float(modal.sum()),
        mean_ke=float(0.5 * np.mean(np.sum(fluct**2, axis=0))),
    )


# -- QR invariants ---------------------------------------------------------------


def qr_invariants(A):
    """Q = -A_ij A_ji / 2 and R = -A_ij A_jk A_ki / 3 for A of shape (3, 3, ...)."""
    A = np.asarray(A, dtype=float)
    if A.shape[:2] != (3, 3):
        raise InvalidInputError(f"gradient tensor must lead with (3, 3), got {A.shape}")
    Q = -0.5 * np.einsum("ij...,ji...->...", A, A)
    R = -np.einsum("ij...,jk...,ki...->...", A, A, A) / 3.0
    return Q, R


def discriminant_curve(r_star):
    """Q* on the zero-discriminant curve 27/4 R*^2 + Q*^3 = 0."""
    return -np.cbrt(27.0 / 4.0 * np.asarray(r_star, dtype=float) ** 2)


@dataclass(frozen=True)
class QRHistogram:
    """Counts indexed [R bin, Q bin] over the normalised (R*, Q*) plane."""

    counts: np.ndarray
    r_edges: np.ndarray
    q_edges: np.ndarray
    s2: float  # <S_ij S_ij>
    n_points: int
    n_clipped: int
    r_curve: np.ndarray
    q_curve: np.ndarray

    @property
    def s2_32(self) -> float:
        return self.s2**1.5

    @property
    def pdf(self):
        area = np.diff(self.r_edges)[:, None] * np.diff(self.q_edges)[None, :]
        return self.counts / (self.n_points * area)

    @property
    def log_pdf(self):
        """log10 of the PDF; empty bins are NaN."""
        out = np.full(self.counts.shape, np.nan)
        nz = self.counts > 0
        out[nz] = np.log10(self.pdf[nz])
        return out

    def quadrant_mass(self, r_positive: bool, q_positive: bool) -> float:
        rc = 0.5 * (self.r_edges[1:] + self.r_edges[:-1])
        qc = 0.5 * (self.q_edges[1:] + self.q_edges[:-1])
        rs = rc > 0 if r_positive else rc < 0
        qs = qc > 0 if q_positive else qc < 0
        return float(self.counts[np.ix_(rs, qs)].sum()) / self.n_points


def strain_norm(A):
    """Point average of S_ij S_ij with S the symmetric part of A (3, 3, ...)."""
    S = 0.5 * (A + np.swapaxes(A, 0, 1))
    return float(np.mean(np.einsum("ij...,ij...->...", S, S)))


def qr_histogram(source, bins=200, r_range=(-5.0, 5.0), q_range=(-5.0, 5.0), n_curve=401) -> QRHistogram:
    """Joint histogram of (R / <SS>^{3/2}, Q / <SS>); out-of-range points go to edge bins."""
    floor = 0.0
    if isinstance(source, ProbeGrid):
        A = source.gradient
        # gradients below round-off of the velocity field count as zero strain
        h = min(L / n for L, n in zip(source.extent, source.shape))
        floor = 1e-10 * float(np.max(np.abs(source.velocity), initial=0.0)) / h
    else:
        A = np.asarray(source, dtype=float)
    A = A.reshape(3, 3, -1)
    n = A.shape[2]
    if n == 0:
        raise InvalidInputError("no probe points")
    s2 = strain_norm(A)
    if not np.isfinite(s2) or np.sqrt(s2) <= floor:
        raise InvalidInputError("strain vanishes everywhere; QR normalisation undefined")
    Q, R = qr_invariants(A)
    rs, qs = R / s2**1.5, Q / s2
    r_edges = np.linspace(*r_range, bins + 1)
    q_edges = np.linspace(*q_range, bins + 1)
    outside = (rs < r_range[0]) | (rs > r_range[1]) | (qs < q_range[0]) | (qs > q_range[1])
    rc = np.clip(rs, r_range[0], r_range[1])
    qc = np.clip(qs, q_range[0], q_range[1])
    counts, _, _ = np.histogram2d(rc, qc, bins=(r_edges, q_edges))
    r_curve = np.linspace(*r_range, n_curve)
    return QRHistogram(counts.astype(np.int64), r_edges, q_edges, s2, n, int(outside.sum()),
                       r_curve, discriminant_curve(r_curve))


def trace_ratio(grid: ProbeGrid) -> float:
    """mean |tr A| / sqrt(<S_ij S_ij>): small in the nearly incompressible regime."""
    A = grid.gradient.reshape(3, 3, -1)
    tr = np.abs(A[0, 0] + A[1, 1] + A[2, 2])
    return float(tr.mean() / np.sqrt(strain_norm(A)))


# -- CSV output ------------------------------------------------------------------


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_spectrum_csv(path, spectrum: Spectrum):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "E"])
        for k, e in zip(spectrum.k, spectrum.E):
            w.writerow([int(k), fmt(e)])
    return path


def write_qr_csv(path, hist: QRHistogram):
    """Comment header with normalisation and edges, then log10(PDF) rows (one per Q bin)."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# S_ijS_ij_mean={fmt(hist.s2)}\n")
        fh.write(f"# S_ijS_ij_mean_pow_1.5={fmt(hist.s2_32)}\n")
        fh.write(f"# n_points={hist.n_points}\n")
        fh.write(f"# n_clipped={hist.n_clipped}\n")
        fh.write("# Rstar_edges=" + ",".join(fmt(v) for v in hist.r_edges) + "\n")
        fh.write("# Qstar_edges=" + ",".join(fmt(v) for v in hist.q_edges) + "\n")
        fh.write("# rows: Qstar bins ascending; columns: Rstar bins ascending; nan marks empty bins\n")
        w = csv.writer(fh)
        for row in hist.log_pdf.T:
            w.writerow([fmt(v) for v in row])
    return path


def write_discriminant_csv(path, hist: QRHistogram):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["Rstar", "Qstar"])
        for r, q in zip(hist.r_curve, hist.q_curve):
            w.writerow([fmt(r), fmt(q)])
    return path
