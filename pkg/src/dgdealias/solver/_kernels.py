"""Compiled flux-differencing loop for the split-form volume term.

The two-point formulas here mirror :func:`dgdealias.euler.two_point_flux`;
the test suite checks the two against each other.
"""

import numba
import numpy as np

KIND_CODES = {"central": 0, "du": 1, "kg": 2}


@numba.njit(inline="always")
def _pair(kind, d, a, b, e, f):
    # a, b: (rho, u, v, w, p, mx, my, mz, E) at two nodes of one line
    rho_a, rho_b = a[0, e], b[0, f]
    un_a, un_b = a[1 + d, e], b[1 + d, f]
    p_a, p_b = a[4, e], b[4, f]
    if kind == 0:
        ma, mb = rho_a * un_a, rho_b * un_b
        f0 = 0.5 * (ma + mb)
        f1 = 0.5 * (a[5, e] * un_a + b[5, f] * un_b)
        f2 = 0.5 * (a[6, e] * un_a + b[6, f] * un_b)
        f3 = 0.5 * (a[7, e] * un_a + b[7, f] * un_b)
        f4 = 0.5 * ((a[8, e] + p_a) * un_a + (b[8, f] + p_b) * un_b)
        pm = 0.5 * (p_a + p_b)
    elif kind == 1:
        un = 0.5 * (un_a + un_b)
        f0 = 0.5 * (rho_a + rho_b) * un
        f1 = 0.5 * (a[5, e] + b[5, f]) * un
        f2 = 0.5 * (a[6, e] + b[6, f]) * un
        f3 = 0.5 * (a[7, e] + b[7, f]) * un
        f4 = 0.5 * ((a[8, e] + p_a) + (b[8, f] + p_b)) * un
        pm = 0.5 * (p_a + p_b)
    else:
        un = 0.5 * (un_a + un_b)
        mass = 0.5 * (rho_a + rho_b) * un
        f0 = mass
        f1 = mass * 0.5 * (a[1, e] + b[1, f])
        f2 = mass * 0.5 * (a[2, e] + b[2, f])
        f3 = mass * 0.5 * (a[3, e] + b[3, f])
        pm = 0.5 * (p_a + p_b)
        f4 = mass * 0.5 * (a[8, e] / rho_a + b[8, f] / rho_b) + pm * un
    if d == 0:
        f1 += pm
    elif d == 1:
        f2 += pm
    else:
        f3 += pm
    return f0, f1, f2, f3, f4


@numba.njit(cache=True)
def split_volume(kind, aux, D, scale, out):
    """out[:, el, i, j, k] = sum_d scale[d] * 2 sum_n D[., n] F#_d(node, line node n).

    ``aux`` has shape (9, E, m*m*m) in C order over (i, j, k).
    """
    nE = aux.shape[1]
    m = D.shape[0]
    mm = m * m
    for el in range(nE):
        a = aux[:, el, :]
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    c = i * mm + j * m + k
                    s0 = s1 = s2 = s3 = s4 = 0.0
                    for d in range(3):
                        sd = scale[d]
                        if sd == 0.0:
                            continue
                        t0 = t1 = t2 = t3 = t4 = 0.0
                        for n in range(m):
                            if d == 0:
                                row, nb = i, n * mm + j * m + k
                            elif d == 1:
                                row, nb = j, i * mm + n * m + k
                            else:
                                row, nb = k, i * mm + j * m + n
                            dd = D[row, n]
                            if dd == 0.0:
                                continue
                            f0, f1, f2, f3, f4 = _pair(kind, d, a, a, c, nb)
                            t0 += dd * f0
                            t1 += dd * f1
                            t2 += dd * f2
                            t3 += dd * f3
                            t4 += dd * f4
                        s0 += sd * t0
                        s1 += sd * t1
                        s2 += sd * t2
                        s3 += sd * t3
                        s4 += sd * t4
                    out[0, el, c] = 2.0 * s0
                    out[1, el, c] = 2.0 * s1
                    out[2, el, c] = 2.0 * s2
                    out[3, el, c] = 2.0 * s3
                    out[4, el, c] = 2.0 * s4
    return out


def make_aux(q, prim):
    """Stack primitives and conserved momenta/energy as the kernel expects."""
    return np.concatenate([prim, q[1:]], axis=0)
