"""Five-stage, fourth-order, 2N-storage Runge-Kutta (Carpenter & Kennedy 1994)."""

import numpy as np

RK4_A = np.array([
    0.0,
    -567301805773.0 / 1357537059087.0,
    -2404267990393.0 / 2016746695238.0,
    -3550918686646.0 / 2091501179385.0,
    -1275806237668.0 / 842570457699.0,
])
RK4_B = np.array([
    1432997174477.0 / 9575080441755.0,
    5161836677717.0 / 13612068292357.0,
    1720146321549.0 / 2090206949498.0,
    3134564353537.0 / 4481467310338.0,
    2277821191437.0 / 14882151754819.0,
])
RK4_C = np.array([
    0.0,
    1432997174477.0 / 9575080441755.0,
    2526269341429.0 / 6820363962896.0,
    2006345519317.0 / 3224310063776.0,
    2802321613138.0 / 2924317926251.0,
])


def low_storage_rk_step(u, rate, dt):
    """Advance ``u`` by one step of size ``dt`` for the autonomous system u' = rate(u).

    Returns a new array; ``u`` is not modified.  Exceptions raised by ``rate``
    propagate unchanged.
    """
    if dt <= 0:
        raise ValueError(f"time step must be positive, got {dt}")
    u = np.array(u, dtype=float, copy=True)
    k = np.zeros_like(u)
    for a, b in zip(RK4_A, RK4_B):
        k *= a
        k += dt * rate(u)
        u += b * k
    return u
