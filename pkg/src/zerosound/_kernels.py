"""Backend selection for the hot time-evolution loop.

Two interchangeable implementations of the same RK4 recurrence: an
explicit-loop version compiled with numba when it is importable, and a
vectorized numpy fallback.  Set ZEROSOUND_DISABLE_NUMBA=1 to force the
numpy path (also used automatically when numba is missing).  Both are
deterministic for fixed inputs; they agree with each other to rounding
(verified in the test suite), not bit-for-bit.
"""

import os

import numpy as np


def _evolve_loops(y0, mu, half_w, a, dt, steps):
    # dy_i/dt = -i mu_i (y_i + a <y>), <y> = sum_j half_w_j y_j
    n = y0.shape[0]
    trace = np.empty(steps + 1, dtype=np.complex128)
    y = y0.copy()
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)
    half = 0.5 * dt
    sixth = dt / 6.0

    mean = 0.0 + 0.0j
    for i in range(n):
        mean += half_w[i] * y[i]
    trace[0] = mean

    for step in range(steps):
        for i in range(n):
            k1[i] = -1j * mu[i] * (y[i] + a * mean)
            tmp[i] = y[i] + half * k1[i]
        m = 0.0 + 0.0j
        for i in range(n):
            m += half_w[i] * tmp[i]
        for i in range(n):
            k2[i] = -1j * mu[i] * (tmp[i] + a * m)
            tmp[i] = y[i] + half * k2[i]
        m = 0.0 + 0.0j
        for i in range(n):
            m += half_w[i] * tmp[i]
        for i in range(n):
            k3[i] = -1j * mu[i] * (tmp[i] + a * m)
            tmp[i] = y[i] + dt * k3[i]
        m = 0.0 + 0.0j
        for i in range(n):
            m += half_w[i] * tmp[i]
        for i in range(n):
            k4[i] = -1j * mu[i] * (tmp[i] + a * m)
        mean = 0.0 + 0.0j
        for i in range(n):
            y[i] = y[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            mean += half_w[i] * y[i]
        trace[step + 1] = mean
    return trace


def _evolve_numpy(y0, mu, half_w, a, dt, steps):
    imu = -1j * mu
    sixth = dt / 6.0
    trace = np.empty(steps + 1, dtype=np.complex128)
    y = y0.copy()
    trace[0] = half_w @ y
    for step in range(steps):
        k1 = imu * (y + a * (half_w @ y))
        t1 = y + (0.5 * dt) * k1
        k2 = imu * (t1 + a * (half_w @ t1))
        t2 = y + (0.5 * dt) * k2
        k3 = imu * (t2 + a * (half_w @ t2))
        t3 = y + dt * k3
        k4 = imu * (t3 + a * (half_w @ t3))
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        trace[step + 1] = half_w @ y
    return trace


def _env_disabled():
    flag = os.environ.get("ZEROSOUND_DISABLE_NUMBA", "")
    return flag.strip().lower() in ("1", "true", "yes", "on")


_evolve_numba = None
if not _env_disabled():
    try:
        from numba import njit
    except ImportError:
        pass
    else:
        try:
            # on-disk cache cuts warmup on repeat runs; unavailable in some
            # install layouts, so fall back to in-memory compilation
            _evolve_numba = njit(cache=True)(_evolve_loops)
        except RuntimeError:
            _evolve_numba = njit(_evolve_loops)


if _evolve_numba is None:
    evolve_trace = _evolve_numpy
    BACKEND = "numpy"
else:
    evolve_trace = _evolve_numba
    BACKEND = "numba"
