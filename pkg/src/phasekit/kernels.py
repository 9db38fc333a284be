"""Fixed-step RK4 stepping kernels.

The same integration loop is provided twice: a numba @njit build (default)
and the pure-numpy fallback, selected at call time. Setting the environment
variable ``PHASEKIT_DISABLE_NUMBA`` to any value other than "0" forces the
numpy path; so does an unavailable numba. ``benchmarks/bench_rk4.py`` compares
the two.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "PHASEKIT_DISABLE_NUMBA"

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - sandbox always has numba
    HAS_NUMBA = False


def _rk4_steps(h: np.ndarray, psi0: np.ndarray, tau_grid: np.ndarray,
               dtau: float) -> np.ndarray:
    """Integrate i dpsi/dtau = H psi over tau_grid, dense output per point.

    Each grid interval is cut into round(span/dtau) equal substeps so the grid
    points are hit exactly. No renormalization: norm drift stays visible as a
    diagnostic for the caller.
    """
    n_pts = tau_grid.shape[0]
    dim = h.shape[0]
    out = np.empty((n_pts, dim), dtype=np.complex128)
    psi = psi0.copy()
    out[0] = psi
    for g in range(1, n_pts):
        span = tau_grid[g] - tau_grid[g - 1]
        n_sub = int(span / dtau + 0.5)
        if n_sub < 1:
            n_sub = 1
        step = span / n_sub
        for _ in range(n_sub):
            k1 = -1j * np.dot(h, psi)
            k2 = -1j * np.dot(h, psi + (0.5 * step) * k1)
            k3 = -1j * np.dot(h, psi + (0.5 * step) * k2)
            k4 = -1j * np.dot(h, psi + step * k3)
            psi = psi + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[g] = psi
    return out


rk4_steps_numpy = _rk4_steps

if HAS_NUMBA:
    rk4_steps_numba = njit(cache=True)(_rk4_steps)
else:  # pragma: no cover
    rk4_steps_numba = None


def numba_disabled() -> bool:
    value = os.environ.get(DISABLE_ENV, "")
    return value != "" and value != "0"


def active_kernel():
    """The stepping callable honoring availability and the env flag."""
    if HAS_NUMBA and not numba_disabled():
        return rk4_steps_numba
    return rk4_steps_numpy
