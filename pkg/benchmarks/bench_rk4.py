"""Benchmark the RK4 hot loop: numba JIT kernel vs the pure-numpy fallback.

Run as ``python benchmarks/bench_rk4.py``. The JIT kernel is warmed up on a
tiny problem before timing so compile time is excluded; both paths integrate
the same boson dimer trajectory and must agree to the last bit (identical
arithmetic order), which the script asserts.
"""

from __future__ import annotations

import time

import numpy as np

from phasekit import boson_basis, boson_dimer_hamiltonian
from phasekit.kernels import HAS_NUMBA, rk4_steps_numpy

if HAS_NUMBA:
    from phasekit.kernels import rk4_steps_numba


def _problem(n: int, ubar: float):
    basis = boson_basis(n)
    h = np.ascontiguousarray(boson_dimer_hamiltonian(basis, ubar).entries)
    psi0 = np.zeros(n + 1, dtype=complex)
    psi0[0] = 1.0
    tau = np.linspace(0.0, 40.0, 2001)
    return h, psi0, tau


def _time(kernel, h, psi0, tau, dtau, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel(h, psi0, tau, dtau)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    if HAS_NUMBA:
        warm_h, warm_psi0, warm_tau = _problem(2, 0.0)
        rk4_steps_numba(warm_h, warm_psi0, warm_tau, 1e-2)  # trigger compile

    print(f"{'case':<24}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}{'match':>12}")
    for n, ubar, dtau in ((5, 0.05, 1e-3), (10, 0.05, 1e-3), (10, 5.0, 1e-4)):
        h, psi0, tau = _problem(n, ubar)
        t_np, out_np = _time(rk4_steps_numpy, h, psi0, tau, dtau)
        row = f"N={n} ubar={ubar} dtau={dtau:g}"
        if not HAS_NUMBA:
            print(f"{row:<24}{t_np:>12.3f}{'n/a':>12}{'n/a':>10}{'n/a':>12}")
            continue
        t_nb, out_nb = _time(rk4_steps_numba, h, psi0, tau, dtau)
        gap = float(np.max(np.abs(out_np - out_nb)))
        assert gap == 0.0, f"kernel mismatch: {gap}"
        print(f"{row:<24}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>10.1f}{gap:>12.1e}")

    if not HAS_NUMBA:
        print("numba unavailable; timed the numpy fallback only")


if __name__ == "__main__":
    main()
