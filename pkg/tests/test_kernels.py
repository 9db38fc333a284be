import numpy as np
import pytest

from phasekit import boson_basis, boson_dimer_hamiltonian
from phasekit.kernels import (
    DISABLE_ENV,
    HAS_NUMBA,
    active_kernel,
    numba_disabled,
    rk4_steps_numpy,
)


def _small_problem():
    h = np.ascontiguousarray(boson_dimer_hamiltonian(boson_basis(3), 0.05).entries)
    psi0 = np.zeros(4, dtype=complex)
    psi0[0] = 1.0
    tau = np.linspace(0.0, 2.0, 21)
    return h, psi0, tau


def test_numpy_kernel_shape_and_start():
    h, psi0, tau = _small_problem()
    out = rk4_steps_numpy(h, psi0, tau, 1e-2)
    assert out.shape == (21, 4)
    assert np.array_equal(out[0], psi0)


def test_numpy_kernel_conserves_norm_at_small_steps():
    h, psi0, tau = _small_problem()
    out = rk4_steps_numpy(h, psi0, tau, 1e-3)
    norms = np.linalg.norm(out, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-10


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
def test_numba_kernel_agrees_with_numpy():
    from phasekit.kernels import rk4_steps_numba

    h, psi0, tau = _small_problem()
    a = rk4_steps_numpy(h, psi0, tau, 1e-2)
    b = rk4_steps_numba(h, psi0, tau, 1e-2)
    # same arithmetic order on both paths: agreement is exact
    assert np.array_equal(a, b)


def test_env_flag_selects_fallback(monkeypatch):
    monkeypatch.setenv(DISABLE_ENV, "1")
    assert numba_disabled()
    assert active_kernel() is rk4_steps_numpy
    monkeypatch.setenv(DISABLE_ENV, "0")
    assert not numba_disabled()
    monkeypatch.delenv(DISABLE_ENV)
    assert not numba_disabled()


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
def test_active_kernel_uses_numba_when_enabled(monkeypatch):
    from phasekit.kernels import rk4_steps_numba

    monkeypatch.delenv(DISABLE_ENV, raising=False)
    assert active_kernel() is rk4_steps_numba


def test_substep_count_rounds_to_grid():
    # interval 0.1 with dtau 0.03 should subdivide into 3 substeps, not 4:
    # the kernel scales the step to land exactly on each grid point
    h, psi0, _ = _small_problem()
    tau = np.array([0.0, 0.1])
    coarse = rk4_steps_numpy(h, psi0, tau, 0.03)
    explicit = rk4_steps_numpy(h, psi0, np.linspace(0.0, 0.1, 4), 0.1 / 3.0)
    assert np.allclose(coarse[-1], explicit[-1], atol=1e-15)
