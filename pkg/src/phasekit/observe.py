"""Expectations, fluctuations, squeezing parameters, trapping detection.

All quantities are evaluated from trajectory states. Fermion-pair
trajectories live in the three-state dynamical basis; every observable here
embeds them into the full 16-dimensional Fock space first, because operator
squares visit states outside the dynamical sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import ConfigError, NumericalError
from .evolve import Trajectory
from .fock import BosonDimerBasis, StateVector, fermion_sector
from .hamiltonians import fermion_pair_embedding
from .operators import OperatorMatrix, _as_array, boson_number_diff, well_number_diff

IMAG_DISCARD_TOL = 1e-12
IMAG_ERROR_TOL = 1e-10
RADICAND_ERROR_TOL = -1e-10


@dataclass(frozen=True)
class TimeSeries:
    """A tau grid plus named real observable channels of equal length."""

    tau_grid: np.ndarray
    channels: Mapping[str, np.ndarray]

    def __post_init__(self) -> None:
        tau = np.asarray(self.tau_grid, dtype=float)
        chans: dict[str, np.ndarray] = {}
        for name, values in self.channels.items():
            arr = np.asarray(values, dtype=float)
            if arr.shape != tau.shape:
                raise ConfigError(
                    f"channel {name!r} length {arr.shape} does not match grid {tau.shape}"
                )
            arr = arr.copy()
            arr.setflags(write=False)
            chans[name] = arr
        tau = tau.copy()
        tau.setflags(write=False)
        object.__setattr__(self, "tau_grid", tau)
        object.__setattr__(self, "channels", chans)


def _states_matrix(states: Union[Trajectory, np.ndarray]) -> np.ndarray:
    arr = states.states if isinstance(states, Trajectory) else np.asarray(states, dtype=complex)
    if arr.ndim == 1:
        arr = arr[None, :]
    return arr


def _real_expectation(op: np.ndarray, states: np.ndarray, what: str) -> np.ndarray:
    values = np.einsum("ti,ij,tj->t", states.conj(), op, states)
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > IMAG_ERROR_TOL:
        raise NumericalError(
            f"{what} has imaginary residue {worst:.3e}; operator is not hermitian enough"
        )
    return values.real


def expectation(op: Union[OperatorMatrix, np.ndarray],
                state: Union[StateVector, np.ndarray]) -> float:
    """<psi|op|psi> for a hermitian operator; the tiny imaginary residue is
    checked against 1e-10 and then discarded."""
    amps = state.amplitudes if isinstance(state, StateVector) else np.asarray(state, dtype=complex)
    arr = _as_array(op)
    if amps.shape != (arr.shape[0],):
        raise ConfigError("state and operator dimensions do not match")
    return float(_real_expectation(arr, amps[None, :], "expectation")[0])


def expectation_series(op: Union[OperatorMatrix, np.ndarray],
                       states: Union[Trajectory, np.ndarray]) -> np.ndarray:
    return _real_expectation(_as_array(op), _states_matrix(states), "expectation")


def _fluct(op: np.ndarray, states: np.ndarray) -> np.ndarray:
    mean = _real_expectation(op, states, "expectation")
    second = _real_expectation(op @ op, states, "second moment")
    radicand = second - mean * mean
    worst = float(np.min(radicand)) if radicand.size else 0.0
    if worst < RADICAND_ERROR_TOL:
        raise NumericalError(
            f"fluctuation radicand {worst:.3e} below tolerance; inconsistent moments"
        )
    return np.sqrt(np.clip(radicand, 0.0, None))


def fluctuation(op: Union[OperatorMatrix, np.ndarray],
                state: Union[StateVector, np.ndarray]) -> float:
    """sqrt(<op^2> - <op>^2); roundoff radicands within -1e-12 clamp to 0."""
    amps = state.amplitudes if isinstance(state, StateVector) else np.asarray(state, dtype=complex)
    arr = _as_array(op)
    if amps.shape != (arr.shape[0],):
        raise ConfigError("state and operator dimensions do not match")
    return float(_fluct(arr, amps[None, :])[0])


def fluctuation_series(op: Union[OperatorMatrix, np.ndarray],
                       states: Union[Trajectory, np.ndarray]) -> np.ndarray:
    return _fluct(_as_array(op), _states_matrix(states))


# ---------------------------------------------------------------------------
# fermion embedding


def embedded_fermion_states(states: Union[Trajectory, np.ndarray]) -> np.ndarray:
    """Map three-amplitude pair states into the 16-dim Fock space (isometric);
    16-dim inputs pass through unchanged."""
    arr = _states_matrix(states)
    if arr.shape[1] == 16:
        return arr
    if arr.shape[1] != 3:
        raise ConfigError(f"expected 3- or 16-dimensional states, got {arr.shape[1]}")
    return arr @ fermion_pair_embedding().T


# ---------------------------------------------------------------------------
# squeezing / entanglement parameters


def xi_boson(trajectory: Union[Trajectory, np.ndarray],
             basis: BosonDimerBasis) -> np.ndarray:
    """Variance form (delta W)^2 / N along a boson trajectory."""
    dw = fluctuation_series(boson_number_diff(basis), trajectory)
    return dw * dw / float(basis.total_particles)


def xi_fermion(trajectory: Union[Trajectory, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Both squeezing forms for the fermion pair, W = well-level imbalance.

    Returns (variance_form, second_moment_form) = ((delta W)^2 / N, <W^2>/N)
    with N = 2. The two differ already at tau=0 (0 versus 2) for the
    both-in-one-well start; both are emitted so the discrepancy is visible in
    datasets rather than hidden by a choice.
    """
    states = embedded_fermion_states(trajectory)
    w = well_number_diff(fermion_sector()).entries
    mean = _real_expectation(w, states, "expectation")
    second = _real_expectation(w @ w, states, "second moment")
    variance_form = (second - mean * mean) / 2.0
    second_moment_form = second / 2.0
    return variance_form, second_moment_form


def xi_fermion_closed_form(ubar: float, tau: Union[float, Sequence[float]]) -> np.ndarray:
    """Literal evaluation of the pair's printed squeezing closed form.

    Matches the trajectory-derived second-moment form only at ubar = 0; for
    ubar != 0 the beat term makes it disagree with both emitted forms (and it
    can leave [0, 2]). It is provided verbatim so that the disagreement is a
    measurable dataset fact.
    """
    tau_arr = np.atleast_1d(np.asarray(tau, dtype=float))
    omega = math.sqrt(4.0 + (ubar / 4.0) ** 2)
    om_minus = omega - ubar / 4.0
    om_plus = omega + ubar / 4.0
    beat = om_minus * np.cos(om_plus * tau_arr) - om_plus * np.cos(om_minus * tau_arr)
    values = 2.0 * (1.0 - (2.0 / omega ** 2) * np.sin(omega * tau_arr) ** 2
                    - beat ** 2 / (4.0 * omega ** 2))
    return values


def trapping_points(tau_grid: Sequence[float], avg_w: Sequence[float],
                    eps: float = 1e-3) -> list[tuple[float, float]]:
    """Intervals of the sampled grid where |<W>| < eps.

    Threshold detection only: consecutive qualifying grid points merge into
    [tau_start, tau_end] intervals (single points give zero-width intervals).
    """
    if not eps > 0:
        raise ConfigError(f"eps must be positive, got {eps}")
    tau = np.asarray(tau_grid, dtype=float)
    w = np.asarray(avg_w, dtype=float)
    if tau.shape != w.shape:
        raise ConfigError("tau grid and channel lengths differ")
    inside = np.abs(w) < eps
    intervals: list[tuple[float, float]] = []
    start = None
    for i, flag in enumerate(inside):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            intervals.append((float(tau[start]), float(tau[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(tau[start]), float(tau[-1])))
    return intervals
