"""Two-site Hamiltonians in reduced units (energies in hbar*J, time tau = J*t).

The boson dimer Hamiltonian is the real symmetric tridiagonal matrix over the
fixed-N basis: hopping -sqrt((l+1)(N-l)) between neighbouring occupations and
interaction diagonal (ubar/2)(l^2 + (N-l)^2 - N).

The fermion pair Hamiltonian acts on the three dynamically coupled states of
two opposite-spin fermions: (sym, |ud,0>, |0,ud>) where
sym = (|u,d> + |d,u>)/sqrt(2). Two interaction placements are selectable:

* ``single-occupancy`` (default): diag(ubar/2, 0, 0) — the interaction energy
  sits on the one-fermion-per-well amplitude. This variant is the one whose
  dynamics the bundled closed-form solution reproduces exactly.
* ``uniform-shift``: diag(ubar/2, ubar/2, ubar/2) — the same energy on every
  amplitude, so the interaction degenerates to a global phase.

Both share the off-diagonal -sqrt(2) coupling between sym and each
doubly-occupied state, and they differ exactly by (ubar/2)*diag(0, 1, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .fock import BosonDimerBasis
from .operators import OperatorMatrix

FERMION_VARIANTS = ("single-occupancy", "uniform-shift")
DEFAULT_FERMION_VARIANT = "single-occupancy"

# Fock-space bitmasks of the dynamical basis (mode order l_up,l_down,r_up,r_down):
# sym spreads over |u,d> = mask 9 and |d,u> = mask 6 with + signs.
_MASK_UP_DOWN = 9
_MASK_DOWN_UP = 6
_MASK_BOTH_LEFT = 3
_MASK_BOTH_RIGHT = 12


@dataclass(frozen=True)
class FermionPairBasis:
    """The three-state dynamical basis (sym, |ud,0>, |0,ud>)."""

    labels: tuple[str, ...] = ("sym", "ud,0", "0,ud")

    @property
    def dimension(self) -> int:
        return 3


def boson_dimer_hamiltonian(basis: BosonDimerBasis, ubar: float) -> OperatorMatrix:
    if not math.isfinite(ubar):
        raise ConfigError(f"ubar must be finite, got {ubar}")
    n = basis.total_particles
    dim = basis.dimension
    h = np.zeros((dim, dim), dtype=complex)
    for l in range(dim):
        h[l, l] = 0.5 * ubar * (l * l + (n - l) * (n - l) - n)
        if l + 1 < dim:
            k = -math.sqrt((l + 1) * (n - l))
            h[l, l + 1] = k
            h[l + 1, l] = k
    return OperatorMatrix(h, label=f"boson_dimer[N={n},ubar={ubar:g}]", hermitian=True)


def fermion_pair_hamiltonian(ubar: float,
                             variant: str = DEFAULT_FERMION_VARIANT) -> OperatorMatrix:
    if not math.isfinite(ubar):
        raise ConfigError(f"ubar must be finite, got {ubar}")
    if variant not in FERMION_VARIANTS:
        raise ConfigError(
            f"unknown fermion variant {variant!r}; expected one of {FERMION_VARIANTS}"
        )
    h = np.zeros((3, 3), dtype=complex)
    s2 = math.sqrt(2.0)
    h[0, 1] = h[1, 0] = -s2
    h[0, 2] = h[2, 0] = -s2
    h[0, 0] = 0.5 * ubar
    if variant == "uniform-shift":
        h[1, 1] = 0.5 * ubar
        h[2, 2] = 0.5 * ubar
    return OperatorMatrix(h, label=f"fermion_pair[{variant},ubar={ubar:g}]",
                          hermitian=True)


def fermion_pair_embedding() -> np.ndarray:
    """16x3 isometry taking (sym, |ud,0>, |0,ud>) amplitudes into Fock space.

    Observables (and especially their squares) mix states outside the
    three-state dynamical basis, so every observable is evaluated on the
    embedded full-space vector.
    """
    e = np.zeros((16, 3), dtype=complex)
    inv_s2 = 1.0 / math.sqrt(2.0)
    e[_MASK_UP_DOWN, 0] = inv_s2
    e[_MASK_DOWN_UP, 0] = inv_s2
    e[_MASK_BOTH_LEFT, 1] = 1.0
    e[_MASK_BOTH_RIGHT, 2] = 1.0
    e.setflags(write=False)
    return e


def barrier_height(lam: float, q: float) -> float:
    """Barrier height of the symmetric double well with minima at +-q."""
    if not (math.isfinite(lam) and math.isfinite(q)):
        raise ConfigError("barrier parameters must be finite")
    return 0.5 * lam * lam * q ** 4
