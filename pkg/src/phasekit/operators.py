"""Phase-difference, number-difference, and ladder operators.

Boson operators live on the fixed-N dimer basis (dimension N+1). The shift
operator that underlies the non-unitary cosine/sine pair moves one particle
from the left well to the right well with unit coefficient, so its matrix is
exactly the sub-shift with ones; the vacuum coupling adds the corner term that
links |N,0> with |0,N> and restores unitarity.

Fermion operators are built as dense 16x16 matrices on the full four-mode
Fock space from bitmask ladder matrices (sign = parity of occupied lower
modes) and projected to sectors afterwards, so composite signs are automatic.
The vacuum coupling for a mode pair matches each one-occupied configuration
with its partner: identical rest occupations when the pair's spins agree,
well-mirrored rest occupations (the two rest modes swap) when they differ.
That matching is what makes the combined operator an isometry on the
half-filled subspace. The literal unmatched double sum is kept available as a
named variant purely so its unitarity failure can be demonstrated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ConfigError, NumericalError
from .fock import (
    FULL_DIM,
    N_MODES,
    BosonDimerBasis,
    FermionSector,
    _MODE_TWICE_SZ,
    _MODE_WELL,
    mode_index,
    particle_count,
)

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex square matrix with a label and a hermiticity flag."""

    entries: np.ndarray
    label: str = ""
    hermitian: bool = False

    def __post_init__(self) -> None:
        arr = np.array(self.entries, dtype=complex, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ConfigError(f"operator {self.label!r} is not square: {arr.shape}")
        if self.hermitian:
            dev = float(np.max(np.abs(arr - arr.conj().T)))
            if dev > HERMITICITY_TOL:
                raise NumericalError(
                    f"operator {self.label!r} flagged hermitian but deviates by {dev:.3e}"
                )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.entries.conj().T, label=f"{self.label}^dag",
                              hermitian=self.hermitian)


def _as_array(op: Union[OperatorMatrix, np.ndarray]) -> np.ndarray:
    return op.entries if isinstance(op, OperatorMatrix) else np.asarray(op, dtype=complex)


# ---------------------------------------------------------------------------
# boson operators


def _boson_shift(basis: BosonDimerBasis) -> np.ndarray:
    """Matrix moving one particle left -> right: e_l -> e_{l-1}, unit entries."""
    dim = basis.dimension
    t = np.zeros((dim, dim), dtype=complex)
    for l in range(1, dim):
        t[l - 1, l] = 1.0
    return t


def boson_cn_phase(basis: BosonDimerBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Non-unitary cosine/sine pair built from the left->right shift."""
    t = _boson_shift(basis)
    n = basis.total_particles
    cos = 0.5 * (t + t.conj().T)
    sin = -0.5j * (t - t.conj().T)
    return (OperatorMatrix(cos, label=f"cos_cn[N={n}]", hermitian=True),
            OperatorMatrix(sin, label=f"sin_cn[N={n}]", hermitian=True))


def _boson_corner(basis: BosonDimerBasis) -> np.ndarray:
    """|N,0><0,N|: index N is all-left, index 0 is all-right."""
    dim = basis.dimension
    k = np.zeros((dim, dim), dtype=complex)
    k[dim - 1, 0] = 1.0
    return k


def boson_vacuum_phase(basis: BosonDimerBasis) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Corner cosine/sine linking the two all-in-one-well states."""
    k = _boson_corner(basis)
    n = basis.total_particles
    cos0 = 0.5 * (k + k.conj().T)
    sin0 = -0.5j * (k - k.conj().T)
    return (OperatorMatrix(cos0, label=f"cos_vac[N={n}]", hermitian=True),
            OperatorMatrix(sin0, label=f"sin_vac[N={n}]", hermitian=True))


def boson_unitary_phase(basis: BosonDimerBasis) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """Unitary cosine/sine and the combined operator beta = cos + i sin.

    beta is the cyclic shift of the fixed-N ladder (the left->right shift plus
    the corner term), hence exactly unitary.
    """
    n = basis.total_particles
    cos_cn, sin_cn = boson_cn_phase(basis)
    cos0, sin0 = boson_vacuum_phase(basis)
    cos_u = cos_cn.entries + cos0.entries
    sin_u = sin_cn.entries + sin0.entries
    beta = cos_u + 1j * sin_u
    return (OperatorMatrix(cos_u, label=f"cos_u[N={n}]", hermitian=True),
            OperatorMatrix(sin_u, label=f"sin_u[N={n}]", hermitian=True),
            OperatorMatrix(beta, label=f"beta[N={n}]", hermitian=False))


def boson_number_diff(basis: BosonDimerBasis) -> OperatorMatrix:
    """Population imbalance n_left - n_right = diag(2l - N)."""
    n = basis.total_particles
    diag = np.array([2 * l - n for l in range(basis.dimension)], dtype=float)
    return OperatorMatrix(np.diag(diag).astype(complex),
                          label=f"number_diff[N={n}]", hermitian=True)


# ---------------------------------------------------------------------------
# fermion operators


def _require_full_space(space: FermionSector) -> None:
    if space.dimension != FULL_DIM:
        raise ConfigError(
            "fermion operators are built on the full 16-dimensional space; "
            "project to a sector afterwards"
        )


def fermion_ladder(space: FermionSector, mode: Union[int, str]) -> OperatorMatrix:
    """Annihilation matrix of one mode with the canonical-ordering sign.

    Entry convention: acting on a mask with the mode occupied clears the bit
    and multiplies by (-1)^(number of occupied modes preceding it).
    """
    _require_full_space(space)
    m = mode_index(mode)
    a = np.zeros((FULL_DIM, FULL_DIM), dtype=complex)
    below = (1 << m) - 1
    for s in range(FULL_DIM):
        if (s >> m) & 1:
            sign = -1.0 if particle_count(s & below) % 2 else 1.0
            a[s ^ (1 << m), s] = sign
    return OperatorMatrix(a, label=f"annihilate[{space.mode_order[m]}]")


def fermion_number_op(space: FermionSector, mode: Union[int, str]) -> OperatorMatrix:
    _require_full_space(space)
    m = mode_index(mode)
    diag = np.array([(s >> m) & 1 for s in range(FULL_DIM)], dtype=float)
    return OperatorMatrix(np.diag(diag).astype(complex),
                          label=f"number[{space.mode_order[m]}]", hermitian=True)


def _inv_sqrt_np1(mode: int) -> np.ndarray:
    """Diagonal of (number + 1)^(-1/2) over the 16 masks."""
    return np.array([1.0 / np.sqrt(((s >> mode) & 1) + 1.0) for s in range(FULL_DIM)])


def _fermion_pair_shift(space: FermionSector, m: int, mp: int) -> np.ndarray:
    """(N_m+1)^(-1/2) a_m a_mp^dag (N_mp+1)^(-1/2): moves one fermion m -> mp.

    On fermions every surviving scale factor is exactly 1, so the result
    equals a_m a_mp^dag entrywise (entries are exactly 0 or +-1).
    """
    a_m = fermion_ladder(space, m).entries
    a_mp = fermion_ladder(space, mp).entries
    d_m = _inv_sqrt_np1(m)
    d_mp = _inv_sqrt_np1(mp)
    return (d_m[:, None] * (a_m @ a_mp.conj().T)) * d_mp[None, :]


def _check_pair(m: Union[int, str], mp: Union[int, str]) -> tuple[int, int]:
    i, j = mode_index(m), mode_index(mp)
    if i == j:
        raise ConfigError("mode pair must name two distinct modes")
    return i, j


def fermion_cn_phase(space: FermionSector, m: Union[int, str],
                     mp: Union[int, str]) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Non-unitary cosine/sine for a mode pair (no vacuum coupling)."""
    i, j = _check_pair(m, mp)
    _require_full_space(space)
    u = _fermion_pair_shift(space, i, j)
    names = f"{space.mode_order[i]},{space.mode_order[j]}"
    cos = 0.5 * (u + u.conj().T)
    sin = -0.5j * (u - u.conj().T)
    return (OperatorMatrix(cos, label=f"cos_cn[{names}]", hermitian=True),
            OperatorMatrix(sin, label=f"sin_cn[{names}]", hermitian=True))


def _rest_modes(m: int, mp: int) -> tuple[int, int]:
    return tuple(k for k in range(N_MODES) if k not in (m, mp))  # type: ignore[return-value]


def fermion_vacuum_coupling(space: FermionSector, m: Union[int, str],
                            mp: Union[int, str],
                            pairing: str = "matched") -> np.ndarray:
    """Raw vacuum-coupling matrix V = sum of |m occupied><mp occupied| terms.

    pairing="matched": each configuration with only m occupied couples to the
    single partner with only mp occupied whose rest is identical (same-spin
    pair) or well-mirrored (different-spin pair). This is a perfect matching,
    so cos/sin built from it complete the shift into an isometry on the
    half-filled subspace.

    pairing="double-sum": couples every such configuration to every partner
    whose rest holds the same particle count. Kept only to demonstrate the
    unitarity failure; never used by the scenario pipeline.
    """
    i, j = _check_pair(m, mp)
    _require_full_space(space)
    if pairing not in ("matched", "double-sum"):
        raise ConfigError(f"unknown vacuum pairing: {pairing!r}")
    r0, r1 = _rest_modes(i, j)
    same_spin = _MODE_TWICE_SZ[i] == _MODE_TWICE_SZ[j]
    v = np.zeros((FULL_DIM, FULL_DIM), dtype=complex)
    rest_configs = [(a, b) for a in (0, 1) for b in (0, 1)]
    for (a0, a1) in rest_configs:
        s10 = (a0 << r0) | (a1 << r1) | (1 << i)
        if pairing == "matched":
            b0, b1 = (a0, a1) if same_spin else (a1, a0)
            s01 = (b0 << r0) | (b1 << r1) | (1 << j)
            v[s10, s01] = 1.0
        else:
            for (b0, b1) in rest_configs:
                if a0 + a1 != b0 + b1:
                    continue
                s01 = (b0 << r0) | (b1 << r1) | (1 << j)
                v[s10, s01] = 1.0
    return v


def fermion_unitary_phase(space: FermionSector, m: Union[int, str],
                          mp: Union[int, str],
                          pairing: str = "matched") -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """Unitary-completed cosine/sine and betaF = cos + i sin for a mode pair."""
    i, j = _check_pair(m, mp)
    u = _fermion_pair_shift(space, i, j)
    v = fermion_vacuum_coupling(space, i, j, pairing=pairing)
    names = f"{space.mode_order[i]},{space.mode_order[j]}"
    cos = 0.5 * ((u + v) + (u + v).conj().T)
    sin = -0.5j * ((u + v) - (u + v).conj().T)
    beta = cos + 1j * sin
    return (OperatorMatrix(cos, label=f"cos_u[{names}]", hermitian=True),
            OperatorMatrix(sin, label=f"sin_u[{names}]", hermitian=True),
            OperatorMatrix(beta, label=f"betaF[{names}]", hermitian=False))


def fermion_number_diff(space: FermionSector, m: Union[int, str],
                        mp: Union[int, str]) -> OperatorMatrix:
    """Per-pair imbalance N_m - N_mp (diagonal)."""
    i, j = _check_pair(m, mp)
    n_m = fermion_number_op(space, i).entries
    n_mp = fermion_number_op(space, j).entries
    names = f"{space.mode_order[i]},{space.mode_order[j]}"
    return OperatorMatrix(n_m - n_mp, label=f"number_diff[{names}]", hermitian=True)


def well_number_diff(space: FermionSector) -> OperatorMatrix:
    """Well-level imbalance (N_l_up + N_l_down) - (N_r_up + N_r_down)."""
    _require_full_space(space)
    diag = np.zeros(FULL_DIM)
    for s in range(FULL_DIM):
        for mode in range(N_MODES):
            if (s >> mode) & 1:
                diag[s] += 1.0 if _MODE_WELL[mode] == 0 else -1.0
    return OperatorMatrix(np.diag(diag).astype(complex),
                          label="well_number_diff", hermitian=True)


def half_filled_masks(m: Union[int, str], mp: Union[int, str]) -> tuple[int, ...]:
    """Masks where exactly one of the two pair modes is occupied."""
    i, j = _check_pair(m, mp)
    return tuple(s for s in range(FULL_DIM)
                 if ((s >> i) & 1) + ((s >> j) & 1) == 1)


def half_filled_projector(space: FermionSector, m: Union[int, str],
                          mp: Union[int, str]) -> np.ndarray:
    _require_full_space(space)
    p = np.zeros((FULL_DIM, FULL_DIM), dtype=complex)
    for s in half_filled_masks(m, mp):
        p[s, s] = 1.0
    return p


def project_to_sector(op: Union[OperatorMatrix, np.ndarray],
                      sector: FermionSector) -> np.ndarray:
    """Restrict a full-space operator to a sector's rows and columns."""
    arr = _as_array(op)
    if arr.shape[0] != FULL_DIM:
        raise ConfigError("sector projection expects a full-space operator")
    idx = np.array(sector.states)
    return arr[np.ix_(idx, idx)]


# ---------------------------------------------------------------------------
# diagnostics


def commutator(a: Union[OperatorMatrix, np.ndarray],
               b: Union[OperatorMatrix, np.ndarray]) -> np.ndarray:
    x, y = _as_array(a), _as_array(b)
    if x.shape != y.shape:
        raise ConfigError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x @ y - y @ x


def anticommutator(a: Union[OperatorMatrix, np.ndarray],
                   b: Union[OperatorMatrix, np.ndarray]) -> np.ndarray:
    x, y = _as_array(a), _as_array(b)
    if x.shape != y.shape:
        raise ConfigError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x @ y + y @ x


def unitarity_deficiency(op: Union[OperatorMatrix, np.ndarray],
                         subspace: Optional[np.ndarray] = None) -> tuple[float, float]:
    """Max-abs-entry residuals (‖P(AA†-I)P‖, ‖P(A†A-I)P‖), P = projector.

    Without a subspace, P is the identity. Max-abs-entry norm keeps the
    numbers bit-reproducible at these dimensions.
    """
    a = _as_array(op)
    eye = np.eye(a.shape[0], dtype=complex)
    left = a @ a.conj().T - eye
    right = a.conj().T @ a - eye
    if subspace is not None:
        p = _as_array(subspace)
        left = p @ left @ p
        right = p @ right @ p
    return float(np.max(np.abs(left))), float(np.max(np.abs(right)))
