"""Multi-photon states and field expectation values.

Exact photon-number states have vanishing mean fields; superpositions of
different photon numbers develop a classical plane-wave expectation.  The
canonical instance shipped here is the Poissonian (coherent) coefficient
profile C_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!), whose mean field is a
circularly polarized wave of amplitude set by alpha.

Every closed-form expectation is backed by a matrix path (state vector
against the operator matrices); the two must agree to 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from .fock import BasisMismatchError, FockBasis, Mode, ModeKey, SparseOperator
from .fields import FieldKind, SpacetimePoint, field_mode_coefficients


@dataclass(frozen=True, eq=False)
class FockState:
    """Normalized coefficient vector on a FockBasis.

    norm_deficit records the probability mass lost to truncation before
    normalization (zero for states that fit the caps exactly).
    """

    basis: FockBasis
    coefficients: np.ndarray
    norm_deficit: float = 0.0

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients, dtype=complex)
        if c.shape != (self.basis.dim,):
            raise ValueError(f"coefficient vector must have length {self.basis.dim}")
        norm = np.linalg.norm(c)
        if norm == 0:
            raise ValueError("state vector must be nonzero")
        c = np.ascontiguousarray(c / norm)
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)


@dataclass(frozen=True)
class ModeProfile:
    """Single-mode occupation-number coefficients C_n for n = 0..cap."""

    mode: ModeKey
    amplitudes: tuple[complex, ...]
    norm_deficit: float = 0.0


@dataclass(frozen=True, eq=False)
class AmplitudeProfile:
    """Per-mode ladder expectation <a_m> extracted from a state."""

    amplitudes: np.ndarray  # complex, one entry per basis mode


def vacuum(basis: FockBasis) -> FockState:
    c = np.zeros(basis.dim, dtype=complex)
    c[0] = 1.0
    return FockState(basis=basis, coefficients=c)


def number_state(basis: FockBasis, occupancies: Sequence[int]) -> FockState:
    c = np.zeros(basis.dim, dtype=complex)
    c[basis.index(occupancies)] = 1.0
    return FockState(basis=basis, coefficients=c)


def coherent_profile(alpha: complex, mode: Mode | ModeKey, cap: int) -> ModeProfile:
    """Poissonian coefficient profile for one mode, truncated at cap quanta.

    The recorded norm_deficit is the Poisson tail beyond the cap.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    key = mode.key if isinstance(mode, Mode) else (int(mode[0]), tuple(int(v) for v in mode[1]))
    alpha = complex(alpha)
    weight = math.exp(-abs(alpha) ** 2 / 2.0)
    amps = tuple(
        weight * alpha**n / math.sqrt(math.factorial(n)) for n in range(cap + 1)
    )
    kept = sum(abs(a) ** 2 for a in amps)
    return ModeProfile(mode=key, amplitudes=amps, norm_deficit=max(0.0, 1.0 - kept))


def superposition(
    basis: FockBasis,
    coeff_map: Mapping[tuple[int, ...], complex] | ModeProfile,
) -> FockState:
    """State from occupancy-tuple coefficients or a single-mode profile."""
    if isinstance(coeff_map, ModeProfile):
        if len(coeff_map.amplitudes) - 1 > basis.n_max:
            raise ValueError(
                f"profile cap {len(coeff_map.amplitudes) - 1} exceeds n_max = {basis.n_max}"
            )
        j = basis.mode_index(coeff_map.mode)
        expanded: dict[tuple[int, ...], complex] = {}
        for n, amp in enumerate(coeff_map.amplitudes):
            occ = [0] * basis.n_modes
            occ[j] = n
            expanded[tuple(occ)] = amp
        coeff_map = expanded
    c = np.zeros(basis.dim, dtype=complex)
    for occ, amp in coeff_map.items():
        c[basis.index(occ)] = amp
    deficit = max(0.0, 1.0 - float(np.linalg.norm(c) ** 2))
    return FockState(basis=basis, coefficients=c, norm_deficit=deficit)


def expectation(op: SparseOperator, state: FockState) -> complex:
    """<psi, Op psi>; real up to roundoff when Op is flagged hermitian."""
    if op.basis is not state.basis:
        raise BasisMismatchError("operator and state live on different bases")
    c = state.coefficients
    return complex(np.vdot(c, op.matrix @ c))


def amplitude_profile(state: FockState) -> AmplitudeProfile:
    """<a_m> for every mode, computed from coefficient ladder sums.

    <a_m> = sum_occ conj(C[occ]) C[occ + 1_m] sqrt(occ_m + 1); this is the
    coefficient-weighted form and agrees with the matrix expectation.
    """
    basis = state.basis
    c = state.coefficients
    occ = basis.occupancy_table()
    amps = np.zeros(basis.n_modes, dtype=complex)
    for j in range(basis.n_modes):
        stride = basis.strides[j]
        mask = occ[:, j] < basis.n_max
        idx = np.nonzero(mask)[0]
        amps[j] = np.sum(
            np.conj(c[idx]) * c[idx + stride] * np.sqrt(occ[idx, j] + 1.0)
        )
    return AmplitudeProfile(amplitudes=amps)


def field_expectation_closed_form(
    state: FockState, kind: FieldKind, x: SpacetimePoint
) -> np.ndarray:
    """Mean field from the per-mode amplitude sums (no operator matrices).

    <F(r,t)> = sum_m ( coef_m(r,t) <a_m> + c.c. ), with the same mode
    coefficients that define the field operators.
    """
    coeffs = field_mode_coefficients(state.basis, kind, x)
    amps = amplitude_profile(state).amplitudes
    return 2.0 * np.real(coeffs.T @ amps)


def expectation_grid(
    state: FockState, kind: FieldKind, points: Iterable[SpacetimePoint]
) -> list[tuple[float, float, float, float, float, float, float]]:
    """Rows (t, x, y, z, Fx, Fy, Fz) of the closed-form mean field."""
    rows = []
    for pt in points:
        f = field_expectation_closed_form(state, kind, pt)
        rows.append((pt.t, pt.r[0], pt.r[1], pt.r[2], f[0], f[1], f[2]))
    return rows


GRID_HEADER = "t,x,y,z,Fx,Fy,Fz"


def write_grid_csv(rows, stream: IO[str]) -> None:
    """CSV with shortest round-trip float formatting (bit-stable output)."""
    stream.write(GRID_HEADER + "\n")
    for row in rows:
        stream.write(",".join(repr(float(v)) for v in row) + "\n")


def vacuum_field_square(basis: FockBasis) -> float:
    """Closed lattice sum for <E^2> in the vacuum over the configured modes.

    Each (helicity, momentum) mode contributes Delta3p omega/(2 pi hbar)^2;
    growing the momentum cutoff grows the sum without bound, which is the
    lattice rendering of the divergent point fluctuation.
    """
    hbar = basis.config.hbar
    return sum(
        basis.delta3p * m.omega / (2.0 * np.pi * hbar) ** 2 for m in basis.modes
    )


def vacuum_field_square_scan(
    length: float, hbar: float, c: float, cutoffs: Sequence[int]
) -> list[tuple[int, float]]:
    """(cutoff, vacuum <E^2>) for momentum balls |n| <= cutoff, both helicities.

    Pure lattice sum; no Fock basis is built, so large cutoffs stay cheap.
    """
    dp3 = (2.0 * np.pi * hbar / length) ** 3
    rows = []
    for cutoff in cutoffs:
        if cutoff < 1:
            raise ValueError("cutoffs must be >= 1")
        total = 0.0
        rng = range(-cutoff, cutoff + 1)
        for nx in rng:
            for ny in rng:
                for nz in rng:
                    if nx == ny == nz == 0:
                        continue
                    norm = math.sqrt(nx * nx + ny * ny + nz * nz)
                    if norm > cutoff:
                        continue
                    omega = c * (2.0 * np.pi / length) * norm
                    total += 2.0 * dp3 * omega / (2.0 * np.pi * hbar) ** 2
        rows.append((cutoff, total))
    return rows
