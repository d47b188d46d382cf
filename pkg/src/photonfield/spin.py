"""Spin-1 matrices, helicity eigenvectors, and plane-wave momentum states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polarization import Direction, make_triad

# Below this value of the normalization sqrt(1 - kx ky - ky kz - kz kx) the
# closed-form eigenvector expression is numerically unusable (it is exactly
# singular at k = +/-(1,1,1)/sqrt(3)) and we fall back to the circular
# polarization vectors, which are helicity eigenvectors for every k.
SINGULAR_CUTOFF = 1e-6


@dataclass(frozen=True, eq=False)
class SpinMatrices:
    """Cartesian spin-1 operators, (S_j)_{kl} = -i hbar epsilon_{jkl}."""

    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def dotted(self, k: np.ndarray) -> np.ndarray:
        """Spin projected on a direction: S . k."""
        return k[0] * self.sx + k[1] * self.sy + k[2] * self.sz


@dataclass(frozen=True, eq=False)
class HelicityPair:
    """Unit eigenvectors of S.k with eigenvalues +hbar and -hbar."""

    chi_plus: np.ndarray
    chi_minus: np.ndarray

    def chi(self, s: int) -> np.ndarray:
        if s == 1:
            return self.chi_plus
        if s == -1:
            return self.chi_minus
        raise ValueError(f"helicity must be +1 or -1, got {s}")


def spin_matrices(hbar: float = 1.0) -> SpinMatrices:
    if hbar <= 0:
        raise ValueError("hbar must be positive")
    levi = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        levi[i, j, k] = 1.0
        levi[i, k, j] = -1.0
    return SpinMatrices(
        sx=-1j * hbar * levi[0],
        sy=-1j * hbar * levi[1],
        sz=-1j * hbar * levi[2],
    )


def _formula_chi(k: np.ndarray, sign: int, denom: float) -> np.ndarray:
    kx, ky, kz = k
    total = kx + ky + kz
    v = np.array(
        [
            1.0 - kx * total + sign * 1j * (ky - kz),
            1.0 - ky * total + sign * 1j * (kz - kx),
            1.0 - kz * total + sign * 1j * (kx - ky),
        ]
    )
    return v / (2.0 * denom)


def _fallback_chi(k: Direction, sign: int) -> np.ndarray:
    # eps_s is an eigenvector of S.k with eigenvalue s; fix the global phase
    # by making the first component of largest modulus real and positive.
    v = make_triad(k).eps(sign)
    mods = np.abs(v)
    lead = int(np.argmax(mods > np.max(mods) - 1e-15))
    return v * np.conj(v[lead]) / mods[lead]


def helicity_states(k: Direction) -> HelicityPair:
    """Helicity eigenvectors for propagation direction k.

    Away from the singular directions the closed-form expression is
    returned verbatim (it is exactly unit-norm); on and near the singular
    set the phase-fixed circular polarization vectors are used instead.
    """
    kv = k.k
    radicand = 1.0 - kv[0] * kv[1] - kv[1] * kv[2] - kv[2] * kv[0]
    denom = np.sqrt(radicand) if radicand > 0.0 else 0.0
    if denom > SINGULAR_CUTOFF:
        return HelicityPair(
            chi_plus=_formula_chi(kv, +1, denom),
            chi_minus=_formula_chi(kv, -1, denom),
        )
    return HelicityPair(
        chi_plus=_fallback_chi(k, +1),
        chi_minus=_fallback_chi(k, -1),
    )


def momentum_wavefunction(p: np.ndarray, r: np.ndarray, hbar: float = 1.0) -> complex:
    """Plane-wave momentum eigenfunction (2 pi hbar)^(-3/2) exp(i p.r / hbar)."""
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    return (2.0 * np.pi * hbar) ** -1.5 * np.exp(1j * np.dot(p, r) / hbar)
