"""Circular polarization algebra for a single propagation direction.

For a unit vector k we build the right-handed orthonormal frame
(e_hat, b_hat, k) and the circular polarization complex vectors

    eps_plus  = (e_hat + i b_hat) / sqrt(2)
    eps_minus = (i e_hat + b_hat) / sqrt(2)

together with numerical checks of the orthogonality, cross-product and
completeness relations they satisfy.  Everything here is O(1) classical
vector algebra; all residuals are expected at the 1e-12 level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ATOL = 1e-12

# Reference axis used to fix the transverse gauge.  The direction of e_hat
# in the plane orthogonal to k is a free choice; we project a fixed axis
# onto that plane, switching axes when k is too close to the primary one.
_PRIMARY_AXIS = np.array([1.0, 0.0, 0.0])
_SECONDARY_AXIS = np.array([0.0, 1.0, 0.0])
_AXIS_SWITCH = 0.9


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Direction:
    """Unit propagation vector."""

    k: np.ndarray

    def __post_init__(self) -> None:
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3,):
            raise ValueError(f"direction must be a 3-vector, got shape {k.shape}")
        if abs(np.linalg.norm(k) - 1.0) > ATOL:
            raise ValueError(f"direction must be unit length, |k| = {np.linalg.norm(k)!r}")
        object.__setattr__(self, "k", _readonly(k))


@dataclass(frozen=True, eq=False)
class PolarizationTriad:
    """Right-handed frame (e_hat, b_hat, k) and the circular vectors eps_+/-."""

    k: Direction
    e_hat: np.ndarray
    b_hat: np.ndarray
    eps_plus: np.ndarray = field(init=False)
    eps_minus: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        e = _readonly(np.asarray(self.e_hat, dtype=float))
        b = _readonly(np.asarray(self.b_hat, dtype=float))
        object.__setattr__(self, "e_hat", e)
        object.__setattr__(self, "b_hat", b)
        object.__setattr__(self, "eps_plus", _readonly((e + 1j * b) / np.sqrt(2.0)))
        object.__setattr__(self, "eps_minus", _readonly((1j * e + b) / np.sqrt(2.0)))

    def eps(self, s: int) -> np.ndarray:
        """Circular polarization vector for helicity s = +1 or -1."""
        if s == 1:
            return self.eps_plus
        if s == -1:
            return self.eps_minus
        raise ValueError(f"helicity must be +1 or -1, got {s}")


def make_triad(k: Direction, reference: np.ndarray | None = None) -> PolarizationTriad:
    """Deterministic triad for direction k.

    e_hat is the normalized projection of a reference axis onto the plane
    orthogonal to k.  By default the x axis is used, with a switch to the
    y axis when |k . x| > 0.9, which keeps the construction well away from
    the degenerate (reference parallel to k) case.  A caller-supplied
    reference axis selects a different transverse gauge; physical
    observables must not depend on this choice.
    """
    kv = k.k
    if reference is None:
        a = _PRIMARY_AXIS if abs(np.dot(kv, _PRIMARY_AXIS)) <= _AXIS_SWITCH else _SECONDARY_AXIS
    else:
        a = np.asarray(reference, dtype=float)
        a = a / np.linalg.norm(a)
    e = a - np.dot(a, kv) * kv
    norm = np.linalg.norm(e)
    if norm < 1e-6:
        raise ValueError("reference axis is (nearly) parallel to k; pick another gauge reference")
    e = e / norm
    b = np.cross(kv, e)
    return PolarizationTriad(k=k, e_hat=e, b_hat=b)


def phase_shift(triad: PolarizationTriad, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Rotate the initial position of the field frame: eps_s -> exp(-i theta) eps_s."""
    w = np.exp(-1j * theta)
    return w * triad.eps_plus, w * triad.eps_minus


def check_relations(triad: PolarizationTriad) -> dict[str, float]:
    """Max residual of every algebraic relation the circular vectors satisfy.

    Returns a map from relation name to the worst absolute deviation; the
    caller decides what to assert.  The relations, for s, s' in {+1, -1}:

        conj(eps_s) . k        = 0
        conj(eps_s) . eps_s'   = delta_{s,s'}
        conj(eps_s) x eps_s'   = s i k delta_{s,s'}
        k x eps_s              = s conj(eps_{-s})
        eps_minus              = i conj(eps_plus)
        eps_s . eps_s'         = i delta_{s,-s'}
        eps_s x eps_s'         = s k delta_{s,-s'}
        sum_s conj(eps_s)_i (eps_s)_j = delta_ij - k_i k_j
    """
    kv = triad.k.k
    eps = {1: triad.eps_plus, -1: triad.eps_minus}

    def vmax(v) -> float:
        return float(np.max(np.abs(v)))

    res: dict[str, float] = {}
    res["transversality"] = max(vmax(np.dot(np.conj(eps[s]), kv)) for s in (1, -1))
    res["orthonormality"] = max(
        vmax(np.dot(np.conj(eps[s]), eps[t]) - (1.0 if s == t else 0.0))
        for s in (1, -1)
        for t in (1, -1)
    )
    res["conjugate_cross"] = max(
        vmax(np.cross(np.conj(eps[s]), eps[t]) - (s * 1j * kv if s == t else 0.0))
        for s in (1, -1)
        for t in (1, -1)
    )
    res["propagation_cross"] = max(
        vmax(np.cross(kv, eps[s]) - s * np.conj(eps[-s])) for s in (1, -1)
    )
    res["minus_from_plus"] = vmax(eps[-1] - 1j * np.conj(eps[1]))
    res["plain_dot"] = max(
        vmax(np.dot(eps[s], eps[t]) - (1j if s == -t else 0.0))
        for s in (1, -1)
        for t in (1, -1)
    )
    res["plain_cross"] = max(
        vmax(np.cross(eps[s], eps[t]) - (s * kv if s == -t else 0.0))
        for s in (1, -1)
        for t in (1, -1)
    )
    target = np.eye(3) - np.outer(kv, kv)
    res["completeness"] = vmax(completeness_matrix(triad) - target)
    return res


def completeness_matrix(triad: PolarizationTriad) -> np.ndarray:
    """The helicity sum  sum_s conj(eps_s)_i (eps_s)_j,  a real symmetric 3x3.

    Equals the transverse projector delta_ij - k_i k_j.
    """
    m = sum(
        np.outer(np.conj(triad.eps(s)), triad.eps(s)) for s in (1, -1)
    )
    return np.real(m)
