"""Electromagnetic field operators on the Fock basis and their identities.

The electric field is assembled mode by mode,

    E(r,t) = (1/(2 pi hbar)) sum_modes sqrt(Delta3p) sqrt(omega)
             ( i a eps exp(i(p.r - E t)/hbar) + h.c. ),

the magnetic field uses k x eps in place of eps, and the transverse
potential uses weight c/sqrt(omega) and no factor i.  The total energy,
momentum and spin are recovered as box integrals of the familiar quadratic
densities; the spatial integral is done analytically via the orthogonality
of box modes (no quadrature), which makes the reductions exact up to
floating point and truncation at the occupancy cap.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .fock import (
    ANTIHERMITIAN,
    HERMITIAN,
    FockBasis,
    Mode,
    SparseOperator,
    diagonal_operator,
)


class CompletenessError(ValueError):
    """A closed-form result needs both helicities for every lattice momentum."""


class FieldKind(enum.Enum):
    E = "E"
    B = "B"
    A = "A"


@dataclass(frozen=True, eq=False)
class SpacetimePoint:
    r: np.ndarray
    t: float = 0.0

    def __post_init__(self) -> None:
        r = np.asarray(self.r, dtype=float)
        if r.shape != (3,):
            raise ValueError(f"position must be a 3-vector, got shape {r.shape}")
        if not (np.all(np.isfinite(r)) and np.isfinite(self.t)):
            raise ValueError("spacetime point must be finite")
        r = np.ascontiguousarray(r)
        r.setflags(write=False)
        object.__setattr__(self, "r", r)


@dataclass(frozen=True, eq=False)
class ZeroPointConstants:
    """Finite lattice remnants of the half-quantum per mode."""

    E0: float
    P0: np.ndarray
    S0: np.ndarray


def zero_point(basis: FockBasis) -> ZeroPointConstants:
    hbar = basis.config.hbar
    e0 = 0.5 * sum(hbar * m.omega for m in basis.modes)
    p0 = 0.5 * sum(m.p for m in basis.modes)
    s0 = 0.5 * sum(m.s * hbar * m.k.k for m in basis.modes)
    return ZeroPointConstants(E0=float(e0), P0=np.asarray(p0), S0=np.asarray(s0))


# ---------------------------------------------------------------------------
# mode coefficients and linear operators


def _amplitudes(basis: FockBasis, kind: FieldKind, t: float) -> np.ndarray:
    """Per-mode coefficient 3-vectors at r = 0 (the a-side of each field).

    Row m is the coefficient of a_m; the conjugate multiplies a-dagger.
    The exp(i p.r / hbar) position factor is applied separately.
    """
    kind = FieldKind(kind)
    hbar, c = basis.config.hbar, basis.config.c
    scale = np.sqrt(basis.delta3p) / (2.0 * np.pi * hbar)
    amps = np.empty((basis.n_modes, 3), dtype=complex)
    for j, m in enumerate(basis.modes):
        phase = np.exp(-1j * m.omega * t)
        if kind is FieldKind.E:
            amps[j] = scale * 1j * np.sqrt(m.omega) * m.eps * phase
        elif kind is FieldKind.B:
            amps[j] = scale * 1j * np.sqrt(m.omega) * np.cross(m.k.k, m.eps) * phase
        else:
            amps[j] = scale * (c / np.sqrt(m.omega)) * m.eps * phase
    return amps


def field_mode_coefficients(
    basis: FockBasis,
    kind: FieldKind,
    x: SpacetimePoint,
    dt: int = 0,
    dr: tuple[int, int, int] = (0, 0, 0),
) -> np.ndarray:
    """Coefficient of a_m for each field component at one spacetime point.

    dt and dr request analytic derivatives: each time derivative multiplies
    mode m by (-i omega_m), each derivative along axis j by (i p_j / hbar).
    """
    hbar = basis.config.hbar
    coeffs = _amplitudes(basis, kind, x.t)
    for j, m in enumerate(basis.modes):
        factor = np.exp(1j * np.dot(m.p, x.r) / hbar)
        factor *= (-1j * m.omega) ** dt
        for axis, order in enumerate(dr):
            factor *= (1j * m.p[axis] / hbar) ** order
        coeffs[j] *= factor
    return coeffs


def _linear_sum(basis: FockBasis, coeffs: np.ndarray, sign: float) -> SparseOperator:
    """sum_m ( c_m a_m + sign * conj(c_m) a-dagger_m )."""
    acc = sp.csr_matrix((basis.dim, basis.dim), dtype=complex)
    for j in range(basis.n_modes):
        c = complex(coeffs[j])
        if c == 0:
            continue
        low = basis._lowering(j)
        acc = acc + c * low + sign * np.conj(c) * low.conj().T
    flag = HERMITIAN if sign > 0 else ANTIHERMITIAN
    return SparseOperator(acc, basis, flag)


def linear_functional(basis: FockBasis, coeffs) -> SparseOperator:
    """Hermitian observable sum_m ( f_m a_m + conj(f_m) a-dagger_m ).

    coeffs maps modes (Mode, (s, n) key, or integer position) to complex
    amplitudes; unnamed modes get coefficient zero.
    """
    vec = np.zeros(basis.n_modes, dtype=complex)
    for key, value in coeffs.items():
        j = key if isinstance(key, (int, np.integer)) else basis.mode_index(key)
        vec[int(j)] = value
    return _linear_sum(basis, vec, +1.0)


def field(
    basis: FockBasis, kind: FieldKind, x: SpacetimePoint
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """The three cartesian component operators of E, B or A at x."""
    coeffs = field_mode_coefficients(basis, kind, x)
    return tuple(_linear_sum(basis, coeffs[:, i], +1.0) for i in range(3))


def field_derivative(
    basis: FockBasis,
    kind: FieldKind,
    x: SpacetimePoint,
    dt: int = 0,
    dr: tuple[int, int, int] = (0, 0, 0),
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """Analytic per-mode derivative of a field; exact, no discretization."""
    coeffs = field_mode_coefficients(basis, kind, x, dt=dt, dr=dr)
    return tuple(_linear_sum(basis, coeffs[:, i], +1.0) for i in range(3))


def field_number_commutator(
    basis: FockBasis, kind: FieldKind, x: SpacetimePoint
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """Closed form of [field, N]: the field with its h.c. part sign-flipped.

    [a, N] = a and [a-dagger, N] = -a-dagger hold exactly even on the
    truncated space, so the matrix commutator equals this antihermitian
    operator everywhere, not just on a safe subspace.
    """
    coeffs = field_mode_coefficients(basis, kind, x)
    return tuple(_linear_sum(basis, coeffs[:, i], -1.0) for i in range(3))


# ---------------------------------------------------------------------------
# diagonal observables


def observable_H(basis: FockBasis) -> SparseOperator:
    hbar = basis.config.hbar
    occ = basis.occupancy_table()
    w = np.array([hbar * m.omega for m in basis.modes])
    return diagonal_operator(basis, occ @ w)


def observable_P(basis: FockBasis) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    occ = basis.occupancy_table()
    p = np.stack([m.p for m in basis.modes])
    return tuple(diagonal_operator(basis, occ @ p[:, i]) for i in range(3))


def observable_S(basis: FockBasis) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    hbar = basis.config.hbar
    occ = basis.occupancy_table()
    s = np.stack([m.s * hbar * m.k.k for m in basis.modes])
    return tuple(diagonal_operator(basis, occ @ s[:, i]) for i in range(3))


# ---------------------------------------------------------------------------
# quadratic observables via the analytic box integral


def _pair_products(basis: FockBasis, i: int, j: int):
    low_i, low_j = basis._lowering(i), basis._lowering(j)
    raise_i, raise_j = low_i.conj().T, low_j.conj().T
    return low_i @ low_j, low_i @ raise_j, raise_i @ low_j, raise_i @ raise_j


def _integrated_product(basis: FockBasis, u: np.ndarray, v: np.ndarray, cross: bool):
    """Box integral of (field_u . field_v) or (field_u x field_v).

    u, v are the per-mode a-side coefficient 3-vectors.  Integrating
    exp(i(p +/- p').r/hbar) over the box leaves L^3 times a Kronecker
    delta pairing equal or opposite lattice momenta; the time-dependent
    opposite-momentum terms are kept and cancel between the paired
    orderings of the physical densities.
    """
    combine = np.cross if cross else lambda a, b: np.dot(a, b)
    n_out = 3 if cross else 1
    acc = [sp.csr_matrix((basis.dim, basis.dim), dtype=complex) for _ in range(n_out)]
    vol = basis.config.length**3
    modes = basis.modes
    for i, j in itertools.product(range(basis.n_modes), repeat=2):
        ni, nj = modes[i].n, modes[j].n
        same = ni == nj
        opposite = nj == (-ni[0], -ni[1], -ni[2])
        if not (same or opposite):
            continue
        aa, a_ad, ad_a, ad_ad = _pair_products(basis, i, j)
        terms = []
        if same:
            terms.append((combine(u[i], np.conj(v[j])), a_ad))
            terms.append((combine(np.conj(u[i]), v[j]), ad_a))
        if opposite:
            terms.append((combine(u[i], v[j]), aa))
            terms.append((combine(np.conj(u[i]), np.conj(v[j])), ad_ad))
        for coef, op in terms:
            coef = np.atleast_1d(coef)
            for comp in range(n_out):
                if coef[comp] != 0:
                    acc[comp] = acc[comp] + (vol * coef[comp]) * op
    return acc


def quadratic_H_from_fields(basis: FockBasis, t: float = 0.0) -> SparseOperator:
    """(1/8 pi) Integral (E^2 + B^2) d^3r, reduced analytically.

    On the margin-1 safe subspace this equals H + E0 * identity; the time
    argument only enters terms that cancel, so the result is conserved.
    """
    u_e = _amplitudes(basis, FieldKind.E, t)
    u_b = _amplitudes(basis, FieldKind.B, t)
    ee = _integrated_product(basis, u_e, u_e, cross=False)[0]
    bb = _integrated_product(basis, u_b, u_b, cross=False)[0]
    return SparseOperator((ee + bb) / (8.0 * np.pi), basis, HERMITIAN)


def quadratic_P_from_fields(
    basis: FockBasis, t: float = 0.0
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """(1/8 pi c) Integral (E x B - B x E) d^3r; equals P + P0 on the safe subspace."""
    u_e = _amplitudes(basis, FieldKind.E, t)
    u_b = _amplitudes(basis, FieldKind.B, t)
    eb = _integrated_product(basis, u_e, u_b, cross=True)
    be = _integrated_product(basis, u_b, u_e, cross=True)
    scale = 1.0 / (8.0 * np.pi * basis.config.c)
    return tuple(SparseOperator(scale * (eb[i] - be[i]), basis, HERMITIAN) for i in range(3))


def quadratic_S_from_fields(
    basis: FockBasis, t: float = 0.0
) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
    """(1/8 pi c) Integral (E x A - A x E) d^3r; equals S + S0 on the safe subspace."""
    u_e = _amplitudes(basis, FieldKind.E, t)
    u_a = _amplitudes(basis, FieldKind.A, t)
    ea = _integrated_product(basis, u_e, u_a, cross=True)
    ae = _integrated_product(basis, u_a, u_e, cross=True)
    scale = 1.0 / (8.0 * np.pi * basis.config.c)
    return tuple(SparseOperator(scale * (ea[i] - ae[i]), basis, HERMITIAN) for i in range(3))


# ---------------------------------------------------------------------------
# derivative relations and Maxwell's equations


def _fd_time(basis, kind, x, h):
    plus = field(basis, kind, SpacetimePoint(r=x.r, t=x.t + h))
    minus = field(basis, kind, SpacetimePoint(r=x.r, t=x.t - h))
    return tuple((p - m) * (0.5 / h) for p, m in zip(plus, minus))


def _fd_partial(basis, kind, x, axis, h):
    shift = np.zeros(3)
    shift[axis] = h
    plus = field(basis, kind, SpacetimePoint(r=x.r + shift, t=x.t))
    minus = field(basis, kind, SpacetimePoint(r=x.r - shift, t=x.t))
    return tuple((p - m) * (0.5 / h) for p, m in zip(plus, minus))


def _grad_components(basis, kind, x, h, method):
    """partial_j F_i for all axes j: grad[j] = tuple of 3 component operators."""
    if method == "fd":
        return [_fd_partial(basis, kind, x, axis, h) for axis in range(3)]
    axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    return [field_derivative(basis, kind, x, dr=axes[axis]) for axis in range(3)]


def _curl(grad):
    return (
        grad[1][2] - grad[2][1],
        grad[2][0] - grad[0][2],
        grad[0][1] - grad[1][0],
    )


def _divergence(grad):
    return grad[0][0] + grad[1][1] + grad[2][2]


def _time_derivative(basis, kind, x, h, method):
    if method == "fd":
        return _fd_time(basis, kind, x, h)
    return field_derivative(basis, kind, x, dt=1)


def _max_over(ops) -> float:
    return max(op.max_abs() for op in ops)


def check_derivative_relations(
    basis: FockBasis, x: SpacetimePoint, h: float, method: str = "fd"
) -> dict[str, float]:
    """Residuals of E = -(1/c) dA/dt and B = curl A.

    method "fd" uses central differences with step h (O(h^2) accurate);
    method "analytic" uses exact per-mode differentiation and serves as
    the oracle for the finite-difference path.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    if method not in ("fd", "analytic"):
        raise ValueError(f"method must be 'fd' or 'analytic', got {method!r}")
    c = basis.config.c
    e_ops = field(basis, FieldKind.E, x)
    b_ops = field(basis, FieldKind.B, x)
    da_dt = _time_derivative(basis, FieldKind.A, x, h, method)
    curl_a = _curl(_grad_components(basis, FieldKind.A, x, h, method))
    return {
        "potential_time": _max_over(e + da * (1.0 / c) for e, da in zip(e_ops, da_dt)),
        "potential_curl": _max_over(b - ca for b, ca in zip(b_ops, curl_a)),
    }


def check_maxwell(
    basis: FockBasis, x: SpacetimePoint, h: float, method: str = "fd"
) -> dict[str, float]:
    """Residuals of the four source-free Maxwell equations at x."""
    if h <= 0:
        raise ValueError("step h must be positive")
    if method not in ("fd", "analytic"):
        raise ValueError(f"method must be 'fd' or 'analytic', got {method!r}")
    c = basis.config.c
    grad_e = _grad_components(basis, FieldKind.E, x, h, method)
    grad_b = _grad_components(basis, FieldKind.B, x, h, method)
    de_dt = _time_derivative(basis, FieldKind.E, x, h, method)
    db_dt = _time_derivative(basis, FieldKind.B, x, h, method)
    curl_e = _curl(grad_e)
    curl_b = _curl(grad_b)
    return {
        "faraday": _max_over(
            -1.0 * ce - db * (1.0 / c) for ce, db in zip(curl_e, db_dt)
        ),
        "ampere": _max_over(cb - de * (1.0 / c) for cb, de in zip(curl_b, de_dt)),
        "div_e": _divergence(grad_e).max_abs(),
        "div_b": _divergence(grad_b).max_abs(),
    }


# ---------------------------------------------------------------------------
# commutator closed forms


def _require_completeness(basis: FockBasis) -> None:
    if not basis.helicities_complete():
        raise CompletenessError(
            "field commutator closed forms need both helicities for every lattice "
            "momentum (the helicity completeness sum is used in the reduction)"
        )


def field_commutator_closed_form(
    basis: FockBasis,
    kind1: FieldKind,
    kind2: FieldKind,
    x1: SpacetimePoint,
    x2: SpacetimePoint,
) -> np.ndarray:
    """Scalar 3x3 commutator kernel [F1_i(x1), F2_j(x2)] for F in {E, B}.

    The helicity sum collapses to the transverse projector, leaving a pure
    lattice momentum sum.  For momentum sets closed under n -> -n the
    matrix-path commutator equals this kernel times the identity on the
    safe subspace.
    """
    kind1, kind2 = FieldKind(kind1), FieldKind(kind2)
    if kind1 is FieldKind.A or kind2 is FieldKind.A:
        raise ValueError("closed-form commutators are provided for the E and B fields only")
    _require_completeness(basis)
    hbar = basis.config.hbar
    rho = x1.r - x2.r
    tau = x1.t - x2.t
    dp3 = basis.delta3p
    by_momentum: dict[tuple[int, int, int], Mode] = {}
    for m in basis.modes:
        by_momentum.setdefault(m.n, m)
    out = np.zeros((3, 3), dtype=complex)
    for m in by_momentum.values():
        kv = m.k.k
        phase = np.exp(1j * np.dot(m.p, rho) / hbar)
        if kind1 is kind2:
            proj = np.eye(3) - np.outer(kv, kv)
            out += (-2j / (2.0 * np.pi * hbar) ** 2) * dp3 * m.omega * proj * phase * np.sin(
                m.omega * tau
            )
        else:
            eps_k = np.array(
                [
                    [0.0, kv[2], -kv[1]],
                    [-kv[2], 0.0, kv[0]],
                    [kv[1], -kv[0], 0.0],
                ]
            )
            sign = 1.0 if kind1 is FieldKind.E else -1.0
            out += sign * (2.0 / (2.0 * np.pi * hbar) ** 2) * dp3 * m.omega * eps_k * phase * np.cos(
                m.omega * tau
            )
    return out


def discrete_pauli_jordan(rho: np.ndarray, tau: float, basis: FockBasis) -> float:
    """Lattice analog of the odd commutator kernel D(rho, tau).

    D = (-1/(2 pi hbar)^3) sum_n Delta3p exp(i p.rho/hbar) sin(omega tau)/omega,
    summed over distinct lattice momenta.  Real only when the momentum set
    is closed under n -> -n; asymmetric sets are rejected.
    """
    if not basis.momentum_symmetric():
        raise ValueError(
            "the commutator kernel needs a momentum set closed under n -> -n; "
            "an asymmetric set gives a complex (unphysical) value"
        )
    rho = np.asarray(rho, dtype=float)
    hbar = basis.config.hbar
    dp3 = basis.delta3p
    total = 0.0 + 0.0j
    for n in basis.momenta():
        m = next(mode for mode in basis.modes if mode.n == n)
        total += dp3 * np.exp(1j * np.dot(m.p, rho) / hbar) * np.sin(m.omega * tau) / m.omega
    total *= -1.0 / (2.0 * np.pi * hbar) ** 3
    if abs(total.imag) > 1e-12:
        raise ValueError(f"kernel acquired an imaginary part {total.imag!r}")
    return float(total.real)
