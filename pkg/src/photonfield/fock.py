"""Momentum-lattice modes and the truncated multi-mode bosonic Fock space.

Continuum momentum integrals are discretized on a periodic box of side L:
allowed momenta are p = (2 pi hbar / L) n for nonzero integer 3-vectors n,
and a mode is one (helicity, n) pair.  The dictionary used throughout:

    integral d^3p        ->  sum_n Delta3p,   Delta3p = (2 pi hbar / L)^3
    a_s(p)               ->  a_mode / sqrt(Delta3p)
    delta^3(p - p')      ->  delta_{n,n'} / Delta3p

Each mode carries at most n_max quanta; the creation operator annihilates
top-occupancy states, so operator identities are stated on "safe"
subspaces whose occupancies stay below the cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np
import scipy.sparse as sp

from .polarization import Direction, PolarizationTriad, make_triad

IntVec = tuple[int, int, int]
ModeKey = tuple[int, IntVec]  # (helicity, integer momentum)

DIM_GUARD = 65536
NNZ_BUDGET = 200000


class LatticeSizeError(ValueError):
    """Requested basis exceeds the configured size guards."""


class BasisMismatchError(ValueError):
    """Operators or states built on different bases were combined."""


@dataclass(frozen=True)
class LatticeConfig:
    """Periodic-box mode lattice and truncation parameters.

    modes lists (helicity, n) pairs with n a nonzero integer 3-vector;
    n_max is the per-mode occupancy cap.  gauge_reference optionally
    overrides the transverse gauge axis used for every polarization triad
    (observables must not depend on it).
    """

    length: float
    n_max: int
    modes: tuple[ModeKey, ...]
    hbar: float = 1.0
    c: float = 1.0
    gauge_reference: tuple[float, float, float] | None = None
    dim_guard: int = DIM_GUARD
    nnz_budget: int = NNZ_BUDGET

    def __post_init__(self) -> None:
        if self.length <= 0 or self.hbar <= 0 or self.c <= 0:
            raise ValueError("length, hbar and c must be positive")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        norm_modes = []
        for s, n in self.modes:
            n = tuple(int(v) for v in n)
            if s not in (1, -1):
                raise ValueError(f"helicity must be +1 or -1, got {s}")
            if len(n) != 3:
                raise ValueError(f"lattice momentum must be a 3-vector, got {n}")
            if n == (0, 0, 0):
                raise ValueError("zero-momentum mode is excluded (omega = 0)")
            norm_modes.append((int(s), n))
        if len(set(norm_modes)) != len(norm_modes):
            raise ValueError("duplicate modes in lattice configuration")
        if not norm_modes:
            raise ValueError("at least one mode is required")
        object.__setattr__(self, "modes", tuple(norm_modes))

    @property
    def delta3p(self) -> float:
        return (2.0 * np.pi * self.hbar / self.length) ** 3


@dataclass(frozen=True, eq=False)
class Mode:
    """One (helicity, lattice momentum) pair with its derived kinematics."""

    s: int
    n: IntVec
    p: np.ndarray
    omega: float
    k: Direction
    triad: PolarizationTriad

    @property
    def eps(self) -> np.ndarray:
        return self.triad.eps(self.s)

    @property
    def key(self) -> ModeKey:
        return (self.s, self.n)


def _derive_mode(key: ModeKey, config: LatticeConfig) -> Mode:
    s, n = key
    nv = np.asarray(n, dtype=float)
    p = (2.0 * np.pi * config.hbar / config.length) * nv
    k = Direction(k=nv / np.linalg.norm(nv))
    omega = config.c * np.linalg.norm(p) / config.hbar
    ref = None if config.gauge_reference is None else np.asarray(config.gauge_reference)
    return Mode(s=s, n=n, p=p, omega=float(omega), k=k, triad=make_triad(k, reference=ref))


class FockBasis:
    """Occupation-number basis over the configured modes.

    Basis states are ordered lexicographically in the occupancy tuple with
    the first mode most significant: for two modes with n_max = 1 the
    order is (0,0), (0,1), (1,0), (1,1).  This ordering is part of the
    on-disk operator export contract.
    """

    def __init__(self, config: LatticeConfig):
        self.config = config
        self.modes: tuple[Mode, ...] = tuple(_derive_mode(m, config) for m in config.modes)
        self.n_max = config.n_max
        self.n_modes = len(self.modes)
        local = config.n_max + 1
        dim = local**self.n_modes
        if dim > config.dim_guard:
            raise LatticeSizeError(
                f"basis dimension {local}^{self.n_modes} = {dim} exceeds the guard "
                f"{config.dim_guard}; reduce the mode count or n_max, or raise dim_guard"
            )
        est_nnz = 2 * self.n_modes * dim
        if est_nnz > config.nnz_budget:
            raise LatticeSizeError(
                f"estimated field-operator storage {est_nnz} nonzeros exceeds the budget "
                f"{config.nnz_budget}; reduce the mode count or n_max, or raise nnz_budget"
            )
        self.dim = dim
        # strides[j] = local^(n_modes - 1 - j): index increment for one
        # quantum in mode j under the lexicographic ordering.
        self.strides = tuple(local ** (self.n_modes - 1 - j) for j in range(self.n_modes))
        occ = np.unravel_index(np.arange(dim), (local,) * self.n_modes)
        self._occupancies = np.stack(occ, axis=1)  # shape (dim, n_modes)
        single = sp.diags(np.sqrt(np.arange(1, local)), offsets=1, format="csr", dtype=complex)
        self._lowerings = tuple(
            sp.kron(
                sp.kron(sp.identity(local**j, format="csr", dtype=complex), single),
                sp.identity(local ** (self.n_modes - 1 - j), format="csr", dtype=complex),
            ).tocsr()
            for j in range(self.n_modes)
        )

    # -- index bookkeeping -------------------------------------------------

    def occupancies(self, index: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self._occupancies[index])

    def occupancy_table(self) -> np.ndarray:
        """(dim, n_modes) array of occupancies, row i = basis state i."""
        return self._occupancies

    def index(self, occupancies: Sequence[int]) -> int:
        occ = tuple(int(v) for v in occupancies)
        if len(occ) != self.n_modes:
            raise ValueError(f"expected {self.n_modes} occupancies, got {len(occ)}")
        if any(v < 0 or v > self.n_max for v in occ):
            raise ValueError(f"occupancies must lie in 0..{self.n_max}, got {occ}")
        return sum(v * s for v, s in zip(occ, self.strides))

    def mode_index(self, mode: Mode | ModeKey) -> int:
        key = mode.key if isinstance(mode, Mode) else (int(mode[0]), tuple(int(v) for v in mode[1]))
        for j, m in enumerate(self.modes):
            if m.key == key:
                return j
        raise KeyError(f"mode {key} is not on the lattice")

    @property
    def delta3p(self) -> float:
        return self.config.delta3p

    def momenta(self) -> tuple[IntVec, ...]:
        """Distinct lattice momenta, in first-appearance order."""
        seen: list[IntVec] = []
        for m in self.modes:
            if m.n not in seen:
                seen.append(m.n)
        return tuple(seen)

    def helicities_complete(self) -> bool:
        """True when every lattice momentum carries both helicities."""
        keys = {m.key for m in self.modes}
        return all((1, n) in keys and (-1, n) in keys for n in self.momenta())

    def momentum_symmetric(self) -> bool:
        """True when the momentum set is closed under n -> -n."""
        ns = set(self.momenta())
        return all(tuple(-v for v in n) in ns for n in ns)

    # -- elementary operators ----------------------------------------------

    def _lowering(self, j: int) -> sp.csr_matrix:
        return self._lowerings[j]


HERMITIAN = "hermitian"
ANTIHERMITIAN = "antihermitian"


class SparseOperator:
    """Complex sparse matrix on a FockBasis with an optional symmetry flag."""

    def __init__(self, matrix: sp.spmatrix, basis: FockBasis, symmetry: str | None = None):
        if symmetry not in (None, HERMITIAN, ANTIHERMITIAN):
            raise ValueError(f"unknown symmetry flag {symmetry!r}")
        self.matrix = sp.csr_matrix(matrix, dtype=complex)
        if self.matrix.shape != (basis.dim, basis.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match basis dim {basis.dim}")
        self.basis = basis
        self.symmetry = symmetry

    # -- algebra -------------------------------------------------------------

    def _same_basis(self, other: "SparseOperator") -> None:
        if self.basis is not other.basis:
            raise BasisMismatchError("operators act on different bases")

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_basis(other)
        sym = self.symmetry if self.symmetry == other.symmetry else None
        return SparseOperator(self.matrix + other.matrix, self.basis, sym)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_basis(other)
        sym = self.symmetry if self.symmetry == other.symmetry else None
        return SparseOperator(self.matrix - other.matrix, self.basis, sym)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_basis(other)
        return SparseOperator(self.matrix @ other.matrix, self.basis, None)

    def __mul__(self, scalar: complex) -> "SparseOperator":
        sym = self.symmetry if (np.imag(scalar) == 0 and np.real(scalar) != 0) else None
        return SparseOperator(self.matrix * scalar, self.basis, sym)

    __rmul__ = __mul__

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(-self.matrix, self.basis, self.symmetry)

    def dagger(self) -> "SparseOperator":
        return SparseOperator(self.matrix.conj().T.tocsr(), self.basis, self.symmetry)

    # -- inspection ------------------------------------------------------------

    def max_abs(self) -> float:
        if self.matrix.nnz == 0:
            return 0.0
        return float(np.max(np.abs(self.matrix.data)))

    def symmetry_residual(self) -> float:
        """Deviation from the flagged symmetry (0.0 when no flag is set)."""
        if self.symmetry is None:
            return 0.0
        sign = 1.0 if self.symmetry == HERMITIAN else -1.0
        diff = self.matrix - sign * self.matrix.conj().T
        return 0.0 if diff.nnz == 0 else float(np.max(np.abs(diff.data)))

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()


def identity(basis: FockBasis) -> SparseOperator:
    return SparseOperator(sp.identity(basis.dim, dtype=complex, format="csr"), basis, HERMITIAN)


def zero(basis: FockBasis) -> SparseOperator:
    return SparseOperator(sp.csr_matrix((basis.dim, basis.dim), dtype=complex), basis, HERMITIAN)


def diagonal_operator(basis: FockBasis, values: np.ndarray) -> SparseOperator:
    values = np.asarray(values)
    sym = HERMITIAN if np.all(np.isreal(values)) else None
    return SparseOperator(sp.diags(values.astype(complex), format="csr"), basis, sym)


def build_basis(config: LatticeConfig) -> FockBasis:
    return FockBasis(config)


def annihilation(basis: FockBasis, mode: Mode | ModeKey) -> SparseOperator:
    """a for one mode: a|..n..> = sqrt(n)|..n-1..>, a|vacuum> = 0."""
    j = basis.mode_index(mode)
    return SparseOperator(basis._lowering(j), basis, None)


def creation(basis: FockBasis, mode: Mode | ModeKey) -> SparseOperator:
    """a-dagger for one mode; annihilates top-occupancy states (truncation)."""
    j = basis.mode_index(mode)
    return SparseOperator(basis._lowering(j).conj().T.tocsr(), basis, None)


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return a @ b - b @ a


def number_operator(basis: FockBasis, mode: Mode | ModeKey) -> SparseOperator:
    j = basis.mode_index(mode)
    return diagonal_operator(basis, basis.occupancy_table()[:, j].astype(float))


def total_number(basis: FockBasis) -> SparseOperator:
    return diagonal_operator(basis, basis.occupancy_table().sum(axis=1).astype(float))


def safe_projector(basis: FockBasis, margin: int) -> SparseOperator:
    """Projector onto states with every occupancy <= n_max - margin.

    On the margin-1 subspace the ladder algebra is exact:
    [a, a-dagger] = 1 there, while deviations from truncation live only on
    top-occupancy states.
    """
    if margin < 0 or margin > basis.n_max:
        raise ValueError(f"margin must lie in 0..{basis.n_max}, got {margin}")
    keep = (basis.occupancy_table() <= basis.n_max - margin).all(axis=1)
    return diagonal_operator(basis, keep.astype(float))


def export_operator(op: SparseOperator, stream: IO[str]) -> None:
    """Write the coordinate-list text form of an operator.

    Header line: `dim n_modes n_max`; then one `row col re im` line per
    stored nonzero, sorted row-major.  Floats use shortest round-trip
    decimal formatting, so the output is bit-exact across runs.
    """
    basis = op.basis
    coo = op.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    stream.write(f"{basis.dim} {basis.n_modes} {basis.n_max}\n")
    for i in order:
        v = coo.data[i]
        stream.write(f"{coo.row[i]} {coo.col[i]} {float(v.real)!r} {float(v.imag)!r}\n")
