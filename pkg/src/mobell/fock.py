"""Dense complex linear algebra over truncated multi-mode Fock spaces.

Operators and density matrices carry their mode layout with them, so tensor
products, partial traces and population lookups stay label-driven instead of
index-driven. All values are immutable; operations return new objects.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    InvalidDimensionError,
    InvalidParameterError,
    LabelError,
    PositivityError,
)
from .units import TWO_PI

# Populations this far below zero are treated as integrator round-off and
# floored; anything lower is a genuine positivity violation.
POPULATION_FLOOR = -1e-10


@dataclass(frozen=True)
class ModeSpec:
    """A single bosonic mode with its Fock truncation level."""

    label: str
    dim: int

    def __post_init__(self):
        if self.dim < 2:
            raise InvalidDimensionError(
                f"mode {self.label!r}: truncation dim must be >= 2, got {self.dim}"
            )


def _frozen_matrix(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    m.setflags(write=False)
    return m


def _space_dim(space: Sequence[ModeSpec]) -> int:
    d = 1
    for m in space:
        d *= m.dim
    return d


@dataclass(frozen=True)
class Operator:
    """Dense complex operator over an ordered tuple of modes."""

    space: tuple[ModeSpec, ...]
    matrix: np.ndarray

    def __post_init__(self):
        space = tuple(self.space)
        object.__setattr__(self, "space", space)
        if not space:
            raise InvalidDimensionError("operator needs at least one mode")
        m = _frozen_matrix(self.matrix)
        d = _space_dim(space)
        if m.shape != (d, d):
            raise InvalidDimensionError(
                f"matrix shape {m.shape} does not match mode dims (product {d})"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dag(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        self._check_same_space(other)
        return Operator(self.space, self.matrix - other.matrix)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.space, self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(self.space, -self.matrix)

    def _check_same_space(self, other: "Operator"):
        if tuple(self.space) != tuple(other.space):
            raise LabelError(
                f"operators live on different spaces: {self.space} vs {other.space}"
            )


@dataclass(frozen=True)
class DensityMatrix:
    """Normalized, Hermitian, positive-semidefinite state on a mode tuple.

    Construction validates trace, Hermiticity and positivity; integrator
    output may pass looser tolerances through the InitVar arguments.
    """

    space: tuple[ModeSpec, ...]
    matrix: np.ndarray
    trace_tol: InitVar[float] = 1e-9
    herm_tol: InitVar[float] = 1e-12
    psd_tol: InitVar[float] = 1e-10

    def __post_init__(self, trace_tol, herm_tol, psd_tol):
        space = tuple(self.space)
        object.__setattr__(self, "space", space)
        m = _frozen_matrix(self.matrix)
        d = _space_dim(space)
        if m.shape != (d, d):
            raise InvalidDimensionError(
                f"matrix shape {m.shape} does not match mode dims (product {d})"
            )
        tr = np.trace(m)
        if abs(tr - 1.0) > trace_tol:
            raise InvalidParameterError(
                f"density matrix trace {tr:.12g} deviates from 1 by more than {trace_tol:g}"
            )
        herm_dev = np.max(np.abs(m - m.conj().T))
        if herm_dev > herm_tol:
            raise PositivityError(
                f"density matrix is not Hermitian: max|rho - rho^dag| = {herm_dev:.3e}"
            )
        evmin = float(np.linalg.eigvalsh(m)[0])
        if evmin < -psd_tol:
            raise PositivityError(
                f"density matrix has negative eigenvalue {evmin:.3e}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def tr(self) -> float:
        return float(np.trace(self.matrix).real)

    def labels(self) -> tuple[str, ...]:
        return tuple(m.label for m in self.space)


def annihilation(dim: int, label: str = "b") -> Operator:
    """Lowering operator with <n-1|b|n> = sqrt(n); the top Fock level is the
    explicit truncation boundary (nothing maps into it from above)."""
    if dim < 2:
        raise InvalidDimensionError(f"annihilation needs dim >= 2, got {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        m[n - 1, n] = np.sqrt(n)
    return Operator((ModeSpec(label, dim),), m)


def creation(dim: int, label: str = "b") -> Operator:
    return annihilation(dim, label).dag()


def identity(dim: int, label: str = "I") -> Operator:
    if dim < 2:
        raise InvalidDimensionError(f"identity needs dim >= 2, got {dim}")
    return Operator((ModeSpec(label, dim),), np.eye(dim, dtype=complex))


def number(dim: int, label: str = "b") -> Operator:
    return Operator((ModeSpec(label, dim),), np.diag(np.arange(dim, dtype=complex)))


def tensor(ops: Sequence[Operator]) -> Operator:
    """Kronecker product in the listed mode order."""
    ops = list(ops)
    if not ops:
        raise InvalidDimensionError("tensor of an empty operator list")
    space: tuple[ModeSpec, ...] = ()
    m = np.array([[1.0 + 0.0j]])
    for op in ops:
        space = space + tuple(op.space)
        m = np.kron(m, op.matrix)
    return Operator(space, m)


def expand(op: Operator, space: Sequence[ModeSpec]) -> Operator:
    """Embed a one-mode operator into a larger space by label, tensoring
    identities on every other mode."""
    if len(op.space) != 1:
        raise LabelError("expand takes a single-mode operator")
    target = op.space[0]
    labels = [m.label for m in space]
    if labels.count(target.label) != 1:
        raise LabelError(f"label {target.label!r} not unique in target space")
    parts = []
    for m in space:
        if m.label == target.label:
            if m.dim != target.dim:
                raise InvalidDimensionError(
                    f"mode {m.label!r}: dim {m.dim} != operator dim {target.dim}"
                )
            parts.append(op)
        else:
            parts.append(identity(m.dim, m.label))
    return tensor(parts)


def transmon_hamiltonian(omega_q: float, E_C_over_h: float, dim: int, label: str = "q") -> Operator:
    """Anharmonic-oscillator Hamiltonian, diagonal in the Fock basis.

    ``omega_q`` is angular (rad/ns); ``E_C_over_h`` is an ordinary frequency
    in GHz (cycles/ns), so the n-th level sits at
    ``omega_q*n - pi*E_C_over_h*n*(n-1)``.
    """
    if dim < 2:
        raise InvalidDimensionError(f"transmon needs dim >= 2, got {dim}")
    n = np.arange(dim, dtype=float)
    diag = omega_q * n - (TWO_PI * E_C_over_h / 2.0) * n * (n - 1)
    return Operator((ModeSpec(label, dim),), np.diag(diag.astype(complex)))


def vacuum_state(space: Sequence[ModeSpec]) -> DensityMatrix:
    d = _space_dim(space)
    m = np.zeros((d, d), dtype=complex)
    m[0, 0] = 1.0
    return DensityMatrix(tuple(space), m)


def ket_state(space: Sequence[ModeSpec], amplitudes: np.ndarray, **tols) -> DensityMatrix:
    """Density matrix |psi><psi| from a state vector over the full space."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.shape[0] != _space_dim(space):
        raise InvalidDimensionError("ket length does not match space dimension")
    return DensityMatrix(tuple(space), np.outer(v, v.conj()), **tols)


def basis_index(space: Sequence[ModeSpec], occupation: Sequence[int]) -> int:
    dims = [m.dim for m in space]
    if len(occupation) != len(dims):
        raise IndexError(
            f"occupation has {len(occupation)} entries for {len(dims)} modes"
        )
    for n, d, m in zip(occupation, dims, space):
        if not 0 <= n < d:
            raise IndexError(
                f"occupation {n} out of range for mode {m.label!r} (dim {d})"
            )
    return int(np.ravel_multi_index(tuple(occupation), dims))


def partial_trace(
    rho: DensityMatrix,
    keep: Iterable[str],
    *,
    trace_tol: float = 1e-9,
    herm_tol: float = 1e-10,
    psd_tol: float = 1e-8,
) -> DensityMatrix:
    """Reduced density matrix over the kept modes (in original space order)."""
    labels = list(rho.labels())
    keep = list(keep)
    keep_idx = []
    for k in keep:
        hits = [i for i, lab in enumerate(labels) if lab == k]
        if not hits:
            raise LabelError(f"unknown mode label {k!r}")
        if len(hits) > 1:
            raise LabelError(f"mode label {k!r} is ambiguous in this space")
        keep_idx.append(hits[0])
    keep_idx = sorted(set(keep_idx))
    if len(keep_idx) != len(keep):
        raise LabelError("duplicate labels in keep list")

    dims = [m.dim for m in rho.space]
    n = len(dims)
    t = rho.matrix.reshape(dims + dims)
    n_cur = n
    for ax in sorted(set(range(n)) - set(keep_idx), reverse=True):
        t = np.trace(t, axis1=ax, axis2=ax + n_cur)
        n_cur -= 1
    d_out = int(np.prod([dims[i] for i in keep_idx])) if keep_idx else 1
    new_space = tuple(rho.space[i] for i in keep_idx)
    return DensityMatrix(
        new_space,
        t.reshape(d_out, d_out),
        trace_tol=trace_tol,
        herm_tol=herm_tol,
        psd_tol=psd_tol,
    )


def fock_population(rho: DensityMatrix, occupation: Sequence[int]) -> float:
    """Diagonal matrix element <occ|rho|occ>, floored at zero within the
    round-off tolerance."""
    idx = basis_index(rho.space, occupation)
    v = float(rho.matrix[idx, idx].real)
    if v < POPULATION_FLOOR:
        raise PositivityError(
            f"population {v:.3e} at {tuple(occupation)} is below the round-off floor"
        )
    return max(v, 0.0)
