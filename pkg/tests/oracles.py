"""Independent dense state-vector Clifford oracle for tableau tests.

Qubit i maps to bit i of the basis index with qubit 0 as the least
significant bit. Implemented from scratch on raw vectors so it shares no
code with the tableau module it checks.
"""
from __future__ import annotations

import numpy as np


class DenseState:
    def __init__(self, n: int):
        self.n = n
        self.vec = np.zeros(2**n, dtype=complex)
        self.vec[0] = 1.0

    def copy(self) -> "DenseState":
        out = DenseState(self.n)
        out.vec = self.vec.copy()
        return out

    def _mask(self, q: int) -> int:
        return 1 << q

    def apply_h(self, q: int):
        m = self._mask(q)
        idx = np.arange(2**self.n)
        lo = idx[(idx & m) == 0]
        hi = lo | m
        a, b = self.vec[lo].copy(), self.vec[hi].copy()
        s = 1.0 / np.sqrt(2.0)
        self.vec[lo] = s * (a + b)
        self.vec[hi] = s * (a - b)

    def apply_x(self, q: int):
        m = self._mask(q)
        idx = np.arange(2**self.n)
        self.vec = self.vec[idx ^ m]

    def apply_z(self, q: int):
        m = self._mask(q)
        idx = np.arange(2**self.n)
        self.vec = np.where((idx & m) != 0, -self.vec, self.vec)

    def apply_cz(self, a: int, b: int):
        ma, mb = self._mask(a), self._mask(b)
        idx = np.arange(2**self.n)
        both = ((idx & ma) != 0) & ((idx & mb) != 0)
        self.vec = np.where(both, -self.vec, self.vec)

    def pauli_string(self, xmask: int, zmask: int) -> np.ndarray:
        """Vector after applying the Hermitian Pauli prod_j X^x Z^z with the
        Y convention (x=z=1 on a qubit means Y)."""
        idx = np.arange(2**self.n)
        out = self.vec[idx ^ xmask].copy()
        # Z phases act on the (post-X) source index, i.e. the bit pattern of
        # the input component: for target index t, source is t ^ xmask
        src = idx ^ xmask
        zbits = _popcount(src & zmask)
        out = out * ((-1.0) ** zbits)
        # each Y carries i relative to XZ; count Y's and the XZ ordering sign
        n_y = _popcount(xmask & zmask)
        out = out * (1j**n_y)
        return out

    def expect_pauli(self, xmask: int, zmask: int) -> complex:
        return complex(np.vdot(self.vec, self.pauli_string(xmask, zmask)))

    def measure_pauli(self, xmask: int, zmask: int, outcome: int):
        """Project onto the +-1 eigenspace of the Pauli; raises if the
        branch has (near) zero probability."""
        pv = self.pauli_string(xmask, zmask)
        proj = 0.5 * (self.vec + outcome * pv)
        norm = np.linalg.norm(proj)
        if norm < 1e-9:
            raise ValueError("forced outcome has zero probability")
        self.vec = proj / norm

    def fidelity(self, other: np.ndarray) -> float:
        return float(abs(np.vdot(self.vec, other)) ** 2)


def _popcount(arr):
    arr = np.asarray(arr, dtype=np.uint64)
    count = np.zeros(arr.shape, dtype=np.int64)
    while np.any(arr):
        count += (arr & np.uint64(1)).astype(np.int64)
        arr = arr >> np.uint64(1)
    return count


def row_masks(x_bits: np.ndarray, z_bits: np.ndarray, row: int) -> tuple[int, int]:
    xm = zm = 0
    for j in range(x_bits.shape[1]):
        if x_bits[row, j]:
            xm |= 1 << j
        if z_bits[row, j]:
            zm |= 1 << j
    return xm, zm


def tableau_to_dense(tab, rng: np.random.Generator | None = None) -> np.ndarray:
    """Project a reference vector onto the joint +1 eigenspace of every
    stabilizer row; retries from random vectors when the reference is
    orthogonal to the state."""
    n = tab.n
    signs = tab.signs()
    tries = [np.eye(2**n, dtype=complex)[:, 0]]
    gen = rng or np.random.default_rng(1234)
    for _ in range(6):
        v = gen.normal(size=2**n) + 1j * gen.normal(size=2**n)
        tries.append(v / np.linalg.norm(v))
    for ref in tries:
        st = DenseState(n)
        st.vec = ref.copy()
        ok = True
        for r in range(n):
            xm, zm = row_masks(tab.x, tab.z, r)
            pv = int(signs[r]) * st.pauli_string(xm, zm)
            st.vec = 0.5 * (st.vec + pv)
            norm = np.linalg.norm(st.vec)
            if norm < 1e-9:
                ok = False
                break
            st.vec /= norm
        if ok:
            return st.vec
    raise ValueError("could not synthesize dense state from tableau")


def graph_state_dense(n: int, edges) -> np.ndarray:
    st = DenseState(n)
    for q in range(n):
        st.apply_h(q)
    for u, v in edges:
        st.apply_cz(u, v)
    return st.vec
