"""Stabilizer-formalism construction of hybrid microwave-optical graph states.

Each block contributes one microwave and one optical qubit prepared as a
Bell pair (stabilizers XX and ZZ); CZ gates between microwave qubits wire
blocks into a graph of logical vertices, and X-measuring every microwave
qubit teleports the graph onto the optical qubits up to local Z byproducts.

Tableaus store stabilizer rows only (n rows of X/Z bits plus a sign);
deterministic measurement outcomes are recovered by GF(2) elimination. A
dense 4x4 check of the sqrt(iSWAP)-based CZ circuit lives here too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    InternalConsistencyError,
    InvalidParameterError,
    SingularityError,
)

MICROWAVE = "microwave"
OPTICAL = "optical"


@dataclass(frozen=True)
class QubitLabel:
    block: int
    domain: str

    def __post_init__(self):
        if self.domain not in (MICROWAVE, OPTICAL):
            raise InvalidParameterError(f"unknown domain {self.domain!r}")

    def __str__(self):
        return f"{self.domain}:{self.block}"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on integer vertices, no self-loops."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        edges = frozenset(
            (min(u, v), max(u, v)) for (u, v) in self.edges
        )
        for u, v in edges:
            if u == v:
                raise InvalidParameterError(f"self-loop on vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise InvalidParameterError(f"edge ({u},{v}) uses unknown vertex")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", frozenset(int(v) for v in self.vertices))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n_vertices: int | None = None) -> "Graph":
        edges = [(int(u), int(v)) for u, v in edges]
        verts = {u for e in edges for u in e}
        if n_vertices is not None:
            verts |= set(range(n_vertices))
        return cls(frozenset(verts), frozenset(edges))

    @classmethod
    def ring(cls, n: int) -> "Graph":
        if n < 3:
            raise InvalidParameterError("ring needs at least 3 vertices")
        return cls.from_edges([(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        if n < 1:
            raise InvalidParameterError("path needs at least 1 vertex")
        return cls.from_edges([(i, i + 1) for i in range(n - 1)], n_vertices=n)

    def adjacency(self) -> np.ndarray:
        order = sorted(self.vertices)
        pos = {v: i for i, v in enumerate(order)}
        a = np.zeros((len(order), len(order)), dtype=np.uint8)
        for u, v in self.edges:
            a[pos[u], pos[v]] = a[pos[v], pos[u]] = 1
        return a


def parse_edge_list(text: str) -> Graph:
    """One `u v` pair per line, 0-indexed vertices; blank lines and
    #-comments allowed."""
    edges = []
    verts = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidParameterError(f"edge list line {ln}: expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        verts |= {u, v}
    return Graph(frozenset(verts), frozenset(edges))


def format_edge_list(g: Graph) -> str:
    return "\n".join(f"{u} {v}" for u, v in sorted(g.edges)) + ("\n" if g.edges else "")


def _g_phase(x1: int, z1: int, x2: int, z2: int) -> int:
    """Exponent of i when multiplying single-qubit Paulis (x1,z1)*(x2,z2)."""
    if x1 == 0 and z1 == 0:
        return 0
    if x1 == 1 and z1 == 1:  # Y
        return z2 - x2
    if x1 == 1:  # X
        return z2 * (2 * x2 - 1)
    return x2 * (1 - 2 * z2)  # Z


class StabilizerTableau:
    """n commuting independent stabilizer rows over n labelled qubits.

    Value semantics: gates and measurements return new tableaus. Signs live
    in ``phase`` as exponents of i restricted to {0, 2} (+1 / -1).
    """

    def __init__(self, x, z, phase, labels: Sequence[QubitLabel], validate: bool = True):
        self.x = np.array(x, dtype=np.uint8)
        self.z = np.array(z, dtype=np.uint8)
        self.phase = np.array(phase, dtype=np.uint8)
        self.labels = tuple(labels)
        self.n = len(self.labels)
        if self.x.shape != (self.n, self.n) or self.z.shape != (self.n, self.n):
            raise InvalidParameterError("tableau bit matrices must be n x n")
        if self.phase.shape != (self.n,):
            raise InvalidParameterError("tableau needs one sign per row")
        if np.any(self.phase % 2):
            raise InternalConsistencyError("non-Hermitian stabilizer sign")
        if validate:
            self._check_group()

    def _check_group(self):
        # pairwise commutation under the symplectic form
        sym = (self.x @ self.z.T + self.z @ self.x.T) % 2
        if np.any(sym):
            raise InternalConsistencyError("stabilizer rows do not commute")
        if _gf2_rank(np.concatenate([self.x, self.z], axis=1)) != self.n:
            raise InternalConsistencyError("stabilizer rows are dependent")

    def signs(self) -> np.ndarray:
        return np.where(self.phase % 4 == 0, 1, -1)

    def copy(self) -> "StabilizerTableau":
        return StabilizerTableau(self.x, self.z, self.phase, self.labels, validate=False)

    def index_of(self, q: QubitLabel) -> int:
        try:
            return self.labels.index(q)
        except ValueError:
            raise InvalidParameterError(f"qubit {q} not in tableau") from None

    def row_string(self, i: int) -> str:
        chars = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
        s = "+" if self.phase[i] % 4 == 0 else "-"
        return s + "".join(chars[(int(self.x[i, j]), int(self.z[i, j]))] for j in range(self.n))

    def __repr__(self):
        return "\n".join(self.row_string(i) for i in range(self.n))

    def _rowmult_into(self, h: int, i: int):
        ph = int(self.phase[h]) + int(self.phase[i])
        for j in range(self.n):
            ph += _g_phase(int(self.x[h, j]), int(self.z[h, j]), int(self.x[i, j]), int(self.z[i, j]))
        self.phase[h] = ph % 4
        self.x[h] ^= self.x[i]
        self.z[h] ^= self.z[i]


def _gf2_rank(m: np.ndarray) -> int:
    m = m.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c]:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def prepare_blocks(n_blocks: int) -> StabilizerTableau:
    """Bell pair per block: stabilizers X_q X_o and Z_q Z_o, with the
    microwave qubit of block i at index 2i and its optical partner at 2i+1."""
    if n_blocks < 1:
        raise InvalidParameterError("need at least one block")
    n = 2 * n_blocks
    x = np.zeros((n, n), dtype=np.uint8)
    z = np.zeros((n, n), dtype=np.uint8)
    phase = np.zeros(n, dtype=np.uint8)
    labels = []
    for b in range(n_blocks):
        q, o = 2 * b, 2 * b + 1
        x[q, q] = x[q, o] = 1
        z[o, q] = z[o, o] = 1
        labels.append(QubitLabel(b, MICROWAVE))
        labels.append(QubitLabel(b, OPTICAL))
    return StabilizerTableau(x, z, phase, labels)


def apply_cz(t: StabilizerTableau, a: QubitLabel, b: QubitLabel) -> StabilizerTableau:
    if a == b:
        raise InvalidParameterError("CZ needs two distinct qubits")
    ia, ib = t.index_of(a), t.index_of(b)
    out = t.copy()
    # sign flips when both X bits are set and exactly one Z bit is
    flips = out.x[:, ia] & out.x[:, ib] & (out.z[:, ia] ^ out.z[:, ib])
    out.phase = (out.phase + 2 * flips) % 4
    out.z[:, ia] ^= out.x[:, ib]
    out.z[:, ib] ^= out.x[:, ia]
    return StabilizerTableau(out.x, out.z, out.phase, out.labels)


def apply_h(t: StabilizerTableau, q: QubitLabel) -> StabilizerTableau:
    i = t.index_of(q)
    out = t.copy()
    flips = out.x[:, i] & out.z[:, i]
    out.phase = (out.phase + 2 * flips) % 4
    out.x[:, i], out.z[:, i] = out.z[:, i].copy(), out.x[:, i].copy()
    return StabilizerTableau(out.x, out.z, out.phase, out.labels)


def measure(
    t: StabilizerTableau,
    q: QubitLabel,
    basis: str = "Z",
    rng: np.random.Generator | None = None,
) -> tuple[int, StabilizerTableau]:
    """Measure X_q or Z_q; returns (outcome in {+1,-1}, post tableau).

    Random outcomes (some row anticommutes) need ``rng``; deterministic
    outcomes are resolved by expressing the measured Pauli as a product of
    rows over GF(2).
    """
    if basis not in ("X", "Z"):
        raise InvalidParameterError(f"basis must be 'X' or 'Z', got {basis!r}")
    i = t.index_of(q)
    out = t.copy()
    anti = out.z[:, i].astype(bool) if basis == "X" else out.x[:, i].astype(bool)
    hits = np.flatnonzero(anti)
    if hits.size:
        p = int(hits[0])
        for r in hits[1:]:
            out._rowmult_into(int(r), p)
        if rng is None:
            raise InvalidParameterError(
                f"measurement of {basis} on {q} has a random outcome; supply rng"
            )
        outcome = 1 if rng.random() < 0.5 else -1
        out.x[p] = 0
        out.z[p] = 0
        if basis == "X":
            out.x[p, i] = 1
        else:
            out.z[p, i] = 1
        out.phase[p] = 0 if outcome == 1 else 2
        return outcome, StabilizerTableau(out.x, out.z, out.phase, out.labels)

    # deterministic: solve rows^T c = target over GF(2), accumulate sign
    target = np.zeros(2 * out.n, dtype=np.uint8)
    if basis == "X":
        target[i] = 1
    else:
        target[out.n + i] = 1
    rows = np.concatenate([out.x, out.z], axis=1) % 2
    coeffs = _gf2_solve(rows.T, target)
    if coeffs is None:
        raise InternalConsistencyError("commuting measurement not in stabilizer group")
    acc_x = np.zeros(out.n, dtype=np.uint8)
    acc_z = np.zeros(out.n, dtype=np.uint8)
    ph = 0
    for r in np.flatnonzero(coeffs):
        ph += int(out.phase[r])
        for j in range(out.n):
            ph += _g_phase(int(acc_x[j]), int(acc_z[j]), int(out.x[r, j]), int(out.z[r, j]))
        acc_x ^= out.x[r]
        acc_z ^= out.z[r]
    outcome = 1 if ph % 4 == 0 else -1
    return outcome, StabilizerTableau(out.x, out.z, out.phase, out.labels, validate=False)


def _gf2_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """Solve a @ x = b over GF(2); None when inconsistent."""
    a = a.copy() % 2
    b = b.copy() % 2
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for rr in range(r, rows):
            if a[rr, c]:
                pivot = rr
                break
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        b[r], b[pivot] = b[pivot], b[r]
        for rr in range(rows):
            if rr != r and a[rr, c]:
                a[rr] ^= a[r]
                b[rr] ^= b[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    x = np.zeros(cols, dtype=np.uint8)
    for rr in range(r, rows):
        if b[rr]:
            return None
    for rr, c in enumerate(pivots):
        x[c] = b[rr]
    return x


def build_hybrid_graph(g: Graph) -> StabilizerTableau:
    """Bell-pair blocks wired by CZ gates between microwave qubits along the
    graph's edges. Vertices must be 0..n-1 (block indices)."""
    order = sorted(g.vertices)
    if order != list(range(len(order))):
        raise InvalidParameterError("graph vertices must be 0..n-1")
    t = prepare_blocks(len(order))
    for u, v in sorted(g.edges):
        t = apply_cz(t, QubitLabel(u, MICROWAVE), QubitLabel(v, MICROWAVE))
    return t


def extract_optical(
    t: StabilizerTableau, rng: np.random.Generator
) -> tuple[Graph, list[tuple[QubitLabel, str]]]:
    """Measure every microwave qubit in X and canonicalize what remains on
    the optical qubits to graph-adjacency form.

    Returns the optical graph (vertices = block ids) and the outcome-dependent
    local Z byproducts: rows whose canonical stabilizer carries sign -1 need
    Z on that vertex before the state equals the plain graph state.
    """
    mw = [lab for lab in t.labels if lab.domain == MICROWAVE]
    if not mw:
        raise InvalidParameterError("tableau has no microwave qubits")
    cur = t
    for q in mw:
        _, cur = measure(cur, q, basis="X", rng=rng)

    work = cur.copy()
    n = work.n
    opt_idx = [i for i, lab in enumerate(work.labels) if lab.domain == OPTICAL]
    mw_idx = [i for i, lab in enumerate(work.labels) if lab.domain == MICROWAVE]

    # measured rows are +-X_q; use them to clear X support on microwave cols
    for i in mw_idx:
        anchor = None
        for r in range(n):
            if work.x[r, i] and not work.z[r, i] and \
               not np.any(np.delete(work.x[r], i)) and not np.any(work.z[r]):
                anchor = r
                break
        if anchor is None:
            raise InternalConsistencyError(f"no pure X row for measured qubit index {i}")
        for r in range(n):
            if r != anchor and (work.x[r, i] or work.z[r, i]):
                if work.z[r, i]:
                    raise InternalConsistencyError("Z support on a measured qubit")
                work._rowmult_into(r, anchor)

    opt_rows = [
        r for r in range(n)
        if not np.any(work.x[r][mw_idx]) and not np.any(work.z[r][mw_idx])
    ]
    n_opt = len(opt_idx)
    if len(opt_rows) != n_opt:
        raise InternalConsistencyError(
            f"expected {n_opt} optical-only rows, found {len(opt_rows)}"
        )

    sub = StabilizerTableau(
        work.x[np.ix_(opt_rows, opt_idx)],
        work.z[np.ix_(opt_rows, opt_idx)],
        work.phase[opt_rows],
        [work.labels[i] for i in opt_idx],
    )
    adj, signs = _canonical_graph_form(sub)
    blocks = [lab.block for lab in sub.labels]
    edges = [
        (blocks[i], blocks[j])
        for i in range(n_opt)
        for j in range(i + 1, n_opt)
        if adj[i, j]
    ]
    g_out = Graph(frozenset(blocks), frozenset(edges))
    corrections = [
        (sub.labels[i], "Z") for i in range(n_opt) if signs[i] < 0
    ]
    return g_out, corrections


def _canonical_graph_form(t: StabilizerTableau) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce the X block to identity; the Z block is then the adjacency
    matrix of the graph state (symmetric, zero diagonal)."""
    work = t.copy()
    n = work.n
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if work.x[r, c]:
                pivot = r
                break
        if pivot is None:
            raise InternalConsistencyError(
                "X block is singular: residual state is not in CZ-graph form"
            )
        if pivot != c:
            work.x[[c, pivot]] = work.x[[pivot, c]]
            work.z[[c, pivot]] = work.z[[pivot, c]]
            work.phase[[c, pivot]] = work.phase[[pivot, c]]
        for r in range(n):
            if r != c and work.x[r, c]:
                work._rowmult_into(r, c)
    if not np.array_equal(work.x, np.eye(n, dtype=np.uint8)):
        raise InternalConsistencyError("X block did not reduce to identity")
    adj = work.z.copy()
    if np.any(np.diagonal(adj)) or not np.array_equal(adj, adj.T):
        raise InternalConsistencyError(
            "Z block is not a graph adjacency (needs local Clifford repair)"
        )
    return adj, np.where(work.phase % 4 == 0, 1, -1)


def effective_coupling(
    g_c: float, g_12: float, Delta: float, E_C_over_hbar: float
) -> tuple[float, float]:
    """Dressed rates of the coupler-mediated two-qubit interaction:
    Omega = 2 g_12 (1 + 6 g_c^2 / Delta^2), g_XX = -4 g_c^2 E_C / (Delta^2 - E_C^2).
    All arguments angular."""
    scale = max(abs(Delta), abs(E_C_over_hbar), 1.0) ** 2
    if abs(Delta) < 1e-14 * math.sqrt(scale) or abs(Delta**2 - E_C_over_hbar**2) < 1e-14 * scale:
        raise SingularityError(
            f"effective coupling evaluated at a pole: Delta={Delta}, E_C/hbar={E_C_over_hbar}"
        )
    omega = 2.0 * g_12 * (1.0 + 6.0 * g_c**2 / Delta**2)
    g_xx = -4.0 * g_c**2 * E_C_over_hbar / (Delta**2 - E_C_over_hbar**2)
    return omega, g_xx


# dense 2x2 / 4x4 gate constants for the circuit check
_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_H2 = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
_CZ4 = np.diag([1, 1, 1, -1]).astype(complex)


def rx_gate(theta: float) -> np.ndarray:
    return math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * _X


def ry_gate(theta: float) -> np.ndarray:
    return math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * _Y


def sqiswap_gate() -> np.ndarray:
    s = 1.0 / math.sqrt(2.0)
    return np.array(
        [[1, 0, 0, 0], [0, s, 1j * s, 0], [0, 1j * s, s, 0], [0, 0, 0, 1]],
        dtype=complex,
    )


@dataclass(frozen=True)
class CzCircuitCheck:
    deviation: float
    global_phase: float
    dressed_deviation: float
    dressing_angles: tuple[float, float]

    def __float__(self):
        return self.deviation


def _phase_min_dev(u: np.ndarray, target: np.ndarray) -> tuple[float, float]:
    def dev(phi):
        return float(np.max(np.abs(u - np.exp(1j * phi) * target)))

    phis = np.linspace(-math.pi, math.pi, 2049)
    best = min(phis, key=dev)
    a, b = best - 0.01, best + 0.01
    for _ in range(60):
        c = b - 0.618034 * (b - a)
        d = a + 0.618034 * (b - a)
        if dev(c) < dev(d):
            b = d
        else:
            a = c
    phi = 0.5 * (a + b)
    return dev(phi), phi


def verify_cz_decomposition() -> CzCircuitCheck:
    """Compose the sqrt(iSWAP) two-qubit circuit as dense 4x4 unitaries and
    compare against CZ up to global phase.

    Also reports the best additional local-Z dressing exp(-i a Z/2) x
    exp(-i b Z/2), in case the raw circuit were only CZ up to local phases.
    """
    s = sqiswap_gate()
    cols = [
        np.kron(_X, _H2),
        np.kron(ry_gate(math.pi / 2), _I2),
        s,
        np.kron(_X, _I2),
        s,
        np.kron(rx_gate(-math.pi / 2), rx_gate(-math.pi / 2)),
        np.kron(ry_gate(-math.pi / 2), _I2),
        np.kron(_X, _H2),
    ]
    u = np.eye(4, dtype=complex)
    for c in cols:
        u = c @ u
    deviation, phi = _phase_min_dev(u, _CZ4)

    # local-Z dressing from the diagonal phases (meaningful when u is
    # diagonal-dominant, which holds whenever the circuit is CZ-like)
    diag = np.diagonal(u)
    if np.min(np.abs(diag)) > 1e-3:
        th = np.angle(diag)
        b_ang = th[1] - th[0]
        a_ang = th[2] - th[0]
        dress = np.diag(
            [1, np.exp(1j * b_ang), np.exp(1j * a_ang), np.exp(1j * (a_ang + b_ang))]
        ).astype(complex)
        dressed_dev, _ = _phase_min_dev(u, dress @ _CZ4)
    else:
        a_ang = b_ang = 0.0
        dressed_dev = deviation
    return CzCircuitCheck(
        deviation=deviation,
        global_phase=phi,
        dressed_deviation=dressed_dev,
        dressing_angles=(a_ang, b_ang),
    )
