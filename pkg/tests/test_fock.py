import numpy as np
import pytest

from mobell.exceptions import (
    InvalidDimensionError,
    InvalidParameterError,
    LabelError,
    PositivityError,
)
from mobell.fock import (
    DensityMatrix,
    ModeSpec,
    annihilation,
    creation,
    expand,
    fock_population,
    identity,
    ket_state,
    number,
    partial_trace,
    tensor,
    transmon_hamiltonian,
    vacuum_state,
)
from mobell.units import GHZ, MHZ, TWO_PI


def test_annihilation_two_level():
    b = annihilation(2)
    assert np.allclose(b.matrix, [[0, 1], [0, 0]])


def test_annihilation_sqrt_amplitudes():
    b = annihilation(3)
    assert b.matrix[1, 2] == pytest.approx(np.sqrt(2))


def test_number_operator_diagonal():
    b = annihilation(4)
    nb = b.dag() @ b
    assert np.allclose(np.diagonal(nb.matrix).real, [0, 1, 2, 3])


def test_annihilation_rejects_small_dim():
    with pytest.raises(InvalidDimensionError):
        annihilation(1)


def test_commutator_identity_below_truncation():
    for dim in (2, 3, 4, 6):
        b = annihilation(dim)
        comm = (b @ b.dag() - b.dag() @ b).matrix
        k = dim - 1
        assert np.allclose(comm[:k, :k], np.eye(k), atol=1e-12)
        # the top level is the truncation boundary
        assert comm[k, k] == pytest.approx(1 - dim)


def test_tensor_identities():
    t = tensor([identity(2, "a"), identity(3, "b")])
    assert np.allclose(t.matrix, np.eye(6))
    assert [m.dim for m in t.space] == [2, 3]


def test_tensor_dimension_product():
    t = tensor([annihilation(3, "a"), annihilation(4, "b")])
    assert t.matrix.shape == (12, 12)


def test_tensor_sigma_z_action():
    sz = number(2, "q") * 2.0 - identity(2, "q")
    op = tensor([sz, identity(2, "m")])
    ket = np.zeros(4)
    ket[2] = 1.0  # |10>
    assert np.allclose(op.matrix @ ket, ket)


def test_tensor_empty_rejected():
    with pytest.raises(InvalidDimensionError):
        tensor([])


def test_operator_products_associate():
    rng = np.random.default_rng(42)
    space = (ModeSpec("a", 3),)
    ops = [
        type(identity(3, "a"))(space, rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        for _ in range(3)
    ]
    left = (ops[0] @ ops[1]) @ ops[2]
    right = ops[0] @ (ops[1] @ ops[2])
    assert np.max(np.abs(left.matrix - right.matrix)) < 1e-12


def test_transmon_levels():
    w = 4.8 * GHZ
    h = transmon_hamiltonian(w, 0.2, 3)
    d = np.diagonal(h.matrix).real
    assert d[0] == 0.0
    assert d[1] == pytest.approx(w)
    # second level: 2*omega_q - E_C/hbar
    assert d[2] == pytest.approx(TWO_PI * (2 * 4.8 - 0.2))


def test_vacuum_and_population():
    space = (ModeSpec("q", 2), ModeSpec("m", 3))
    rho = vacuum_state(space)
    assert fock_population(rho, (0, 0)) == pytest.approx(1.0)
    assert fock_population(rho, (1, 0)) == pytest.approx(0.0)


def test_population_out_of_range():
    rho = vacuum_state((ModeSpec("q", 2),))
    with pytest.raises(IndexError):
        fock_population(rho, (2,))
    with pytest.raises(IndexError):
        fock_population(rho, (0, 0))


def test_population_two_mode_squeezed():
    lam = 0.3
    dim = 10
    space = (ModeSpec("m", dim), ModeSpec("o", dim))
    ket = np.zeros(dim * dim, dtype=complex)
    for n in range(dim):
        ket[n * dim + n] = np.sqrt(1 - lam**2) * lam**n
    rho = ket_state(space, ket)
    assert fock_population(rho, (1, 1)) == pytest.approx((1 - 0.09) * 0.09, abs=1e-12)


def test_population_sums_to_one():
    rng = np.random.default_rng(3)
    space = (ModeSpec("q", 2), ModeSpec("m", 3))
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    m = m @ m.conj().T
    rho = DensityMatrix(space, m / np.trace(m))
    total = sum(fock_population(rho, (i, j)) for i in range(2) for j in range(3))
    assert total == pytest.approx(1.0, abs=1e-8)


def test_partial_trace_product_state():
    rng = np.random.default_rng(5)

    def random_dm(d):
        m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = m @ m.conj().T
        return m / np.trace(m)

    ma, mb = random_dm(2), random_dm(3)
    space = (ModeSpec("a", 2), ModeSpec("b", 3))
    rho = DensityMatrix(space, np.kron(ma, mb))
    red = partial_trace(rho, ["a"])
    assert np.max(np.abs(red.matrix - ma)) < 1e-12
    red_b = partial_trace(rho, ["b"])
    assert np.max(np.abs(red_b.matrix - mb)) < 1e-12


def test_partial_trace_bell_state():
    space = (ModeSpec("a", 2), ModeSpec("b", 2))
    ket = np.array([1, 0, 0, 1]) / np.sqrt(2)
    rho = ket_state(space, ket)
    red = partial_trace(rho, ["a"])
    assert np.allclose(red.matrix, np.eye(2) / 2)


def test_partial_trace_preserves_trace_and_hermiticity():
    rng = np.random.default_rng(11)
    space = (ModeSpec("a", 2), ModeSpec("b", 3), ModeSpec("c", 2))
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    m = m @ m.conj().T
    rho = DensityMatrix(space, m / np.trace(m))
    for keep in (["a"], ["b"], ["a", "c"], ["a", "b", "c"]):
        red = partial_trace(rho, keep)
        assert red.tr() == pytest.approx(1.0, abs=1e-9)
        assert np.max(np.abs(red.matrix - red.matrix.conj().T)) < 1e-10


def test_partial_trace_unknown_label():
    rho = vacuum_state((ModeSpec("a", 2), ModeSpec("b", 2)))
    with pytest.raises(LabelError):
        partial_trace(rho, ["nope"])


def test_density_matrix_validation():
    space = (ModeSpec("a", 2),)
    with pytest.raises(InvalidParameterError):
        DensityMatrix(space, np.diag([0.7, 0.7]))
    with pytest.raises(PositivityError):
        DensityMatrix(space, np.array([[0.5, 0.5], [-0.5, 0.5]]))
    with pytest.raises(PositivityError):
        DensityMatrix(space, np.diag([1.5, -0.5]))


def test_expand_embeds_by_label():
    space = (ModeSpec("q", 2), ModeSpec("m", 3))
    nb = expand(number(3, "m"), space)
    expected = np.kron(np.eye(2), np.diag([0, 1, 2]))
    assert np.allclose(nb.matrix, expected)


def test_mode_spec_rejects_dim_one():
    with pytest.raises(InvalidDimensionError):
        ModeSpec("x", 1)


def test_creation_is_adjoint():
    c = creation(4)
    b = annihilation(4)
    assert np.allclose(c.matrix, b.matrix.conj().T)
