import math

import numpy as np
import pytest

from catlgt import fock


def test_destroy_matrix_dim3():
    a = fock.destroy(3)
    expected = np.array([[0, 1, 0], [0, 0, math.sqrt(2)], [0, 0, 0]], dtype=complex)
    assert np.allclose(a, expected, atol=1e-15)


def test_create_is_exact_adjoint():
    for dim in (2, 5, 17):
        assert np.array_equal(fock.create(dim), fock.destroy(dim).conj().T)


def test_truncated_commutator_diagonal():
    dim = 6
    a = fock.destroy(dim)
    comm = a @ fock.create(dim) - fock.create(dim) @ a
    expected = np.ones(dim)
    expected[-1] = 1 - dim
    assert np.allclose(np.diag(comm).real, expected, atol=1e-14)
    assert np.allclose(comm - np.diag(np.diag(comm)), 0)


def test_destroy_lowers_fock_state():
    psi = fock.destroy(2) @ fock.fock_state(2, 1)
    assert np.allclose(psi, fock.fock_state(2, 0))


def test_displacement_zero_is_identity():
    assert np.allclose(fock.displacement(12, 0.0), np.eye(12))


def test_displacement_unitary():
    d = fock.displacement(40, 1.3 - 0.4j)
    assert np.max(np.abs(d @ d.conj().T - np.eye(40))) < 1e-12


def test_displacement_vacuum_overlap_gaussian():
    # <0|D(2 beta0)|0> = exp(-2 beta0^2); beta0 = 1 gives exp(-2)
    for beta0 in (0.5, 1.0):
        d = fock.displacement(40, 2 * beta0)
        assert abs(d[0, 0] - math.exp(-2 * beta0**2)) < 1e-12


def test_displacement_moves_vacuum_to_coherent():
    beta = 1.2
    psi = fock.displacement(40, beta) @ fock.fock_state(40, 0)
    n_mean = np.vdot(psi, fock.number_op(40) @ psi).real
    assert abs(n_mean - beta**2) < 1e-10


def test_displacement_cutoff_warning():
    with pytest.warns(fock.CutoffWarning):
        fock.displacement(8, 2.0)


def test_coherent_zero_is_vacuum():
    assert np.allclose(fock.coherent_state(10, 0.0), fock.fock_state(10, 0))


def test_coherent_poisson_mean():
    psi = fock.coherent_state(40, 2.0)
    n_mean = np.vdot(psi, fock.number_op(40) @ psi).real
    assert abs(n_mean - 4.0) < 1e-6


def test_coherent_eigenrelation():
    psi = fock.coherent_state(40, 2.0)
    assert np.linalg.norm(fock.destroy(40) @ psi - 2.0 * psi) < 1e-6


def test_coherent_cutoff_warning():
    with pytest.warns(fock.CutoffWarning):
        fock.coherent_state(6, 2.0)


def test_cat_zero_amplitude():
    assert np.allclose(fock.cat_state(10, 0.0, "+"), fock.fock_state(10, 0))
    with pytest.raises(ValueError, match="odd cat undefined"):
        fock.cat_state(10, 0.0, "-")


def test_cat_parity_sectors_exact():
    plus = fock.cat_state(40, 2.0, "+")
    minus = fock.cat_state(40, 2.0, "-")
    n = np.arange(40)
    assert np.all(plus[n % 2 == 1] == 0)
    assert np.all(minus[n % 2 == 0] == 0)
    assert abs(np.vdot(plus, minus)) < 1e-15
    assert abs(np.linalg.norm(plus) - 1) < 1e-12
    assert abs(np.linalg.norm(minus) - 1) < 1e-12


def test_cat_parity_expectation():
    pi_op = fock.parity_op(40)
    plus = fock.cat_state(40, 2.0, "+")
    minus = fock.cat_state(40, 2.0, "-")
    assert abs(np.vdot(plus, pi_op @ plus).real - 1.0) < 1e-12
    assert abs(np.vdot(minus, pi_op @ minus).real + 1.0) < 1e-12


def test_parity_matrix():
    assert np.allclose(fock.parity_op(4), np.diag([1, -1, 1, -1]))
    pi_op = fock.parity_op(9)
    assert np.allclose(pi_op @ pi_op, np.eye(9))


def test_coherent_parity_identity():
    # <beta|Pi|beta> = exp(-2 |beta|^2)
    psi = fock.coherent_state(40, 1.0)
    val = np.vdot(psi, fock.parity_op(40) @ psi).real
    assert abs(val - math.exp(-2)) < 1e-10


def test_embed_identity():
    layout = fock.ProductLayout(
        (fock.HilbertSpace(3, "a"), fock.HilbertSpace(4, "b"))
    )
    assert np.allclose(layout.embed(np.eye(4, dtype=complex), 1), np.eye(12))


def test_tensor_acts_factorwise():
    a_op = fock.destroy(3)
    b_op = fock.number_op(4)
    layout = fock.ProductLayout(
        (fock.HilbertSpace(3, "a"), fock.HilbertSpace(4, "b"))
    )
    u = (fock.fock_state(3, 0) + 0.5 * fock.fock_state(3, 2))
    u /= np.linalg.norm(u)
    v = fock.fock_state(4, 2)
    lhs = fock.tensor([a_op, b_op]) @ layout.product_state([u, v])
    rhs = layout.product_state([a_op @ u, b_op @ v])
    assert np.allclose(lhs, rhs, atol=1e-14)


def test_layout_dims_multiply():
    layout = fock.ProductLayout(
        (
            fock.HilbertSpace(10, "a1"),
            fock.HilbertSpace(30, "b"),
            fock.HilbertSpace(10, "a2"),
        )
    )
    assert layout.dim == 3000


def test_tensor_sparse_above_threshold():
    import scipy.sparse as sp

    layout = fock.ProductLayout(
        (
            fock.HilbertSpace(25, "a1"),
            fock.HilbertSpace(25, "b"),
            fock.HilbertSpace(25, "a2"),
        )
    )
    op = layout.embed(fock.number_op(25), 1)
    assert sp.issparse(op)
    # matvec agrees with the factorized action
    u = fock.fock_state(25, 1)
    v = fock.fock_state(25, 7)
    w = fock.fock_state(25, 0)
    state = layout.product_state([u, v, w])
    assert np.allclose(op @ state, 7 * state)


def test_tensor_dimension_mismatch():
    layout = fock.ProductLayout((fock.HilbertSpace(3, "a"),))
    with pytest.raises(ValueError):
        layout.embed(np.eye(4, dtype=complex), 0)


def test_partial_trace_product_state_pure():
    layout = fock.ProductLayout(
        (fock.HilbertSpace(3, "a"), fock.HilbertSpace(5, "b"))
    )
    psi = layout.product_state(
        [(fock.fock_state(3, 0) + fock.fock_state(3, 2)) / math.sqrt(2), fock.fock_state(5, 2)]
    )
    rho = fock.density_matrix(psi)
    red = fock.partial_trace(rho, layout.dims, 0)
    purity = np.trace(red @ red).real
    assert abs(purity - 1.0) < 1e-12


def test_partial_trace_bell_state():
    layout = fock.ProductLayout(
        (fock.HilbertSpace(2, "a"), fock.HilbertSpace(2, "b"))
    )
    psi = (
        layout.product_state([fock.fock_state(2, 0), fock.fock_state(2, 0)])
        + layout.product_state([fock.fock_state(2, 1), fock.fock_state(2, 1)])
    ) / math.sqrt(2)
    red = fock.partial_trace(fock.density_matrix(psi), layout.dims, 1)
    assert np.allclose(red, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_random_states_valid():
    rng = np.random.default_rng(11)
    dims = (3, 4, 2)
    for _ in range(5):
        psi = rng.normal(size=24) + 1j * rng.normal(size=24)
        psi /= np.linalg.norm(psi)
        for keep in range(3):
            red = fock.partial_trace(fock.density_matrix(psi), dims, keep)
            fock.check_density_matrix(red, tol=1e-9)


def test_partial_trace_bad_site():
    rho = np.eye(6, dtype=complex) / 6
    with pytest.raises(ValueError):
        fock.partial_trace(rho, (2, 3), 2)


def test_franck_condon_gaussian_decay():
    for beta0 in (0.5, 1.0, 2.0):
        val = fock.franck_condon(0, 0, -beta0, beta0)
        assert abs(abs(val) - math.exp(-2 * beta0**2)) < 1e-8


def test_franck_condon_identity():
    for n in (0, 2, 5):
        val = fock.franck_condon(n, n, 0.7, 0.7)
        assert abs(val - 1.0) < 1e-10


def test_franck_condon_exponential_ratio():
    f1 = fock.franck_condon(0, 0, -1.0, 1.0)
    f2 = fock.franck_condon(0, 0, -2.0, 2.0)
    assert abs(abs(f2) / abs(f1) - math.exp(-6)) < 1e-9


def test_franck_condon_matches_direct_evaluation():
    import warnings

    n, m, alpha, beta = 2, 3, 0.8, -0.5
    val = fock.franck_condon(n, m, alpha, beta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        big = 256
        direct = (
            fock.displacement(big, alpha) @ fock.displacement(big, beta).conj().T
        )[n, m]
    assert abs(val - direct) < 1e-8


def test_franck_condon_nonconvergence():
    with pytest.raises(fock.ConvergenceError):
        fock.franck_condon(0, 0, -6.0, 6.0, dim=16, max_dim=32, rtol=1e-30)


def test_hilbert_space_validation():
    with pytest.raises(ValueError):
        fock.HilbertSpace(1, "x")
    with pytest.raises(ValueError):
        fock.HilbertSpace(4, "x", "weird")
