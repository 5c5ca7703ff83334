import math
import warnings

import numpy as np
import pytest

from catlgt import fock, model, wigner


def origin_value(rho):
    return wigner.wigner_at_points(rho, np.array([0.0 + 0.0j]))[0]


def brute_force_wigner(rho, alpha, eval_dim=200):
    """Oracle: literal displaced-parity sandwich at a large shared cutoff."""
    d = rho.shape[0]
    padded = np.zeros((eval_dim, eval_dim), dtype=complex)
    padded[:d, :d] = rho
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        disp = fock.displacement(eval_dim, alpha)
    pi_op = fock.parity_op(eval_dim)
    return (2 / math.pi) * np.trace(padded @ disp @ pi_op @ disp.conj().T).real


def test_vacuum_origin_and_profile():
    rho = fock.density_matrix(fock.fock_state(16, 0))
    assert origin_value(rho) == pytest.approx(2 / math.pi, abs=1e-12)
    pts = np.array([0.5 + 0.0j, 1.0 + 0.5j, -1.5 + 1.0j])
    vals = wigner.wigner_at_points(rho, pts)
    analytic = (2 / math.pi) * np.exp(-2 * np.abs(pts) ** 2)
    assert np.max(np.abs(vals - analytic)) < 1e-10


def test_vacuum_normalization():
    rho = fock.density_matrix(fock.fock_state(8, 0))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        field = wigner.wigner(rho, wigner.default_grid(0.0, 128))
    assert abs(field.integral() - 1.0) < 1e-3


def test_odd_cat_origin():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        rho = fock.density_matrix(fock.cat_state(32, 2.0, "-"))
        assert origin_value(rho) == pytest.approx(-2 / math.pi, abs=1e-10)


def test_cat_normalization():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        rho = fock.density_matrix(fock.cat_state(32, 2.0, "+"))
        field = wigner.wigner(rho, wigner.default_grid(2.0, 128))
    assert abs(field.integral() - 1.0) < 1e-3


def test_parity_identity_random_states():
    rng = np.random.default_rng(17)
    for seed in range(4):
        psi = rng.normal(size=20) + 1j * rng.normal(size=20)
        psi /= np.linalg.norm(psi)
        rho = fock.density_matrix(psi)
        want = (2 / math.pi) * wigner.parity_expectation(rho)
        assert origin_value(rho) == pytest.approx(want, abs=1e-10)


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(23)
    psi = rng.normal(size=12) + 1j * rng.normal(size=12)
    psi /= np.linalg.norm(psi)
    rho = fock.density_matrix(psi)
    for alpha in (0.4 + 0.3j, -1.2 + 0.8j, 2.0 - 1.5j):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", fock.CutoffWarning)
            val = wigner.wigner_at_points(rho, np.array([alpha]))[0]
        assert val == pytest.approx(brute_force_wigner(rho, alpha), abs=1e-10)


def test_reflection_symmetry_real_amplitudes():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        rho = fock.density_matrix(fock.cat_state(32, 1.5, "+"))
        pts_up = np.array([0.7 + 0.9j, 1.5 + 0.2j, 0.1 + 1.4j])
        up = wigner.wigner_at_points(rho, pts_up)
        down = wigner.wigner_at_points(rho, pts_up.conj())
    assert np.max(np.abs(up - down)) < 1e-10


def test_wigner_field_is_real_shape():
    rho = fock.density_matrix(fock.fock_state(6, 1))
    grid = wigner.default_grid(0.0, 48)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        field = wigner.wigner(rho, grid)
    assert field.w.shape == (48, 48)
    assert field.w.dtype.kind == "f"


def test_marginal_wigner_matches_factor():
    dims = (2, 10)
    layout = fock.ProductLayout(
        (fock.HilbertSpace(2, "a"), fock.HilbertSpace(10, "b"))
    )
    gauge = fock.coherent_state(10, 0.8)
    psi = layout.product_state([fock.fock_state(2, 1), gauge])
    grid = wigner.default_grid(0.8, 32)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        marg = wigner.marginal_wigner(psi, dims, 1, grid)
        direct = wigner.wigner(fock.density_matrix(gauge), grid)
    assert np.max(np.abs(marg.w - direct.w)) < 1e-10


def test_angular_variance_detects_symmetry():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fock.CutoffWarning)
        fockstate = fock.density_matrix(fock.fock_state(24, 2))
        _, var_fock = wigner.angular_variance(fockstate, r_max=3.0)
        cat = fock.density_matrix(fock.cat_state(32, 1.5, "+"))
        _, var_cat = wigner.angular_variance(cat, r_max=3.0)
    assert var_fock.max() < 1e-12  # rotationally symmetric
    assert var_cat.max() > 1e-3


def test_grid_resolution_floor():
    with pytest.raises(ValueError, match="at least 32"):
        wigner.default_grid(0.0, 16)


def test_state_cutoff_warning():
    rho = fock.density_matrix(fock.fock_state(6, 0))
    with pytest.warns(fock.CutoffWarning, match="state support"):
        wigner.wigner_at_points(rho, np.array([3.0 + 0.0j]))
