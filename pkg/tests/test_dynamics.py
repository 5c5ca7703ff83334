import numpy as np
import pytest
import scipy.sparse as sp

from catlgt import dynamics, fock, model

U = 0.03


def params_for(beta0, g3, **kw):
    return model.LinkParams(U=U, G=2 * U * beta0**2, g3=g3, **kw)


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (m + m.conj().T) / 2


def random_state(dim, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return psi / np.linalg.norm(psi)


def test_zero_hamiltonian_constant_state():
    psi0 = random_state(8, 1)
    plan = dynamics.EvolutionPlan(h=np.zeros((8, 8), dtype=complex), t_grid=np.linspace(0, 5, 20))
    res = dynamics.evolve(plan, psi0)
    assert np.max(np.abs(res.snapshots - psi0)) < 1e-14


def test_eigenstate_phase_only():
    h = random_hermitian(10, 2)
    w, v = np.linalg.eigh(h)
    psi0 = v[:, 3]
    plan = dynamics.EvolutionPlan(h=h, t_grid=np.linspace(0, 3, 15))
    proj = np.outer(psi0, psi0.conj())
    res = dynamics.evolve(plan, psi0, observables={"p": proj})
    assert np.max(np.abs(res.channels["p"] - 1.0)) < 1e-12


def test_unitarity_and_energy_conservation():
    h = random_hermitian(40, 3)
    psi0 = random_state(40, 4)
    plan = dynamics.EvolutionPlan(h=h, t_grid=np.linspace(0, 10, 50))
    res = dynamics.evolve(plan, psi0, observables={"h": h})
    assert res.norm_drift < 1e-10
    assert np.max(np.abs(res.channels["h"] - res.channels["h"][0])) < 1e-10


def test_time_reversal():
    h = random_hermitian(30, 5)
    psi0 = random_state(30, 6)
    t = 4.0
    forward = dynamics.eigen_propagate(h, psi0, [0.0, t])[-1]
    back = dynamics.eigen_propagate(h, forward, [0.0, -t])[-1]
    assert abs(abs(np.vdot(psi0, back)) ** 2 - 1.0) < 1e-12


def test_krylov_matches_eigen_on_random_hermitian():
    h = random_hermitian(200, 7)
    psi0 = random_state(200, 8)
    t_grid = np.linspace(0, 2.0, 9)
    exact = dynamics.eigen_propagate(h, psi0, t_grid)
    krylov = dynamics.krylov_propagate(h, psi0, t_grid, tolerance=1e-12)
    assert np.max(np.abs(exact - krylov)) < 1e-9


def test_krylov_sparse_hamiltonian():
    dense = random_hermitian(60, 9)
    dense[np.abs(dense) < 1.2] = 0.0
    dense = (dense + dense.conj().T) / 2
    sparse = sp.csr_matrix(dense)
    psi0 = random_state(60, 10)
    t_grid = np.linspace(0, 1.5, 6)
    exact = dynamics.eigen_propagate(dense, psi0, t_grid)
    krylov = dynamics.krylov_propagate(sparse, psi0, t_grid, tolerance=1e-12)
    assert np.max(np.abs(exact - krylov)) < 1e-9


def test_evolve_rejects_non_hermitian():
    h = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(ValueError, match="Hermitian"):
        dynamics.evolve(
            dynamics.EvolutionPlan(h=h, t_grid=np.array([0.0, 1.0])),
            np.array([1.0, 0.0], dtype=complex),
        )


def test_evolve_rejects_unnormalized_state():
    h = np.eye(2, dtype=complex)
    with pytest.raises(ValueError, match="norm"):
        dynamics.evolve(
            dynamics.EvolutionPlan(h=h, t_grid=np.array([0.0, 1.0])),
            np.array([1.0, 1.0], dtype=complex),
        )


def test_plan_validation():
    with pytest.raises(ValueError):
        dynamics.EvolutionPlan(h=np.eye(2), t_grid=np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        dynamics.EvolutionPlan(h=np.eye(2), t_grid=np.array([0.0, 1.0]), method="magic")


def test_rabi_fit_on_synthetic_curve():
    omega = 0.37
    t = np.linspace(0, 1.2 * 2 * np.pi / omega, 600)
    population = 0.5 * (1 + np.cos(omega * t))
    fitted = dynamics.rabi_fit_first_minimum(t, population)
    assert abs(fitted - omega) / omega < 1e-4


def test_rabi_fit_requires_minimum():
    t = np.linspace(0, 1, 50)
    with pytest.raises(ValueError, match="minimum"):
        dynamics.rabi_fit_first_minimum(t, np.ones_like(t))


def test_fourier_constant_series():
    t = np.linspace(0, 10, 64)
    omega, mag = dynamics.fourier_channels(t, np.full(64, 2.5))
    assert omega[0] == 0.0
    assert mag[0] > 0
    assert np.max(mag[1:]) < 1e-10 * mag[0]


def test_fourier_single_line():
    n = 256
    t = np.linspace(0, 2 * np.pi * 8, n, endpoint=False)
    omega_0 = 3.0
    omega, mag = dynamics.fourier_channels(t, np.sin(omega_0 * t))
    peak = omega[np.argmax(mag[1:]) + 1]
    assert abs(peak - omega_0) < omega[1] - omega[0]


def test_dc_baseline_conventions():
    t = np.linspace(0, 7.0, 200)
    assert dynamics.dc_baseline(t, np.zeros_like(t)) == 0.0
    # zero-mean sinusoid over integer periods: leakage-bounded
    t2 = np.linspace(0, 2 * np.pi * 5, 501)
    assert dynamics.dc_baseline(t2, np.sin(t2)) < 0.05
    # constant series: |mean| * window
    assert dynamics.dc_baseline(t, np.full_like(t, 0.3)) == pytest.approx(0.3 * 7.0)


def test_projected_model_keeps_gauss_law_exact():
    projected = model.project_hamiltonian(params_for(2.0, 0.0048))
    psi0 = projected.product_state(1, "+", 0)
    g1, g2 = projected.generators
    plan = dynamics.EvolutionPlan(h=projected.h, t_grid=np.linspace(0, 500.0, 120))
    res = dynamics.evolve(
        plan,
        psi0,
        observables={"g1": g1, "g1_sq": g1 @ g1, "g2": g2, "g2_sq": g2 @ g2},
    )
    for gen in ("g1", "g2"):
        delta = dynamics.gauss_diagnostics(res, gen)["delta"]
        assert np.max(np.abs(delta)) < 1e-10


def test_fig2_static_charge():
    p = params_for(2.0, 0.48 / 100)
    om_p, _ = model.rabi_frequencies(p)
    res, _ = dynamics.link_sector_run(p, np.linspace(0, 2 * np.pi / om_p, 300))
    assert np.max(np.abs(res.channels["g1"] + 1.0)) < 1e-3


def test_projected_model_tracks_full_dynamics():
    # population curves from H_C and from the full H agree pointwise to 1e-2
    # over one Rabi period at the moderate-coupling working point
    p = params_for(2.0, 0.48 / 100, matter_dim=2)
    om_p, _ = model.rabi_frequencies(p)
    t = np.linspace(0, 2 * np.pi / om_p, 200)
    res_full, _ = dynamics.link_sector_run(p, t)

    projected = model.project_hamiltonian(p)
    psi0 = projected.product_state(1, "+", 0)
    n1_op = fock.tensor(
        [fock.number_op(2), np.eye(2, dtype=complex), np.eye(2, dtype=complex)]
    )
    res_proj = dynamics.evolve(
        dynamics.EvolutionPlan(h=projected.h, t_grid=t),
        psi0,
        observables={"n1": n1_op},
    )
    dev = np.max(np.abs(res_full.channels["n1"] - res_proj.channels["n1"]))
    assert dev < 1e-2


def test_gauss_division_guard():
    res = dynamics.EvolutionResult(
        times=np.array([0.0, 1.0]),
        snapshots=np.zeros((2, 2), dtype=complex),
        channels={"g1": np.array([0.0, 0.5]), "g1_sq": np.array([0.2, 0.3])},
        norm_drift=0.0,
        energy_drift=0.0,
    )
    diag = dynamics.gauss_diagnostics(res, "g1")
    assert np.isnan(diag["relative_deviation"][0])
    assert np.isfinite(diag["relative_deviation"][1])


def test_ipr_in_cat_plane():
    link = model.build_link(params_for(2.0, 1e-6, matter_dim=2))
    sector = link.sector
    p_sec = sector.restrict(link.gauge.projector_full)
    psi0 = sector.restrict_state(link.product_state(1, "+", 0))
    assert dynamics.ipr_subspace_weight(psi0, p_sec) == pytest.approx(1.0, abs=1e-9)
    _, evecs = np.linalg.eigh(sector.h)
    assert dynamics.ipr_eigenbasis(evecs, psi0, p_sec) == pytest.approx(1.0, abs=1e-6)


def test_ipr_orthogonal_state():
    link = model.build_link(params_for(2.0, 1e-3, matter_dim=2))
    sector = link.sector
    p_sec = sector.restrict(link.gauge.projector_full)
    # build a gauge-mode vector orthogonal to the cat plane
    dg = link.layout.dims[1]
    seed = fock.fock_state(dg, 2)
    ortho = seed - link.gauge.projector @ seed
    ortho /= np.linalg.norm(ortho)
    psi = sector.restrict_state(link.product_state(1, ortho, 0))
    assert dynamics.ipr_subspace_weight(psi, p_sec) < 1e-12


def test_ipr_monotone_on_canonical_family():
    vals = []
    for ratio in (0.01, 0.1, 0.5, 1.0):
        p = params_for(2.0, ratio * 0.48, matter_dim=2)
        vals.append(dynamics.cat_iprs(p)["eigenbasis_+"])
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[0] > 0.99


def test_chain_run_small():
    chain_params = model.ChainParams(
        n_sites=3, link=params_for(2.0, 0.48 / 100), m_field=4
    )
    om_p, _ = model.rabi_frequencies(chain_params.link)
    res, _ = dynamics.chain_run(chain_params, np.linspace(0, 3 * np.pi / om_p, 200))
    assert np.max(np.abs(res.channels["n_total"] - 1.0)) < 1e-8
    assert res.channels["n3"].max() > 0.5
    assert res.channels["sigma_z_12"].min() < -0.5  # parity flips along the path


def test_baseline_map_smoke():
    grid = dynamics.baseline_map(
        U, [0.5, 2.0], [0.001, 0.05], periods=6, samples=512, workers=1
    )
    assert grid.values.shape == (2, 2)
    assert grid.normalized.max() == pytest.approx(1.0)
    assert np.all(grid.values >= 0)


def test_baseline_map_window_guard():
    with pytest.raises(ValueError, match="5 slow periods"):
        dynamics.baseline_map(U, [1.0], [0.01], periods=3, samples=128, workers=1)


def test_ipr_map_smoke():
    plus, minus, min_w = dynamics.ipr_map(U, [1.0, 2.0], [0.001, 0.1], workers=1)
    for grid in (plus, minus, min_w):
        assert grid.values.shape == (2, 2)
        assert np.all(grid.values >= 0) and np.all(grid.values <= 1)
    assert plus.values[1, 0] > 0.99  # weak coupling, large cat
