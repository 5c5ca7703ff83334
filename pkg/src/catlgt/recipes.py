"""Named figure recipes: deterministic CSV artifacts plus headline metrics.

Each recipe consumes an ExperimentConfig, writes its data files under the
output directory and returns the numbers a reader would quote (fitted Rabi
frequencies, corner statistics, extremal IPRs).
"""

from __future__ import annotations

import warnings
from pathlib import Path

import numpy as np

from . import csvio, dynamics, fock, model, spectra, wigner
from .config import ExperimentConfig, parse_grid
from .fock import CutoffWarning

FIG4A_G3_FAMILY = (0.01, 0.1, 0.5, 1.0)  # in units of omega_gap
FIG3B_BETA0S = (2.0, 1.0, 0.18)
S2_G3_FAMILY = (0.0, 0.05, 0.25, 1.0)    # in units of omega_gap


def _meta(config: ExperimentConfig, recipe: str) -> dict:
    return {"recipe": recipe, "config_hash": config.config_hash()}


def _sector_run_with_embedding(params, t_grid, initial_parity="+"):
    """Sector evolution plus full-space snapshots for phase-space marginals."""
    link = model.build_link(params)
    sector = link.sector
    psi0 = sector.restrict_state(link.product_state(1, initial_parity, 0))
    obs = dynamics.link_sector_observables(link)
    targets = {}
    if params.beta0 > 0:
        swapped = "-" if initial_parity == "+" else "+"
        targets["fid_swap"] = sector.restrict_state(link.product_state(0, swapped, 1))
    plan = dynamics.EvolutionPlan(h=sector.h, t_grid=t_grid)
    result = dynamics.evolve(plan, psi0, observables=obs, fidelity_targets=targets)
    return result, link


def fig2(config: ExperimentConfig, out: Path) -> dict:
    params = config.link_params()
    omega_plus, _ = model.rabi_frequencies(params)
    samples = config.get_int("run", "samples")
    periods = config.get_float("run", "periods")
    t_grid = np.linspace(0.0, periods * 2 * np.pi / omega_plus, samples)
    result, link = _sector_run_with_embedding(params, t_grid)
    diag = dynamics.gauss_diagnostics(result, "g1")
    channels = dict(result.channels)
    channels["delta_g1"] = diag["delta"]
    csvio.write_timeseries(out / "fig2_timeseries.csv", result.times, channels, _meta(config, "fig2"))

    resolution = config.get_int("run", "resolution")
    grid = wigner.default_grid(params.beta0, resolution)
    matter_grid = wigner.default_grid(1.0, resolution)
    t_swap = np.pi / omega_plus
    i_swap = int(np.argmin(np.abs(result.times - t_swap)))
    full_dim = link.layout.dim
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CutoffWarning)
        for tag, time_index in (("t0", 0), ("tswap", i_swap)):
            psi_full = link.sector.embed_state(result.snapshots[time_index], full_dim)
            fields = []
            for site, site_grid in ((0, matter_grid), (1, grid), (2, matter_grid)):
                fields.append((site, wigner.marginal_wigner(psi_full, link.layout.dims, site, site_grid)))
            meta = dict(
                _meta(config, "fig2"),
                resolution=resolution,
                beta0=csvio.fmt(params.beta0),
                snapshot_time=csvio.fmt(float(result.times[time_index])),
            )
            csvio.write_wigner(out / f"fig2_wigner_{tag}.csv", fields, meta)

    fitted = dynamics.rabi_fit_first_minimum(result.times, result.channels["n1"])
    return {
        "omega_r_plus": omega_plus,
        "fitted_exchange_frequency": fitted,
        "fit_relative_error": abs(fitted - omega_plus) / omega_plus,
        "swap_fidelity": float(result.channels["fid_swap"][i_swap]),
        "g1_max_deviation": float(np.max(np.abs(result.channels["g1"] + 1.0))),
    }


def fig3a(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    g3 = 1e-3
    beta0_grid = np.concatenate(([0.05], np.linspace(0.1, 2.5, 25)))
    rows = []
    worst = 0.0
    for b0 in beta0_grid:
        params = model.LinkParams(
            U=base.U, G=2 * base.U * b0**2, g3=g3, matter_dim=2
        )
        om_p, om_m = model.rabi_frequencies(params)
        el_p = spectra.matrix_element(params, (1, "+", 0), (0, "-", 1))
        el_m = spectra.matrix_element(params, (1, "-", 0), (0, "+", 1))
        rows.append(
            (
                csvio.fmt(b0),
                csvio.fmt(om_p / 2),
                csvio.fmt(om_m / 2),
                csvio.fmt(abs(el_p.full)),
                csvio.fmt(abs(el_m.full)),
                csvio.fmt(abs(el_p.projected)),
                csvio.fmt(abs(el_m.projected)),
            )
        )
        worst = max(
            worst,
            abs(2 * abs(el_p.full) - om_p) / om_p,
            abs(2 * abs(el_m.full) - om_m) / om_m,
        )
    csvio.write_table(
        out / "fig3a_matrix_elements.csv",
        [
            "beta0",
            "omega_plus_half",
            "omega_minus_half",
            "full_plus_abs",
            "full_minus_abs",
            "projected_plus_abs",
            "projected_minus_abs",
        ],
        rows,
        _meta(config, "fig3a"),
        "matrix-elements-v1",
    )
    return {"g3": g3, "worst_relative_error_vs_closed_form": worst}


def fig3b(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    resolution = config.get_int("run", "resolution")
    scores = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CutoffWarning)
        for b0 in FIG3B_BETA0S:
            params = model.LinkParams(U=base.U, G=2 * base.U * b0**2, g3=4 * base.U * b0**2 / 100)
            omega_plus, _ = model.rabi_frequencies(params)
            t_grid = np.array([0.0, np.pi / omega_plus])
            result, link = _sector_run_with_embedding(params, t_grid)
            psi_full = link.sector.embed_state(result.snapshots[-1], link.layout.dim)
            rho_b = fock.partial_trace(
                fock.density_matrix(psi_full), link.layout.dims, 1
            )
            field = wigner.wigner(rho_b, wigner.default_grid(b0, resolution))
            tag = csvio.fmt(b0).replace(".", "p")
            meta = dict(
                _meta(config, "fig3b"),
                resolution=resolution,
                beta0=csvio.fmt(b0),
                snapshot_time=csvio.fmt(float(t_grid[-1])),
            )
            csvio.write_wigner(out / f"fig3b_wigner_beta0_{tag}.csv", [(1, field)], meta)
            scores[f"angular_variance_beta0_{b0}"] = wigner.symmetry_breaking_score(
                rho_b, r_max=b0 + 2
            )
    return scores


def fig4a(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    beta0 = base.beta0
    omega_gap = base.omega_gap
    samples = config.get_int("run", "samples")
    headline = {}
    for ratio in FIG4A_G3_FAMILY:
        params = base.replace(
            g3=ratio * omega_gap, omega_matter=(omega_gap, omega_gap), matter_dim=2
        )
        omega_plus, _ = model.rabi_frequencies(params)
        t_grid = np.linspace(0.0, 6 * np.pi / omega_plus, samples)
        result, _ = dynamics.link_sector_run(params, t_grid)
        tag = csvio.fmt(ratio).replace(".", "p")
        csvio.write_timeseries(
            out / f"fig4a_sigma_z_ratio_{tag}.csv",
            result.times,
            {"sigma_z": result.channels["sigma_z"]},
            _meta(config, "fig4a"),
        )
        second_half = result.channels["sigma_z"][samples // 2 :]
        headline[f"max_abs_sigma_z_ratio_{ratio}"] = float(np.max(np.abs(second_half)))
    return headline


def fig4b(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params().replace(matter_dim=2)
    g3_grid = parse_grid(config.get("sweep", "g3"))
    points = spectra.spectrum_vs_g3(
        base.replace(omega_matter=(base.omega_gap, base.omega_gap)), g3_grid
    )
    csvio.write_spectrum(out / "fig4b_spectrum.csv", points, _meta(config, "fig4b"))
    weight_sums = [float(np.sum(pt.cat_weights)) for pt in points]
    return {
        "n_g3_points": len(points),
        "cat_weight_sum_min": min(weight_sums),
        "cat_weight_sum_max": max(weight_sums),
    }


def fig4cd(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    beta0s = parse_grid(config.get("sweep", "beta0"))
    g3s = parse_grid(config.get("sweep", "g3"))
    workers = config.get_int("sweep", "workers") or None
    plus, minus, min_w = dynamics.ipr_map(base.U, beta0s, g3s, workers=workers)
    meta = _meta(config, "fig4cd")
    csvio.write_map(out / "fig4d_ipr_plus.csv", plus, meta)
    csvio.write_map(out / "fig4d_ipr_minus.csv", minus, meta)
    csvio.write_map(out / "fig4d_min_cat_weight.csv", min_w, meta)

    # fig4(c): curves along g3 at the base cat amplitude
    rows = []
    for ratio in FIG4A_G3_FAMILY:
        params = model.LinkParams(
            U=base.U, G=base.G, g3=ratio * base.omega_gap, matter_dim=2
        )
        iprs = dynamics.cat_iprs(params)
        rows.append(
            (
                csvio.fmt(ratio * base.omega_gap),
                csvio.fmt(iprs["eigenbasis_+"]),
                csvio.fmt(iprs["eigenbasis_-"]),
                csvio.fmt(iprs["min_weight_+"]),
            )
        )
    csvio.write_table(
        out / "fig4c_ipr_curves.csv",
        ["g3", "ipr_plus", "ipr_minus", "min_cat_weight"],
        rows,
        meta,
        "ipr-curves-v1",
    )
    return {
        "ipr_plus_min": float(plus.values.min()),
        "ipr_plus_max": float(plus.values.max()),
        "min_cat_weight_min": float(min_w.values.min()),
    }


def fig4e(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    beta0s = parse_grid(config.get("sweep", "beta0"))
    g3s = parse_grid(config.get("sweep", "g3"))
    workers = config.get_int("sweep", "workers") or None
    periods = config.get_int("sweep", "periods")
    samples = config.get_int("sweep", "samples")
    grid = dynamics.baseline_map(
        base.U, beta0s, g3s, periods=periods, samples=samples, workers=workers
    )
    meta = _meta(config, "fig4e")
    csvio.write_map(out / "fig4e_baseline_raw.csv", grid, meta, normalized=False)
    csvio.write_map(out / "fig4e_baseline_normalized.csv", grid, meta, normalized=True)

    # mixing-threshold overlay beta0 = g3 / 2U
    rows = [
        (csvio.fmt(g3 / (2 * base.U)), csvio.fmt(g3)) for g3 in g3s
    ]
    csvio.write_table(
        out / "fig4e_boundary_curve.csv",
        ["beta0", "g3"],
        rows,
        meta,
        "boundary-v1",
    )
    nm = grid.normalized
    good = [
        nm[i, j]
        for i, b0 in enumerate(beta0s)
        for j, g3 in enumerate(g3s)
        if b0 >= 2 and g3 <= 4 * base.U * b0**2 / 100
    ]
    bad = [
        nm[i, j]
        for i, b0 in enumerate(beta0s)
        for j, g3 in enumerate(g3s)
        if b0 <= 0.5 and g3 >= 4 * base.U * b0**2 / 2
    ]
    return {
        "grid_points": int(nm.size),
        "good_corner_max": float(max(good)) if good else None,
        "bad_corner_max": float(max(bad)) if bad else None,
    }


def fig5(config: ExperimentConfig, out: Path) -> dict:
    chain_params = config.chain_params()
    system = model.build_chain(chain_params)
    omega_plus, _ = model.rabi_frequencies(chain_params.link)
    samples = config.get_int("run", "samples")
    t_grid = np.linspace(0.0, 4.8 * np.pi / omega_plus, samples)
    result, _ = dynamics.chain_run(system, t_grid)
    diag = dynamics.gauss_diagnostics(result, "g2")
    channels = dict(result.channels)
    channels["delta_g2"] = diag["delta"]
    channels["g2_relative_deviation"] = diag["relative_deviation"]
    csvio.write_timeseries(out / "fig5_timeseries.csv", result.times, channels, _meta(config, "fig5"))
    return {
        "sector_dim": chain_params.sector_dim,
        "max_n3": float(result.channels["n3"].max()),
        "g2_max_relative_deviation": float(np.nanmax(diag["relative_deviation"])),
        "matter_number_drift": float(
            np.max(np.abs(result.channels["n_total"] - result.channels["n_total"][0]))
        ),
    }


def s1(config: ExperimentConfig, out: Path) -> dict:
    base = config.link_params()
    b0 = 0.4
    params = model.LinkParams(
        U=base.U, G=2 * base.U * b0**2, g3=4 * base.U * b0**2 / 100
    )
    om_p, om_m = model.rabi_frequencies(params)
    samples = config.get_int("run", "samples")
    fitted = {}
    for parity, omega in (("+", om_p), ("-", om_m)):
        t_grid = np.linspace(0.0, 1.4 * 2 * np.pi / omega, samples)
        result, _ = dynamics.link_sector_run(params, t_grid, initial_parity=parity)
        tag = "plus" if parity == "+" else "minus"
        csvio.write_timeseries(
            out / f"s1_{tag}.csv",
            result.times,
            {
                "sigma_z": result.channels["sigma_z"],
                "n1": result.channels["n1"],
                "t_rescaled": result.times * omega / (2 * np.pi),
            },
            _meta(config, "s1"),
        )
        fitted[tag] = dynamics.rabi_fit_first_minimum(result.times, result.channels["n1"])
    ratio = fitted["plus"] / fitted["minus"]
    return {
        "omega_plus": om_p,
        "omega_minus": om_m,
        "fitted_ratio": ratio,
        "analytic_ratio": om_p / om_m,
        "ratio_relative_error": abs(ratio - om_p / om_m) / (om_p / om_m),
    }


def s2_hinton(config: ExperimentConfig, out: Path) -> dict:
    u = 1.0
    beta0 = 2.0
    params_base = model.LinkParams(U=u, G=2 * u * beta0**2, g3=0.0, matter_dim=2)
    omega_gap = params_base.omega_gap
    metrics = {}
    for k, ratio in enumerate(S2_G3_FAMILY):
        params = params_base.replace(g3=ratio * omega_gap)
        hin = spectra.hinton_elements(params, n_field=4, matter_dim=2)
        csvio.write_hinton(out / f"s2_hinton_{k}.csv", hin, _meta(config, "s2-hinton"))
        off_diag = hin.values - np.diag(np.diag(hin.values))
        metrics[f"offdiag_max_ratio_{ratio}"] = float(np.max(np.abs(off_diag)))
    return metrics


def plaquette(config: ExperimentConfig, out: Path) -> dict:
    g3 = config.link_params().g3
    mdl = model.plaquette_hamiltonians(g3, betas=(1.0, 1.0, 1.0))
    phis = np.linspace(0.0, np.pi, 25)
    rows = []
    for phi in phis:
        eigs = model.plaquette_momentum_spectrum(phi, mdl.g_triangle)
        rows.append(tuple(csvio.fmt(v) for v in (phi, *eigs)))
    csvio.write_table(
        out / "plaquette_momentum_spectrum.csv",
        ["phi", "eig0", "eig1", "eig2"],
        rows,
        _meta(config, "plaquette"),
        "plaquette-v1",
    )
    flux_0 = model.plaquette_flux_spectrum(mdl, (1, 1, 1))
    flux_pi = model.plaquette_flux_spectrum(mdl, (-1, 1, 1))
    return {
        "g_triangle": mdl.g_triangle,
        "phi0_spectrum": [float(v) for v in flux_0],
        "phi_pi_spectrum": [float(v) for v in flux_pi],
        "low_energy_gap": float(flux_pi[0] - flux_0[0]),
    }


RECIPES = {
    "fig2": fig2,
    "fig3a": fig3a,
    "fig3b": fig3b,
    "fig4a": fig4a,
    "fig4b": fig4b,
    "fig4cd": fig4cd,
    "fig4e": fig4e,
    "fig5": fig5,
    "s1": s1,
    "s2-hinton": s2_hinton,
    "plaquette": plaquette,
}


def run_recipe(name: str, config: ExperimentConfig, out_dir) -> dict:
    if name not in RECIPES:
        raise KeyError(f"unknown recipe {name!r}; available: {sorted(RECIPES)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    metrics = RECIPES[name](config, out)
    csvio.write_summary(out / "summary.json", name, config.config_hash(), metrics)
    return metrics
