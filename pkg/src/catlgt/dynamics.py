"""Exact unitary time evolution and time-domain diagnostics.

Propagation is eigendecomposition-based below DENSE_LIMIT (exact per sample
for time-independent Hamiltonians) and Lanczos-Krylov stepping above or for
sparse operators.  Diagnostics cover populations, flux, Gauss-law expectation
and variance, Fourier spectra, DC baselines and the two inverse-participation
variants, plus the (beta0, g3) sweep maps behind them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import fock, model

DENSE_LIMIT = 3000


class EvolutionError(RuntimeError):
    """Norm drift or Krylov convergence failure during propagation."""


@dataclass(frozen=True)
class EvolutionPlan:
    h: np.ndarray | sp.spmatrix
    t_grid: np.ndarray
    method: str = "auto"  # auto | eigen | krylov
    tolerance: float = 1e-10

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        if t.ndim != 1 or len(t) < 1:
            raise ValueError("t_grid must be a 1-D array of sample times")
        if np.any(np.diff(t) < 0):
            raise ValueError("t_grid must be ascending")
        if self.method not in ("auto", "eigen", "krylov"):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass
class EvolutionResult:
    times: np.ndarray
    snapshots: np.ndarray            # (T, dim) states
    channels: dict[str, np.ndarray]  # real series per named observable
    norm_drift: float
    energy_drift: float

    def channel(self, name: str) -> np.ndarray:
        return self.channels[name]


def eigen_propagate(h: np.ndarray, psi0: np.ndarray, times) -> np.ndarray:
    """|psi(t)> = V exp(-i diag(w) (t - t0)) V^dag |psi0>, batched over the grid.

    psi0 is the state at times[0], matching the Krylov path.
    """
    times = np.asarray(times, dtype=float)
    w, v = np.linalg.eigh(h)
    coef = v.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times - times[0], w))
    return (phases * coef) @ v.T


def krylov_propagate(
    h,
    psi0: np.ndarray,
    times,
    tolerance: float = 1e-10,
    max_krylov: int = 48,
) -> np.ndarray:
    """Lanczos short-time stepping between consecutive sample times.

    Full re-orthogonalization; each step subdivides until the standard
    a-posteriori estimate (last basis weight) is below tolerance.
    """
    times = np.asarray(times, dtype=float)
    dim = psi0.shape[0]
    snaps = np.empty((len(times), dim), dtype=complex)
    psi = psi0.astype(complex)
    t_now = float(times[0])
    snaps[0] = psi
    for k in range(1, len(times)):
        target = float(times[k])
        psi = _krylov_interval(h, psi, target - t_now, tolerance, max_krylov)
        t_now = target
        snaps[k] = psi
    return snaps


def _krylov_interval(h, psi, dt, tolerance, max_krylov):
    if dt == 0:
        return psi
    remaining = dt
    step = dt
    guard = 0
    while remaining > 0 or remaining < 0:
        sub = step if abs(step) <= abs(remaining) else remaining
        out, ok = _lanczos_step(h, psi, sub, tolerance, max_krylov)
        if ok:
            psi = out
            remaining -= sub
            if remaining == 0:
                break
        else:
            step = sub / 2
            guard += 1
            if guard > 60:
                raise EvolutionError("Krylov step size underflow")
    return psi


def _lanczos_step(h, psi, dt, tolerance, m_max):
    norm0 = np.linalg.norm(psi)
    q = psi / norm0
    basis = [q]
    alphas: list[float] = []
    betas: list[float] = []
    for j in range(m_max):
        w = h @ basis[-1]
        a = float(np.real(np.vdot(basis[-1], w)))
        w = w - a * basis[-1]
        if j > 0:
            w = w - betas[-1] * basis[-2]
        # full re-orthogonalization for numerical safety
        for b_vec in basis:
            w = w - np.vdot(b_vec, w) * b_vec
        alphas.append(a)
        b = float(np.linalg.norm(w))
        t_mat = np.diag(alphas).astype(complex)
        for i, bb in enumerate(betas):
            t_mat[i, i + 1] = bb
            t_mat[i + 1, i] = bb
        ew, ev = np.linalg.eigh(t_mat)
        small = ev @ (np.exp(-1j * ew * dt) * ev.conj().T[:, 0])
        err = abs(b * small[-1] * dt) if j > 0 else np.inf
        if b < 1e-14 or err < tolerance:
            out = np.zeros_like(psi)
            for c, b_vec in zip(small, basis):
                out = out + c * b_vec
            return norm0 * out, True
        if j < m_max - 1:
            betas.append(b)
            basis.append(w / b)
    return psi, False


def _operator_norm_estimate(h) -> float:
    if sp.issparse(h):
        return float(abs(h).sum(axis=1).max())  # induced-infinity bound
    return float(np.linalg.norm(h, 2)) if h.shape[0] <= 600 else float(
        np.linalg.norm(h, np.inf)
    )


def evolve(
    plan: EvolutionPlan,
    psi0: np.ndarray,
    observables: dict | None = None,
    fidelity_targets: dict | None = None,
) -> EvolutionResult:
    """Propagate psi0 over the plan's grid and record the requested channels."""
    norm_in = np.linalg.norm(psi0)
    if abs(norm_in - 1.0) > 1e-9:
        raise ValueError(f"initial state norm {norm_in} deviates from 1")
    h = plan.h
    fock.check_hermitian(h, 1e-12, "evolution Hamiltonian")
    dim = psi0.shape[0]
    method = plan.method
    if method == "auto":
        method = "eigen" if (not sp.issparse(h) and dim <= DENSE_LIMIT) else "krylov"
    if method == "eigen":
        if sp.issparse(h):
            h = h.toarray()
        snaps = eigen_propagate(h, psi0, plan.t_grid)
    else:
        snaps = krylov_propagate(h, psi0, plan.t_grid, plan.tolerance)

    norms = np.linalg.norm(snaps, axis=1)
    norm_drift = float(np.max(np.abs(norms - 1.0)))
    if norm_drift > 1e-8:
        raise EvolutionError(f"norm drift {norm_drift:.3g} exceeds 1e-8")

    energy = _expectation_series(h, snaps)
    scale = _operator_norm_estimate(h)
    energy_drift = float(np.max(np.abs(energy - energy[0])))
    if scale > 0 and energy_drift > 1e-8 * scale:
        raise EvolutionError(
            f"energy drift {energy_drift:.3g} exceeds 1e-8 * |H| = {1e-8 * scale:.3g}"
        )

    channels: dict[str, np.ndarray] = {}
    for name, op in (observables or {}).items():
        channels[name] = _expectation_series(op, snaps)
    for name, target in (fidelity_targets or {}).items():
        overlaps = snaps @ np.asarray(target, dtype=complex).conj()
        channels[name] = np.abs(overlaps) ** 2

    return EvolutionResult(
        times=np.asarray(plan.t_grid, dtype=float),
        snapshots=snaps,
        channels=channels,
        norm_drift=norm_drift,
        energy_drift=energy_drift,
    )


def _expectation_series(op, snaps: np.ndarray) -> np.ndarray:
    if sp.issparse(op):
        applied = (op @ snaps.T).T
    else:
        applied = snaps @ op.T
    return np.real(np.sum(snaps.conj() * applied, axis=1))


# ---------------------------------------------------------------------------
# link / chain observable sets


def link_sector_run(
    params: model.LinkParams,
    t_grid,
    initial_parity: str = "+",
    excited_site: int = 0,
    with_projector_channels: bool = True,
) -> tuple[EvolutionResult, model.LinkSystem]:
    """Evolve |1, C_parity, 0> (or site 2) in the single-excitation sector."""
    link = model.build_link(params)
    sector = link.sector
    occupations = (1, 0) if excited_site == 0 else (0, 1)
    psi0_full = link.product_state(occupations[0], initial_parity, occupations[1])
    psi0 = sector.restrict_state(psi0_full)
    obs = link_sector_observables(link, with_projector_channels)
    plan = EvolutionPlan(h=sector.h, t_grid=np.asarray(t_grid, dtype=float))
    targets = {}
    if params.beta0 > 0:
        swapped = "-" if initial_parity == "+" else "+"
        target_full = link.product_state(occupations[1], swapped, occupations[0])
        targets["fid_swap"] = sector.restrict_state(target_full)
    result = evolve(plan, psi0, observables=obs, fidelity_targets=targets)
    return result, link

def link_sector_observables(link: model.LinkSystem, with_projector: bool = True) -> dict:
    sector = link.sector
    g1, g2 = link.gauge.generators
    obs = {
        "n1": sector.restrict(link.number_ops[0]),
        "n2": sector.restrict(link.number_ops[1]),
        "sigma_z": sector.restrict(link.gauge.sigma_z_full),
        "g1": sector.restrict(g1),
        "g2": sector.restrict(g2),
    }
    obs["g1_sq"] = obs["g1"] @ obs["g1"]
    obs["g2_sq"] = obs["g2"] @ obs["g2"]
    if with_projector:
        obs["p_cat"] = sector.restrict(link.gauge.projector_full)
    return obs


def chain_run(
    chain: model.ChainSystem | model.ChainParams,
    t_grid,
    excited_site: int = 0,
) -> tuple[EvolutionResult, model.ChainSystem]:
    """Evolve a single matter excitation along the chain, links in |C+>."""
    system = chain if isinstance(chain, model.ChainSystem) else model.build_chain(chain)
    sector = system.sector
    psi0 = sector.restrict_state(system.initial_state(excited_site))
    obs = {}
    for i, op in enumerate(system.number_ops):
        obs[f"n{i + 1}"] = sector.restrict(op)
    for bond, op in enumerate(system.sigma_z_links):
        obs[f"sigma_z_{bond + 1}{bond + 2}"] = sector.restrict(op)
    for i, gen in enumerate(system.generators):
        g_sec = sector.restrict(gen)
        obs[f"g{i + 1}"] = g_sec
        obs[f"g{i + 1}_sq"] = g_sec @ g_sec
    obs["n_total"] = sector.restrict(system.total_matter_number)
    plan = EvolutionPlan(h=sector.h, t_grid=np.asarray(t_grid, dtype=float))
    result = evolve(plan, psi0, observables=obs)
    return result, system


def gauss_diagnostics(result: EvolutionResult, generator: str = "g1") -> dict:
    """Delta G and the relative deviation series for a recorded generator."""
    g = result.channels[generator]
    g_sq = result.channels[f"{generator}_sq"]
    delta = g_sq - g**2
    denom = np.abs(g)
    rel = np.full_like(g, np.nan)
    ok = denom >= 1e-12
    rel[ok] = np.abs(g[ok] - g[0]) / denom[ok]
    return {"delta": delta, "relative_deviation": rel, "expectation": g}


# ---------------------------------------------------------------------------
# frequency-domain helpers


def rabi_fit_first_minimum(times, values) -> float:
    """Exchange frequency from the first population minimum (half period).

    Refines the sampled minimum with a parabola through its neighbours and
    returns pi / t_min.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(values) < 5:
        raise ValueError("too few samples to locate a minimum")
    lower = values.min() + 0.25 * (values.max() - values.min())
    idx = None
    for i in range(1, len(values) - 1):
        if values[i] <= values[i - 1] and values[i] <= values[i + 1] and values[i] < lower:
            idx = i
            break
    if idx is None:
        raise ValueError("no population minimum inside the window")
    t0, t1, t2 = times[idx - 1 : idx + 2]
    v0, v1, v2 = values[idx - 1 : idx + 2]
    denom = (v0 - 2 * v1 + v2)
    t_min = t1 if denom == 0 else t1 + 0.5 * (times[idx] - times[idx - 1]) * (v0 - v2) / denom
    if t_min <= 0:
        raise ValueError("degenerate minimum location")
    return math.pi / t_min


def fourier_channels(times, values) -> tuple[np.ndarray, np.ndarray]:
    """One-sided magnitude spectrum; DC bin equals |time average| * window."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    dt = np.diff(times)
    if len(dt) < 1 or np.max(np.abs(dt - dt[0])) > 1e-9 * max(abs(dt[0]), 1e-30):
        raise ValueError("fourier_channels needs uniform sampling")
    spectrum = np.abs(np.fft.rfft(values)) * dt[0]
    omega = 2 * np.pi * np.fft.rfftfreq(len(values), dt[0])
    return omega, spectrum


def dc_baseline(times, values) -> float:
    """|FT[values](omega=0)| = |time average| * window length."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    window = float(times[-1] - times[0])
    if window <= 0:
        raise ValueError("window must have positive length")
    return abs(float(np.mean(values))) * window


# ---------------------------------------------------------------------------
# inverse participation ratio


def ipr_subspace_weight(psi: np.ndarray, projector: np.ndarray) -> float:
    """Literal variant: <psi| P |psi> (the printed formula simplifies to it)."""
    val = float(np.real(np.vdot(psi, projector @ psi)))
    return min(max(val, 0.0), 1.0)


def ipr_eigenbasis(
    eigenvectors: np.ndarray, psi0: np.ndarray, projector: np.ndarray
) -> float:
    """Eigenbasis variant: spectral-measure-weighted cat weight of psi0.

    sum_n |<E_n|psi0>|^2 <E_n|P|E_n> -- the long-time average of the literal
    variant, 1 when every participating eigenstate lies in the cat plane.
    """
    amps = np.abs(eigenvectors.conj().T @ psi0) ** 2
    weights = np.einsum("ij,jk,ki->i", eigenvectors.conj().T, projector, eigenvectors).real
    val = float(np.sum(amps * np.clip(weights, 0.0, 1.0)))
    return min(max(val, 0.0), 1.0)


def min_participating_cat_weight(
    eigenvectors: np.ndarray,
    psi0: np.ndarray,
    projector: np.ndarray,
    participation_cut: float = 0.05,
) -> float:
    """Cat weight of the least-cat-like eigenstate psi0 participates in.

    Sharply sensitive to the first avoided crossing between the dressed cat
    doublet and the field-excitation band; its half-maximum contour over a
    (beta0, g3) map follows the mixing threshold beta0 = g3 / 2U.
    """
    amps = np.abs(eigenvectors.conj().T @ psi0) ** 2
    weights = np.einsum(
        "ij,jk,ki->i", eigenvectors.conj().T, projector, eigenvectors
    ).real
    significant = amps > participation_cut
    if not significant.any():
        return 0.0
    return float(np.clip(weights[significant].min(), 0.0, 1.0))


def cat_iprs(params: model.LinkParams) -> dict:
    """IPR variants for the two cat-seeded sector states of a link."""
    link = model.build_link(params)
    sector = link.sector
    p_sec = sector.restrict(link.gauge.projector_full)
    _, evecs = np.linalg.eigh(sector.h)
    out = {}
    for parity in ("+", "-"):
        psi0 = sector.restrict_state(link.product_state(1, parity, 0))
        out[f"weight_{parity}"] = ipr_subspace_weight(psi0, p_sec)
        out[f"eigenbasis_{parity}"] = ipr_eigenbasis(evecs, psi0, p_sec)
        out[f"min_weight_{parity}"] = min_participating_cat_weight(evecs, psi0, p_sec)
    return out


# ---------------------------------------------------------------------------
# (beta0, g3) sweep maps


@dataclass(frozen=True)
class SweepGrid:
    beta0_values: np.ndarray
    g3_values: np.ndarray
    values: np.ndarray           # shape (len(beta0), len(g3))
    normalized: np.ndarray | None = None
    label: str = ""


def _map_params(u: float, beta0: float, g3: float, matter_dim: int = 2) -> model.LinkParams:
    return model.LinkParams(
        U=u, G=2 * u * beta0**2, g3=g3, matter_dim=matter_dim
    )


def _baseline_point(job) -> tuple[int, int, float]:
    i, j, u, beta0, g3, periods, samples = job
    params = _map_params(u, beta0, g3)
    omega_plus, _ = model.rabi_frequencies(params)
    t_end = periods * 2 * np.pi / omega_plus
    t_grid = np.linspace(0.0, t_end, samples)
    result, _ = link_sector_run(params, t_grid, with_projector_channels=False)
    diag = gauss_diagnostics(result, "g1")
    # window-independent DC density; windows differ across the grid, so the
    # plain time average is the comparable quantity before normalization
    return i, j, abs(float(np.mean(diag["delta"])))


def _ipr_point(job) -> tuple[int, int, float, float, float]:
    i, j, u, beta0, g3 = job
    params = _map_params(u, beta0, g3)
    iprs = cat_iprs(params)
    return i, j, iprs["eigenbasis_+"], iprs["eigenbasis_-"], iprs["min_weight_+"]


def _pool_run(fn, jobs, workers: int | None):
    if workers is None:
        workers = int(os.environ.get("CATLGT_WORKERS", "0")) or (os.cpu_count() or 1)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def baseline_map(
    u: float,
    beta0_values,
    g3_values,
    periods: int = 20,
    samples: int = 4096,
    workers: int | None = None,
) -> SweepGrid:
    """Normalized DC component of Delta G_1 over a (beta0, g3) grid.

    Each point evolves |1, C+, 0> for `periods` slow Rabi periods; the map
    is normalized by its global maximum.
    """
    beta0_values = np.asarray(beta0_values, dtype=float)
    g3_values = np.asarray(g3_values, dtype=float)
    if periods < 5:
        raise ValueError("window must cover at least 5 slow periods")
    jobs = [
        (i, j, u, float(b0), float(g3), periods, samples)
        for i, b0 in enumerate(beta0_values)
        for j, g3 in enumerate(g3_values)
    ]
    raw = np.zeros((len(beta0_values), len(g3_values)))
    for i, j, val in _pool_run(_baseline_point, jobs, workers):
        raw[i, j] = val
    peak = raw.max()
    normalized = raw / peak if peak > 0 else raw.copy()
    return SweepGrid(
        beta0_values=beta0_values,
        g3_values=g3_values,
        values=raw,
        normalized=normalized,
        label="gauss_dc_baseline",
    )


def ipr_map(
    u: float,
    beta0_values,
    g3_values,
    workers: int | None = None,
) -> tuple[SweepGrid, SweepGrid, SweepGrid]:
    """Eigenbasis IPR maps for both cat parities plus the hybridisation map.

    The third grid carries the minimum participating cat weight whose
    half-maximum contour marks the mixing threshold.
    """
    beta0_values = np.asarray(beta0_values, dtype=float)
    g3_values = np.asarray(g3_values, dtype=float)
    jobs = [
        (i, j, u, float(b0), float(g3))
        for i, b0 in enumerate(beta0_values)
        for j, g3 in enumerate(g3_values)
    ]
    plus = np.zeros((len(beta0_values), len(g3_values)))
    minus = np.zeros_like(plus)
    min_w = np.zeros_like(plus)
    for i, j, v_plus, v_minus, v_min in _pool_run(_ipr_point, jobs, workers):
        plus[i, j] = v_plus
        minus[i, j] = v_minus
        min_w[i, j] = v_min
    return (
        SweepGrid(beta0_values, g3_values, plus, None, "ipr_eigenbasis_plus"),
        SweepGrid(beta0_values, g3_values, minus, None, "ipr_eigenbasis_minus"),
        SweepGrid(beta0_values, g3_values, min_w, None, "min_cat_weight_plus"),
    )
