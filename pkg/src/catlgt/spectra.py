"""Eigen-analysis of the field mode and assembled links.

The field Hamiltonian conserves photon-number parity, so its spectrum is
computed per parity block; every eigenvector then carries an exact parity
label and the near-degenerate cat pair is aligned with the analytic cats
deterministically (no basis ambiguity from the solver).

Ordering convention: the cat manifold sits at the extremal end of the
field spectrum, so field eigenvalues are listed from the cat pair downward
(index 0, 1 = cats, 2, 3 = first excitation pair, ...).  Full-link sector
spectra are listed ascending.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock, model
from .model import LinkParams


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenpairs with solver-independent ordering and a residual check."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns
    source: str = ""
    order: str = "ascending"

    def verify(self, h: np.ndarray, tol: float = 1e-9) -> None:
        scale = max(np.max(np.abs(self.eigenvalues)), 1.0)
        resid = np.max(
            np.abs(h @ self.eigenvectors - self.eigenvectors * self.eigenvalues)
        )
        if resid > tol * scale:
            raise ValueError(f"eigen residual {resid:.3g} above {tol * scale:.3g}")
        gram = self.eigenvectors.conj().T @ self.eigenvectors
        if np.max(np.abs(gram - np.eye(len(self.eigenvalues)))) > 1e-10:
            raise ValueError("eigenvectors not orthonormal to 1e-10")


def _phase_fix(vec: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry real and positive."""
    k = int(np.argmax(np.abs(vec)))
    ph = vec[k] / abs(vec[k])
    return vec / ph


@dataclass(frozen=True)
class KpoSpectrum:
    """Field spectrum ordered from the cat manifold downward.

    `gap` is the distance from the cat pair to the first excitation
    manifold: when the first two excited levels form a resolved parity
    doublet (mutual splitting smaller than their distance to the cats,
    the displaced-well regime) the doublet centre is used, otherwise the
    nearest single level.
    """

    params: LinkParams
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    parities: np.ndarray  # exact +-1 per eigenvector
    gap: float
    gap_nearest: float    # (lam0 + lam1)/2 - lam2 regardless of pairing
    cat_splitting: float  # |lam0 - lam1|

    @property
    def gap_estimate(self) -> float:
        return self.params.omega_gap

    def decomposition(self) -> EigenDecomposition:
        return EigenDecomposition(
            eigenvalues=self.eigenvalues,
            eigenvectors=self.eigenvectors,
            source="kpo",
            order="descending",
        )


def kpo_spectrum(params: LinkParams, count: int | None = None) -> KpoSpectrum:
    """Diagonalize the field Hamiltonian per parity block.

    Returns the `count` eigenpairs nearest the cat manifold.  The cat pair
    is phase-aligned with the analytic cat states; all other vectors get a
    deterministic largest-entry-positive phase.
    """
    dim = params.resolved_gauge_dim
    h = model.kpo_hamiltonian(dim, params.U, params.G).real
    n = np.arange(dim)
    evals_all, vecs_all, pars_all = [], [], []
    for par, mask in ((+1, n % 2 == 0), (-1, n % 2 == 1)):
        block = h[np.ix_(mask, mask)]
        w, v = np.linalg.eigh(block)
        vec_full = np.zeros((dim, len(w)))
        vec_full[mask] = v
        evals_all.append(w)
        vecs_all.append(vec_full)
        pars_all.append(np.full(len(w), par))
    evals = np.concatenate(evals_all)
    vecs = np.concatenate(vecs_all, axis=1)
    pars = np.concatenate(pars_all)

    # descending in energy = ascending distance below the cat pair; within
    # float-degenerate pairs the even state comes first (C+ convention)
    order = np.lexsort((-pars, -evals))
    evals, vecs, pars = evals[order], vecs[:, order], pars[order]
    # degenerate pairs can interleave by float noise: force even-first on the
    # top pair whenever both parities are present within the splitting
    if len(evals) >= 2 and pars[0] < 0 and pars[1] > 0:
        evals[[0, 1]] = evals[[1, 0]]
        pars[[0, 1]] = pars[[1, 0]]
        vecs[:, [0, 1]] = vecs[:, [1, 0]]

    keep = len(evals) if count is None else min(count, len(evals))
    evals, vecs, pars = evals[:keep], vecs[:, :keep], pars[:keep]

    vecs = vecs.astype(complex)
    for k in range(vecs.shape[1]):
        vecs[:, k] = _phase_fix(vecs[:, k])
    # align the cat pair signs with the analytic cats
    if params.beta0 > 0 and keep >= 2:
        for k, parity in ((0, "+"), (1, "-")):
            cat = fock.cat_state(dim, params.beta0, parity)
            if np.vdot(cat, vecs[:, k]).real < 0:
                vecs[:, k] = -vecs[:, k]

    splitting = float(abs(evals[0] - evals[1])) if keep >= 2 else np.nan
    gap_nearest = float((evals[0] + evals[1]) / 2 - evals[2]) if keep >= 3 else np.nan
    gap = gap_nearest
    if keep >= 4:
        doublet_split = float(abs(evals[2] - evals[3]))
        if doublet_split < gap_nearest:
            gap = float((evals[0] + evals[1]) / 2 - (evals[2] + evals[3]) / 2)
    return KpoSpectrum(
        params=params,
        eigenvalues=evals,
        eigenvectors=vecs,
        parities=pars,
        gap=gap,
        gap_nearest=gap_nearest,
        cat_splitting=splitting,
    )


@dataclass(frozen=True)
class TruncatedFieldBasis:
    """Isometry onto the M field eigenstates nearest the cat manifold.

    Operators reduce as O -> V^dag O V; states as psi -> V^dag psi.  The
    reduced flux and projector keep their leakage sensitivity because they
    are built from the analytic cat states before reduction.
    """

    params: LinkParams
    m: int
    isometry: np.ndarray        # dim_fock x M
    eigenvalues: np.ndarray
    parities: np.ndarray
    b_reduced: np.ndarray
    h_field_reduced: np.ndarray
    sigma_z_reduced: np.ndarray
    projector_reduced: np.ndarray
    cat_plus_reduced: np.ndarray
    cat_minus_reduced: np.ndarray
    cat_pair_overlap: float     # weight of the analytic cat plane in span(v0, v1)

    def reduce_operator(self, op: np.ndarray) -> np.ndarray:
        return self.isometry.conj().T @ op @ self.isometry

    def reduce_state(self, psi: np.ndarray, renormalize: bool = True) -> np.ndarray:
        red = self.isometry.conj().T @ psi
        if renormalize:
            nrm = np.linalg.norm(red)
            if nrm < 1e-6:
                raise ValueError("state has no weight in the truncated basis")
            red = red / nrm
        return red


def truncated_basis(params: LinkParams, m: int) -> TruncatedFieldBasis:
    """Field eigenbasis truncation used by the chain builder."""
    dim = params.resolved_gauge_dim
    if m > dim:
        raise ValueError(f"M = {m} exceeds the Fock cutoff {dim}")
    spec = kpo_spectrum(params, count=m)
    v = spec.eigenvectors
    gauge = model.cat_projector(params)
    b = fock.destroy(dim)
    cat_p = v.conj().T @ gauge.cat_plus
    cat_m = (
        v.conj().T @ gauge.cat_minus
        if gauge.cat_minus is not None
        else np.zeros(m, dtype=complex)
    )
    pair_overlap = float(
        0.5
        * (
            np.linalg.norm(v[:, :2].conj().T @ gauge.cat_plus) ** 2
            + (
                np.linalg.norm(v[:, :2].conj().T @ gauge.cat_minus) ** 2
                if gauge.cat_minus is not None
                else 1.0
            )
        )
    )
    return TruncatedFieldBasis(
        params=params,
        m=m,
        isometry=v,
        eigenvalues=spec.eigenvalues,
        parities=spec.parities,
        b_reduced=v.conj().T @ b @ v,
        h_field_reduced=np.diag(spec.eigenvalues).astype(complex),
        sigma_z_reduced=v.conj().T @ gauge.sigma_z @ v,
        projector_reduced=v.conj().T @ gauge.projector @ v,
        cat_plus_reduced=cat_p / np.linalg.norm(cat_p),
        cat_minus_reduced=(
            cat_m / np.linalg.norm(cat_m) if np.linalg.norm(cat_m) > 0 else cat_m
        ),
        cat_pair_overlap=pair_overlap,
    )


# ---------------------------------------------------------------------------
# full-link spectra


@dataclass(frozen=True)
class SpectrumPoint:
    g3: float
    eigenvalues: np.ndarray   # ascending, single-excitation sector
    cat_weights: np.ndarray   # <E| P_C |E> per eigenvector, in [0, 1]


def spectrum_vs_g3(params: LinkParams, g3_values) -> list[SpectrumPoint]:
    """Sector spectrum with cat-subspace weights for each 3WM amplitude."""
    points = []
    for g3 in g3_values:
        link = model.build_link(params.replace(g3=float(g3)))
        sector = link.sector
        p_sec = sector.restrict(link.gauge.projector_full)
        evals, evecs = np.linalg.eigh(sector.h)
        weights = np.einsum("ij,jk,ki->i", evecs.conj().T, p_sec, evecs).real
        points.append(
            SpectrumPoint(
                g3=float(g3), eigenvalues=evals, cat_weights=np.clip(weights, 0.0, 1.0)
            )
        )
    return points


# ---------------------------------------------------------------------------
# Hinton matrix and matrix elements


FIELD_LABEL_RANKS = ("C", "E")


def _field_label(rank_pair: int, parity: int) -> str:
    base = FIELD_LABEL_RANKS[rank_pair] if rank_pair < 2 else f"X{rank_pair}"
    return base + ("+" if parity > 0 else "-")


@dataclass(frozen=True)
class HintonMatrix:
    labels: tuple[str, ...]
    values: np.ndarray  # real
    g3: float


def hinton_elements(
    params: LinkParams, n_field: int = 4, matter_dim: int = 2
) -> HintonMatrix:
    """Link Hamiltonian in the matter-Fock (x) field-eigenbasis basis.

    The retained field states are labeled C+-, E+- (and X<k>+- beyond the
    first two pairs).  Raises if the represented matrix picks up an
    imaginary part above 1e-9, which signals a phase-convention bug.
    """
    p = params.replace(matter_dim=matter_dim)
    link = model.build_link(p)
    basis = truncated_basis(p, n_field)
    d1, _, d2 = link.layout.dims
    # rectangular isometry: np.kron directly rather than the square-only tensor
    v_emb = np.kron(
        np.eye(d1, dtype=complex), np.kron(basis.isometry, np.eye(d2, dtype=complex))
    )
    h_red = v_emb.conj().T @ link.h @ v_emb
    imag = float(np.max(np.abs(h_red.imag)))
    if imag > 1e-9:
        raise ValueError(
            f"Hinton matrix has imaginary residue {imag:.3g}; phase convention broken"
        )
    labels = []
    field_names = [
        _field_label(k // 2, basis.parities[k]) for k in range(n_field)
    ]
    for n1 in range(d1):
        for name in field_names:
            for n2 in range(d2):
                labels.append(f"{n1}|{name}|{n2}")
    return HintonMatrix(labels=tuple(labels), values=h_red.real, g3=params.g3)


@dataclass(frozen=True)
class MatrixElements:
    bra: tuple
    ket: tuple
    full: complex       # <bra| H |ket> with analytic cats at the cutoff
    projected: complex  # same element of the projected model


def matrix_element(params: LinkParams, bra, ket) -> MatrixElements:
    """Transition element between |n1, C_parity, n2> states.

    bra and ket are (n1, parity, n2) tuples, e.g. (1, '+', 0).
    """
    link = model.build_link(params)
    bra_f = link.product_state(bra[0], bra[1], bra[2])
    ket_f = link.product_state(ket[0], ket[1], ket[2])
    full = complex(np.vdot(bra_f, link.h @ ket_f))
    projected_model = model.project_hamiltonian(link)
    bra_c = projected_model.product_state(*bra)
    ket_c = projected_model.product_state(*ket)
    proj = complex(np.vdot(bra_c, projected_model.h @ ket_c))
    return MatrixElements(bra=tuple(bra), ket=tuple(ket), full=full, projected=proj)
