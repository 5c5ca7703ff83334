"""Wigner quasi-probability fields from displaced-parity expectations.

Convention: alpha = x + i p (no sqrt(2) quadrature rescaling) and
W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(alpha)^dag], so the vacuum gives
W(0,0) = 2/pi and integrals over dx dp are normalized to one.

Evaluation uses the exact identity D(alpha) Pi D(alpha)^dag = D(2 alpha) Pi
(one displacement per grid point) with the displacement generator padded to
an evaluation cutoff large enough for the grid extent; the state's own
cutoff only limits its support, not the displacement accuracy.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import fock
from .fock import CutoffWarning

MAX_EVAL_DIM = 2048
_CHUNK = 1024


@dataclass(frozen=True)
class PhaseSpaceGrid:
    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        if len(self.x) < 32 or len(self.p) < 32:
            raise ValueError("phase-space resolution must be at least 32 per axis")

    @property
    def extent(self) -> float:
        return float(
            math.hypot(max(abs(self.x[0]), abs(self.x[-1])), max(abs(self.p[0]), abs(self.p[-1])))
        )


def default_grid(beta0: float = 0.0, resolution: int = 128, pad: float = 3.0) -> PhaseSpaceGrid:
    half = abs(beta0) + pad
    axis = np.linspace(-half, half, resolution)
    return PhaseSpaceGrid(x=axis, p=axis.copy())


@dataclass(frozen=True)
class WignerField:
    x: np.ndarray
    p: np.ndarray
    w: np.ndarray  # shape (len(p), len(x))

    def integral(self) -> float:
        dx = self.x[1] - self.x[0]
        dp = self.p[1] - self.p[0]
        return float(np.sum(self.w) * dx * dp)

    def at_origin(self) -> float:
        ix = int(np.argmin(np.abs(self.x)))
        ip = int(np.argmin(np.abs(self.p)))
        return float(self.w[ip, ix])


def _eval_dim(d_state: int, amax: float) -> int:
    rule = math.ceil((2 * amax + math.sqrt(d_state) + 6.0) ** 2 / 2.0)
    return min(max(d_state, rule), MAX_EVAL_DIM)


def wigner_at_points(rho: np.ndarray, alphas: np.ndarray) -> np.ndarray:
    """W(alpha) for arbitrary complex points, batched.

    Uses W = (2/pi) sum_{jk} rho_kj (-1)^k e^{i theta (j-k)} D(2r)_{jk}
    with D(2r) from one eigendecomposition of the radial generator.
    """
    rho = np.asarray(rho, dtype=complex)
    d_state = rho.shape[0]
    alphas = np.asarray(alphas, dtype=complex).reshape(-1)
    amax = float(np.max(np.abs(alphas))) if alphas.size else 0.0
    d_eval = _eval_dim(d_state, amax)
    if amax**2 > d_state / 4:
        warnings.warn(
            f"phase-space extent |alpha|^2 = {amax**2:.3g} exceeds state cutoff/4 = "
            f"{d_state / 4:.3g}; state support may be clipped",
            CutoffWarning,
            stacklevel=2,
        )
    if d_eval == MAX_EVAL_DIM:
        warnings.warn(
            f"displacement evaluation capped at dim {MAX_EVAL_DIM}; far-field values "
            "may lose precision",
            CutoffWarning,
            stacklevel=2,
        )

    # radial generator 2r * (b^dag - b) = i * (2r * M), M Hermitian
    b = fock.destroy(d_eval)
    m_herm = -1j * (b.conj().T - b)
    lam, w_vec = np.linalg.eigh(m_herm)
    w_top = w_vec[:d_state, :]  # rows within the state's support

    n = np.arange(d_state)
    signs = (-1.0) ** n
    s_mat = (signs[:, None] * rho).T  # S_jk = (-1)^k rho_kj

    values = np.empty(alphas.shape, dtype=float)
    radii = np.abs(alphas)
    thetas = np.angle(alphas)
    for start in range(0, alphas.size, _CHUNK):
        sl = slice(start, min(start + _CHUNK, alphas.size))
        e_phase = np.exp(2j * np.outer(radii[sl], lam))      # (K, d_eval)
        blocks = np.matmul(
            w_top[None, :, :] * e_phase[:, None, :], w_top.conj().T
        )                                                    # (K, d_s, d_s)
        u = np.exp(1j * np.outer(thetas[sl], n))             # (K, d_s)
        vals = np.einsum("jk,cj,ck,cjk->c", s_mat, u, u.conj(), blocks)
        values[sl] = (2.0 / np.pi) * vals.real
    return values


def wigner(rho: np.ndarray, grid: PhaseSpaceGrid) -> WignerField:
    """Displaced-parity Wigner function of a density matrix on a grid."""
    fock.check_hermitian(rho, 1e-9, "density matrix")
    xx, pp = np.meshgrid(grid.x, grid.p)
    alphas = (xx + 1j * pp).reshape(-1)
    vals = wigner_at_points(rho, alphas).reshape(len(grid.p), len(grid.x))
    return WignerField(x=grid.x.copy(), p=grid.p.copy(), w=vals)


def marginal_wigner(psi: np.ndarray, dims, site: int, grid: PhaseSpaceGrid) -> WignerField:
    """Wigner function of one factor of a pure multi-mode state."""
    rho_full = fock.density_matrix(np.asarray(psi, dtype=complex))
    rho = fock.partial_trace(rho_full, dims, site)
    return wigner(rho, grid)


def parity_expectation(rho: np.ndarray) -> float:
    signs = (-1.0) ** np.arange(rho.shape[0])
    return float(np.real(np.sum(signs * np.diag(rho))))


def angular_variance(
    rho: np.ndarray,
    radii: np.ndarray | None = None,
    n_angles: int = 180,
    r_max: float | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Variance of W over the angle at each radius.

    A rotationally symmetric state gives zero at every radius; mirror-only
    symmetry leaves the interference fringes visible as angular variance.
    """
    if radii is None:
        top = r_max if r_max is not None else math.sqrt(rho.shape[0]) / 2 + 1
        radii = np.linspace(0.1, top, 24)
    radii = np.asarray(radii, dtype=float)
    angles = np.linspace(0.0, 2 * np.pi, n_angles, endpoint=False)
    points = radii[:, None] * np.exp(1j * angles)[None, :]
    vals = wigner_at_points(rho, points.reshape(-1)).reshape(points.shape)
    return radii, vals.var(axis=1)


def symmetry_breaking_score(rho: np.ndarray, **kwargs) -> float:
    """Peak angular variance; decreases as the state turns rotation-symmetric."""
    _, var = angular_variance(rho, **kwargs)
    return float(var.max())
