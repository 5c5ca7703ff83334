"""Hamiltonians and gauge structure for cat-qubit resonator links and chains.

A link is two matter resonators a1, a2 coupled through one gauge resonator b
by non-degenerate three-wave mixing; b is a Kerr oscillator with a two-photon
drive whose degenerate cat states encode a two-valued gauge field.  This
module assembles the full Hamiltonians, the cat-subspace projector, the link
operator in closed form, the symmetry generators and the projected (qubit
level) model, plus the triangular-plaquette constructions.

Conventions
-----------
* beta0 = sqrt(G / 2U) is real and non-negative; omega_gap = 4*U*beta0^2.
* Flux operator sigma^z = |C+><C+| - |C-><C-|; embedded in the full gauge
  space it is zero on the complement of the cat plane, so Gauss-law
  diagnostics are sensitive to leakage.
* Link layout a1 (x) b (x) a2; chain layout a1 (x) b12 (x) a2 (x) b23 (x) a3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from . import fock
from .fock import HilbertSpace, ProductLayout

MAX_BASIS_STATES = 500_000


class ValidationError(ValueError):
    """Physical-parameter validation failure."""


def default_gauge_dim(beta0: float) -> int:
    """Fock cutoff keeping the cat-state discarded weight below ~1e-10."""
    return max(30, int(math.ceil(8 * beta0**2)))


@dataclass(frozen=True)
class LinkParams:
    """Parameters of a single matter-gauge-matter link.

    U: Kerr nonlinearity, G: two-photon drive amplitude, g3: three-wave
    mixing amplitude (all angular frequencies).  Cutoffs default to
    matter_dim = 5 and the cat-size-dependent gauge rule.
    """

    U: float
    G: float
    g3: float
    omega_matter: tuple[float, float] = (0.0, 0.0)
    matter_dim: int = 5
    gauge_dim: int | None = None

    def __post_init__(self):
        if self.U <= 0:
            raise ValidationError(f"Kerr nonlinearity U must be > 0, got {self.U}")
        if self.G < 0:
            raise ValidationError(f"two-photon drive G must be >= 0, got {self.G}")
        if self.g3 < 0:
            raise ValidationError(f"3WM amplitude g3 must be >= 0, got {self.g3}")
        if len(self.omega_matter) != 2:
            raise ValidationError("omega_matter needs one frequency per matter site")
        if self.matter_dim < 2:
            raise ValidationError("matter_dim must be >= 2")
        if self.gauge_dim is not None and self.gauge_dim < 2:
            raise ValidationError("gauge_dim must be >= 2")

    @property
    def beta0(self) -> float:
        return math.sqrt(self.G / (2 * self.U))

    @property
    def omega_gap(self) -> float:
        return 4 * self.U * self.beta0**2

    @property
    def resolved_gauge_dim(self) -> int:
        return self.gauge_dim if self.gauge_dim is not None else default_gauge_dim(self.beta0)

    @property
    def strong_mixing(self) -> bool:
        """Advisory flag: Rabi rate comparable to the gap (beta0 < g3/2U)."""
        return self.g3 > 2 * self.U * self.beta0

    def replace(self, **kw) -> "LinkParams":
        from dataclasses import replace

        return replace(self, **kw)


@dataclass(frozen=True)
class ChainParams:
    """N matter sites joined by N-1 identical links; gauge modes kept in the
    lowest m_field eigenstates of the field Hamiltonian."""

    n_sites: int
    link: LinkParams
    m_field: int
    matter_dim: int = 2

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValidationError("chain needs at least two matter sites")
        if self.m_field < 2:
            raise ValidationError("m_field must be >= 2")
        if self.matter_dim < 2:
            raise ValidationError("matter_dim must be >= 2")

    @property
    def sector_dim(self) -> int:
        """Single-matter-excitation dimension N * M^(N-1)."""
        return self.n_sites * self.m_field ** (self.n_sites - 1)


# ---------------------------------------------------------------------------
# single-mode and link Hamiltonians


def kpo_hamiltonian(dim: int, U: float, G: float) -> np.ndarray:
    """Kerr parametric oscillator -U b^dag^2 b^2 + (G/2)(b^2 + b^dag^2)."""
    b = fock.destroy(dim)
    bd = b.conj().T
    h = -U * (bd @ bd @ b @ b) + 0.5 * G * (b @ b + bd @ bd)
    return 0.5 * (h + h.conj().T)


def build_matter(params: LinkParams, layout: ProductLayout | None = None):
    """Sum_i omega_i a_i^dag a_i embedded on the link product space."""
    if layout is None:
        layout = link_layout(params)
    h = None
    for w, site in zip(params.omega_matter, (0, 2)):
        term = w * layout.embed(fock.number_op(layout.dims[site]), site)
        h = term if h is None else h + term
    return h


def build_kpo(params: LinkParams) -> np.ndarray:
    """Gauge-mode KPO Hamiltonian at the resolved cutoff (single mode)."""
    return kpo_hamiltonian(params.resolved_gauge_dim, params.U, params.G)


def build_coupling(params: LinkParams, layout: ProductLayout | None = None):
    """Three-wave mixing -g3 (a1^dag b a2 + a2^dag b^dag a1) on the link."""
    if layout is None:
        layout = link_layout(params)
    d1, dg, d2 = layout.dims
    a1 = layout.embed(fock.destroy(d1), 0)
    b = layout.embed(fock.destroy(dg), 1)
    a2 = layout.embed(fock.destroy(d2), 2)
    hop = a1.conj().T @ b @ a2
    return -params.g3 * (hop + hop.conj().T)


def link_layout(params: LinkParams) -> ProductLayout:
    dm, dg = params.matter_dim, params.resolved_gauge_dim
    return ProductLayout(
        (
            HilbertSpace(dm, "a1"),
            HilbertSpace(dg, "b"),
            HilbertSpace(dm, "a2"),
        )
    )


# ---------------------------------------------------------------------------
# gauge structure


def link_coefficients(beta0: float) -> tuple[float, float]:
    """Closed-form weights u_x, u_y of the projected link operator.

    u_{x,y} = beta0 (N-/N+ +- N+/N-)/2 with N_pm the cat normalizations;
    both tend to 1 as beta0 -> 0 and (beta0, 0) as beta0 -> infinity.
    """
    if beta0 < 0:
        raise ValidationError("beta0 must be non-negative")
    if beta0 == 0:
        # beta0 -> 0 limit: u_x = u_y = 1/2, so L -> |C+><C-|
        return 0.5, 0.5
    q = math.exp(-2 * beta0**2)
    one_minus_q = -math.expm1(-2 * beta0**2)  # avoids cancellation at small beta0
    r = math.sqrt((1 + q) / one_minus_q)  # N-/N+
    return 0.5 * beta0 * (r + 1 / r), 0.5 * beta0 * (r - 1 / r)


def rabi_frequencies(params_or_beta0, g3: float | None = None) -> tuple[float, float]:
    """Parity-dependent Rabi frequencies (Omega+, Omega-).

    Omega_pm = 2 g3 beta0 sqrt((1 pm e^{-2 beta0^2}) / (1 mp e^{-2 beta0^2})).
    The beta0 -> 0 limit is taken analytically: (2 g3, 0).
    """
    if isinstance(params_or_beta0, LinkParams):
        beta0, g3 = params_or_beta0.beta0, params_or_beta0.g3
    else:
        beta0 = float(params_or_beta0)
        if g3 is None:
            raise TypeError("g3 required when passing beta0 directly")
    if beta0 < 0 or g3 < 0:
        raise ValidationError("beta0 and g3 must be non-negative")
    if beta0 == 0:
        return 2 * g3, 0.0
    ux, uy = link_coefficients(beta0)
    return 2 * g3 * (ux + uy), 2 * g3 * (ux - uy)


@dataclass(frozen=True)
class GaugeStructure:
    """Cat projector, flux operator and symmetry generators of one link."""

    beta0: float
    cat_plus: np.ndarray
    cat_minus: np.ndarray | None
    projector: np.ndarray          # gauge mode, rank 2 (rank 1 at beta0 = 0)
    sigma_z: np.ndarray            # gauge mode, zero outside the cat plane
    link_block: np.ndarray         # 2x2 closed form u_x sx + i u_y sy
    link_block_numeric: np.ndarray  # 2x2 from P_C b P_C at the cutoff
    u_x: float
    u_y: float
    projector_full: np.ndarray | sp.spmatrix | None = None
    sigma_z_full: np.ndarray | sp.spmatrix | None = None
    generators: tuple = ()

    @property
    def rank(self) -> int:
        return 1 if self.cat_minus is None else 2


def cat_projector(params: LinkParams, embed_layout: ProductLayout | None = None) -> GaugeStructure:
    """Gauge structure at the params' cat amplitude.

    At beta0 = 0 the odd cat is undefined and the projector degenerates to
    rank one (|0><0|) with a warning.
    """
    dg = params.resolved_gauge_dim
    beta0 = params.beta0
    cat_p = fock.cat_state(dg, beta0, "+")
    if beta0 == 0:
        import warnings

        warnings.warn(
            "beta0 = 0: odd cat undefined, projector degenerates to rank 1",
            fock.CutoffWarning,
            stacklevel=2,
        )
        cat_m = None
        proj = np.outer(cat_p, cat_p.conj())
        sigma_z = proj.copy()
        ux, uy = link_coefficients(beta0)
        block = np.array([[0.0, ux + uy], [ux - uy, 0.0]], dtype=complex)
        numeric = np.full((2, 2), np.nan, dtype=complex)
    else:
        cat_m = fock.cat_state(dg, beta0, "-")
        proj = np.outer(cat_p, cat_p.conj()) + np.outer(cat_m, cat_m.conj())
        sigma_z = np.outer(cat_p, cat_p.conj()) - np.outer(cat_m, cat_m.conj())
        ux, uy = link_coefficients(beta0)
        block = np.array([[0.0, ux + uy], [ux - uy, 0.0]], dtype=complex)
        b = fock.destroy(dg)
        numeric = np.array(
            [
                [np.vdot(cat_p, b @ cat_p), np.vdot(cat_p, b @ cat_m)],
                [np.vdot(cat_m, b @ cat_p), np.vdot(cat_m, b @ cat_m)],
            ]
        )

    proj_full = sigma_full = None
    generators: tuple = ()
    if embed_layout is not None:
        proj_full = embed_layout.embed(proj, 1)
        sigma_full = embed_layout.embed(sigma_z, 1)
        d1, _, d2 = embed_layout.dims
        q1 = embed_layout.embed(fock.parity_op(d1), 0)
        q2 = embed_layout.embed(fock.parity_op(d2), 2)
        generators = (q1 @ sigma_full, q2 @ sigma_full)

    return GaugeStructure(
        beta0=beta0,
        cat_plus=cat_p,
        cat_minus=cat_m,
        projector=proj,
        sigma_z=sigma_z,
        link_block=block,
        link_block_numeric=numeric,
        u_x=ux,
        u_y=uy,
        projector_full=proj_full,
        sigma_z_full=sigma_full,
        generators=generators,
    )


def link_operator(params: LinkParams) -> tuple[np.ndarray, float, float, np.ndarray]:
    """Closed-form 2x2 link operator, its weights and the numerical block.

    Returns (L_closed, u_x, u_y, L_numeric) in the (C+, C-) basis.
    """
    if params.beta0 <= 0:
        raise ValidationError("link_operator requires beta0 > 0")
    gauge = cat_projector(params)
    return gauge.link_block, gauge.u_x, gauge.u_y, gauge.link_block_numeric


# ---------------------------------------------------------------------------
# assembled systems


@dataclass(frozen=True)
class SectorView:
    """Restriction of a system to the single-matter-excitation sector.

    Valid because every assembled Hamiltonian commutes with the total matter
    number; `indices` map sector coordinates into the full basis.
    """

    indices: np.ndarray
    h: np.ndarray
    dim: int

    def restrict(self, op):
        if sp.issparse(op):
            op = op.tocsr()
            return op[self.indices][:, self.indices].toarray()
        return op[np.ix_(self.indices, self.indices)]

    def restrict_state(self, psi: np.ndarray) -> np.ndarray:
        sec = psi[self.indices]
        norm = np.linalg.norm(sec)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(
                f"state has weight {norm**2:.6g} in the single-excitation sector; "
                "not restrictable"
            )
        return sec / norm

    def embed_state(self, sec: np.ndarray, full_dim: int) -> np.ndarray:
        psi = np.zeros(full_dim, dtype=complex)
        psi[self.indices] = sec
        return psi


@dataclass(frozen=True)
class LinkSystem:
    params: LinkParams
    layout: ProductLayout
    h: np.ndarray | sp.spmatrix
    h_matter: np.ndarray | sp.spmatrix
    h_field: np.ndarray | sp.spmatrix
    h_coup: np.ndarray | sp.spmatrix
    gauge: GaugeStructure

    @cached_property
    def number_ops(self) -> tuple:
        d1, dg, d2 = self.layout.dims
        return (
            self.layout.embed(fock.number_op(d1), 0),
            self.layout.embed(fock.number_op(d2), 2),
        )

    @cached_property
    def total_matter_number(self):
        return self.number_ops[0] + self.number_ops[1]

    @cached_property
    def sector(self) -> SectorView:
        """Single-matter-excitation block (exact: H conserves matter number)."""
        d1, dg, d2 = self.layout.dims
        occ = (
            np.arange(d1)[:, None, None]
            + np.zeros(dg)[None, :, None]
            + np.arange(d2)[None, None, :]
        )
        idx = np.flatnonzero(occ.reshape(-1) == 1)
        if sp.issparse(self.h):
            h_sec = self.h.tocsr()[idx][:, idx].toarray()
        else:
            h_sec = self.h[np.ix_(idx, idx)]
        return SectorView(indices=idx, h=h_sec, dim=idx.size)

    def product_state(self, n1: int, gauge_state, n2: int) -> np.ndarray:
        """|n1> (x) gauge (x) |n2>; gauge_state may be '+', '-' or a vector."""
        d1, dg, d2 = self.layout.dims
        if isinstance(gauge_state, str):
            gauge_vec = fock.cat_state(dg, self.params.beta0, gauge_state)
        else:
            gauge_vec = np.asarray(gauge_state, dtype=complex)
        return self.layout.product_state(
            [fock.fock_state(d1, n1), gauge_vec, fock.fock_state(d2, n2)]
        )


def build_link(params: LinkParams) -> LinkSystem:
    """Assemble the full link Hamiltonian H = H_matter + H_field + H_coup."""
    layout = link_layout(params)
    if layout.dim > MAX_BASIS_STATES:
        raise ValidationError(
            f"link dimension {layout.dim} exceeds guard of {MAX_BASIS_STATES}"
        )
    h_matter = build_matter(params, layout)
    h_field = layout.embed(build_kpo(params), 1)
    h_coup = build_coupling(params, layout)
    h = h_matter + h_field + h_coup
    if not sp.issparse(h):
        fock.check_hermitian(h, 1e-12, "link Hamiltonian")
    gauge = cat_projector(params, embed_layout=layout)
    return LinkSystem(
        params=params,
        layout=layout,
        h=h,
        h_matter=h_matter,
        h_field=h_field,
        h_coup=h_coup,
        gauge=gauge,
    )


# ---------------------------------------------------------------------------
# projected (cat-qubit) model

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


@dataclass(frozen=True)
class ProjectedLink:
    """Effective model on matter (x) 2-dim cat (x) matter.

    The field contributes the constant U beta0^4 and the coupling acts
    through the closed-form link operator; the cat basis order is (C+, C-).
    """

    params: LinkParams
    layout: ProductLayout
    h: np.ndarray
    generators: tuple[np.ndarray, np.ndarray]
    sigma_z_full: np.ndarray

    def product_state(self, n1: int, parity: str, n2: int) -> np.ndarray:
        d = self.params.matter_dim
        cat = np.array([1.0, 0.0] if fock._parity_sign(parity) > 0 else [0.0, 1.0], dtype=complex)
        return self.layout.product_state(
            [fock.fock_state(d, n1), cat, fock.fock_state(d, n2)]
        )


def project_hamiltonian(
    link: LinkSystem | LinkParams, field_sigma_z: float = 0.0
) -> ProjectedLink:
    """Cat-subspace Hamiltonian of a link: matter + U beta0^4 + link hopping.

    `field_sigma_z` adds the optional matter-free flux term epsilon * sigma^z
    of the projected theory (it commutes with every generator, so gauge
    invariance is untouched); it exists only at this effective level, not as
    a physical-oscillator drive.
    """
    params = link.params if isinstance(link, LinkSystem) else link
    dm = params.matter_dim
    layout = ProductLayout(
        (HilbertSpace(dm, "a1"), HilbertSpace(2, "cat"), HilbertSpace(dm, "a2"))
    )
    L, ux, uy, _ = (
        (link.gauge.link_block, link.gauge.u_x, link.gauge.u_y, None)
        if isinstance(link, LinkSystem)
        else link_operator(params)
    )
    a = fock.destroy(dm)
    ad = a.conj().T
    eye_m = np.eye(dm, dtype=complex)
    sigma_z_full = fock.tensor([eye_m, SIGMA_Z, eye_m])
    h = params.omega_matter[0] * fock.tensor([ad @ a, np.eye(2), eye_m])
    h = h + params.omega_matter[1] * fock.tensor([eye_m, np.eye(2), ad @ a])
    h = h + params.U * params.beta0**4 * np.eye(layout.dim, dtype=complex)
    hop = fock.tensor([ad, L, a])
    h = h - params.g3 * (hop + hop.conj().T)
    if field_sigma_z:
        h = h + field_sigma_z * sigma_z_full
    q = fock.parity_op(dm)
    g1 = fock.tensor([q, SIGMA_Z, eye_m])
    g2 = fock.tensor([eye_m, SIGMA_Z, q])
    return ProjectedLink(
        params=params,
        layout=layout,
        h=h,
        generators=(g1, g2),
        sigma_z_full=sigma_z_full,
    )


def gauge_generators(system) -> tuple:
    """Symmetry generators G_i = Q_i prod_links sigma^z of a built system."""
    if isinstance(system, (LinkSystem, ProjectedLink)):
        if isinstance(system, LinkSystem):
            return system.gauge.generators
        return system.generators
    if isinstance(system, ChainSystem):
        return system.generators
    raise TypeError(f"no generators for {type(system).__name__}")


# ---------------------------------------------------------------------------
# chains


@dataclass(frozen=True)
class ChainSystem:
    """N-site chain in the truncated field eigenbasis.

    Layout a1 (x) b12 (x) a2 (x) ... with matter Fock factors of dimension
    matter_dim and gauge factors of dimension m_field.  Observables are
    expressed on the same space; `sector` restricts to one matter excitation.
    """

    params: ChainParams
    layout: ProductLayout
    h: np.ndarray | sp.spmatrix
    number_ops: tuple
    sigma_z_links: tuple
    projector_links: tuple
    generators: tuple
    field_basis: "object"  # TruncatedFieldBasis; typed loosely to avoid a cycle

    @cached_property
    def total_matter_number(self):
        out = self.number_ops[0]
        for op in self.number_ops[1:]:
            out = out + op
        return out

    @cached_property
    def sector(self) -> SectorView:
        occ = np.zeros(self.layout.dims, dtype=float)
        for site in range(self.params.n_sites):
            axis_dim = self.layout.dims[2 * site]
            shape = [1] * len(self.layout.dims)
            shape[2 * site] = axis_dim
            occ = occ + np.arange(axis_dim).reshape(shape)
        idx = np.flatnonzero(occ.reshape(-1) == 1)
        if sp.issparse(self.h):
            h_sec = self.h.tocsr()[idx][:, idx].toarray()
        else:
            h_sec = self.h[np.ix_(idx, idx)]
        return SectorView(indices=idx, h=h_sec, dim=idx.size)

    def initial_state(self, excited_site: int = 0) -> np.ndarray:
        """Single excitation at a matter site, every link in the even cat."""
        states = []
        for site in range(self.params.n_sites):
            n = 1 if site == excited_site else 0
            states.append(fock.fock_state(self.params.matter_dim, n))
            if site < self.params.n_sites - 1:
                states.append(self.field_basis.cat_plus_reduced)
        return self.layout.product_state(states)


def build_chain(params: ChainParams) -> ChainSystem:
    """Chain Hamiltonian: matter + per-link KPO + 3WM between neighbours."""
    from .spectra import truncated_basis  # local import; spectra builds on model

    n = params.n_sites
    basis = truncated_basis(params.link, params.m_field)
    spaces = []
    for site in range(n):
        spaces.append(HilbertSpace(params.matter_dim, f"a{site + 1}"))
        if site < n - 1:
            spaces.append(
                HilbertSpace(params.m_field, f"b{site + 1}{site + 2}", "field_eigen")
            )
    layout = ProductLayout(tuple(spaces))
    if layout.dim > MAX_BASIS_STATES:
        raise ValidationError(
            f"chain dimension {layout.dim} exceeds guard of {MAX_BASIS_STATES}"
        )

    dm = params.matter_dim
    a = fock.destroy(dm)
    num = fock.number_op(dm)
    omega = params.link.omega_matter[0]

    h = None

    def acc(term):
        nonlocal h
        h = term if h is None else h + term

    number_ops = []
    for site in range(n):
        op = layout.embed(num, 2 * site)
        number_ops.append(op)
        acc(omega * op)

    sigma_z_links = []
    projector_links = []
    for bond in range(n - 1):
        gauge_axis = 2 * bond + 1
        acc(layout.embed(basis.h_field_reduced, gauge_axis))
        sigma_z_links.append(layout.embed(basis.sigma_z_reduced, gauge_axis))
        projector_links.append(layout.embed(basis.projector_reduced, gauge_axis))
        a_left = layout.embed(a, 2 * bond)
        a_right = layout.embed(a, 2 * bond + 2)
        b_red = layout.embed(basis.b_reduced, gauge_axis)
        hop = a_left.conj().T @ b_red @ a_right
        acc(-params.link.g3 * (hop + hop.conj().T))

    generators = []
    for site in range(n):
        gen = layout.embed(fock.parity_op(dm), 2 * site)
        for bond in (site - 1, site):
            if 0 <= bond < n - 1:
                gen = gen @ sigma_z_links[bond]
        generators.append(gen)

    if not sp.issparse(h):
        fock.check_hermitian(h, 1e-12, "chain Hamiltonian")
    return ChainSystem(
        params=params,
        layout=layout,
        h=h,
        number_ops=tuple(number_ops),
        sigma_z_links=tuple(sigma_z_links),
        projector_links=tuple(projector_links),
        generators=tuple(generators),
        field_basis=basis,
    )


@dataclass(frozen=True)
class ProjectedChain:
    """Cat-qubit chain model used for the executable gauge-invariance proof."""

    params: ChainParams
    layout: ProductLayout
    h: np.ndarray
    generators: tuple


def project_chain(params: ChainParams) -> ProjectedChain:
    """Chain analogue of project_hamiltonian on matter (x) cat qubits."""
    n = params.n_sites
    link = params.link
    dm = params.matter_dim
    spaces = []
    for site in range(n):
        spaces.append(HilbertSpace(dm, f"a{site + 1}"))
        if site < n - 1:
            spaces.append(HilbertSpace(2, f"cat{site + 1}{site + 2}"))
    layout = ProductLayout(tuple(spaces))
    a = fock.destroy(dm)
    num = fock.number_op(dm)
    L, _, _, _ = link_operator(link)
    omega = link.omega_matter[0]

    h = link.U * link.beta0**4 * (n - 1) * np.eye(layout.dim, dtype=complex)
    for site in range(n):
        h = h + omega * layout.embed(num, 2 * site)
    for bond in range(n - 1):
        hop = (
            layout.embed(a, 2 * bond).conj().T
            @ layout.embed(L, 2 * bond + 1)
            @ layout.embed(a, 2 * bond + 2)
        )
        h = h - link.g3 * (hop + hop.conj().T)

    generators = []
    for site in range(n):
        gen = layout.embed(fock.parity_op(dm), 2 * site)
        for bond in (site - 1, site):
            if 0 <= bond < n - 1:
                gen = gen @ layout.embed(SIGMA_Z, 2 * bond + 1)
        generators.append(gen)
    return ProjectedChain(params=params, layout=layout, h=h, generators=tuple(generators))


# ---------------------------------------------------------------------------
# plaquette constructions (effective qubit level)


@dataclass(frozen=True)
class PlaquetteModel:
    """Triangular-plaquette Hamiltonians in the projected gauge algebra.

    h_direct: multi-wave-mixing route, 2 g3 b1 b2 b3 -> sx sx sx on the three
    link qubits.  h_ancillary: hopping of ancilla excitations between links,
    -g_tri sum (c_i^dag sx_ij c_j + h.c.) on link-qubits (x) ancilla modes.
    """

    g3: float
    betas: tuple[float, float, float]
    g_triangle: float
    h_direct: np.ndarray
    h_ancillary: np.ndarray
    link_dims: tuple[int, ...]
    ancilla_dims: tuple[int, ...]


def plaquette_momentum_spectrum(phi: float, g_triangle: float) -> np.ndarray:
    """Single-ancilla-excitation band -2 g_tri cos((2 pi k + phi)/3), k in {-1,0,1}."""
    k = np.array([-1, 0, 1], dtype=float)
    return np.sort(-2 * g_triangle * np.cos((2 * np.pi * k + phi) / 3.0))


def plaquette_hamiltonians(g3: float, betas=(1.0, 1.0, 1.0)) -> PlaquetteModel:
    """Direct and ancilla-mediated plaquette Hamiltonians for a triangle.

    The three link qubits sit on the triangle edges; three ancilla modes
    (occupation restricted to <= 1) hop between neighbouring corners through
    the traversed edge's sigma^x, all with the uniform effective coupling
    g_tri = g3 * beta^4.
    """
    if g3 < 0:
        raise ValidationError("g3 must be non-negative")
    betas = tuple(float(b) for b in betas)
    if len(betas) != 3:
        raise ValidationError("a triangle has three gauge amplitudes")
    if not (betas[0] == betas[1] == betas[2]):
        raise ValidationError("plaquette model assumes uniform cat amplitudes")

    # direct route: 2 g3 beta_i beta_j beta_k sx sx sx on the link qubits
    prod = betas[0] * betas[1] * betas[2]
    h_direct = 2 * g3 * prod * fock.tensor([SIGMA_X, SIGMA_X, SIGMA_X])

    g_tri = g3 * betas[0] ** 4
    link_dims = (2, 2, 2)
    anc_dims = (2, 2, 2)
    layout = ProductLayout(
        tuple(HilbertSpace(d, f"s{i}") for i, d in enumerate(link_dims))
        + tuple(HilbertSpace(d, f"c{i}") for i, d in enumerate(anc_dims))
    )
    c = fock.destroy(2)
    edges = ((0, 1), (1, 2), (2, 0))  # corner pairs; edge index = link qubit
    h_anc = np.zeros((layout.dim, layout.dim), dtype=complex)
    for edge_idx, (i, j) in enumerate(edges):
        sx = layout.embed(SIGMA_X, edge_idx)
        ci = layout.embed(c, 3 + i)
        cj = layout.embed(c, 3 + j)
        term = ci.conj().T @ sx @ cj
        h_anc = h_anc - g_tri * (term + term.conj().T)

    return PlaquetteModel(
        g3=g3,
        betas=betas,
        g_triangle=g_tri,
        h_direct=h_direct,
        h_ancillary=h_anc,
        link_dims=link_dims,
        ancilla_dims=anc_dims,
    )


def plaquette_flux_spectrum(model: PlaquetteModel, flux_signs=(1, 1, 1)) -> np.ndarray:
    """Numerical single-ancilla-excitation spectrum in a fixed sigma^x sector.

    flux_signs are the sigma^x eigenvalues of the three link qubits; the
    accumulated flux Phi is 0 when their product is +1 and pi when -1.
    """
    signs = tuple(int(s) for s in flux_signs)
    if any(s not in (-1, 1) for s in signs):
        raise ValidationError("flux signs must be +-1")
    hop = np.zeros((3, 3), dtype=complex)
    edges = ((0, 1), (1, 2), (2, 0))
    for edge_idx, (i, j) in enumerate(edges):
        hop[i, j] += -model.g_triangle * signs[edge_idx]
        hop[j, i] += -model.g_triangle * signs[edge_idx]
    return np.sort(np.linalg.eigvalsh(hop))
