"""Truncated-Fock-space operator algebra.

Everything downstream (Hamiltonian assembly, time evolution, phase-space
diagnostics) is built from the dense/sparse matrices produced here: ladder
operators, displacement, coherent and cat states, parity, tensor products,
partial traces and displaced-oscillator overlaps.

All values are immutable after construction; functions return new arrays.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.special import gammaln

# Tensor products larger than this are stored compressed-sparse; the
# single-link / chain Hamiltonians are band-sparse in the Fock basis.
SPARSE_THRESHOLD = 10_000


class CutoffWarning(UserWarning):
    """Emitted when a truncated construction discards non-negligible weight."""


class ConvergenceError(RuntimeError):
    """Raised when cutoff doubling fails to converge an overlap."""


@dataclass(frozen=True)
class HilbertSpace:
    """One resonator mode kept to `dim` basis states.

    basis_kind is "fock" for number-state truncations and "field_eigen" for
    gauge modes expressed in a truncated eigenbasis of the field Hamiltonian
    (the transformation matrix lives with the TruncatedFieldBasis object).
    """

    dim: int
    label: str = ""
    basis_kind: str = "fock"

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"HilbertSpace needs dim >= 2, got {self.dim}")
        if self.basis_kind not in ("fock", "field_eigen"):
            raise ValueError(f"unknown basis_kind {self.basis_kind!r}")


def _dim(space) -> int:
    """Accept a HilbertSpace or a bare integer dimension."""
    if isinstance(space, HilbertSpace):
        return space.dim
    d = int(space)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    return d


# ---------------------------------------------------------------------------
# single-mode operators


def destroy(space) -> np.ndarray:
    """Annihilation operator: entries sqrt(n) on the (n-1, n) positions."""
    d = _dim(space)
    return np.diag(np.sqrt(np.arange(1, d, dtype=float)), k=1).astype(complex)


def create(space) -> np.ndarray:
    """Creation operator, the exact conjugate transpose of destroy."""
    return destroy(space).conj().T


def number_op(space) -> np.ndarray:
    d = _dim(space)
    return np.diag(np.arange(d, dtype=float)).astype(complex)


def identity(space) -> np.ndarray:
    return np.eye(_dim(space), dtype=complex)


def parity_op(space) -> np.ndarray:
    """Photon-number parity, diag(+1, -1, +1, ...)."""
    d = _dim(space)
    return np.diag((-1.0) ** np.arange(d)).astype(complex)


def displacement(space, beta: complex) -> np.ndarray:
    """Displacement operator exp(beta*b^dag - conj(beta)*b) at the cutoff.

    Built by exponentiating the truncated generator (eigendecomposition of
    its Hermitian form), not from the analytic Fock-basis formula, so all
    operators share one truncation convention.  Unitary to rounding.
    """
    d = _dim(space)
    if abs(beta) ** 2 > d / 4:
        warnings.warn(
            f"displacement |beta|^2={abs(beta)**2:.3g} exceeds dim/4={d/4:.3g}; "
            "increase the cutoff",
            CutoffWarning,
            stacklevel=2,
        )
    if beta == 0:
        return identity(d)
    b = destroy(d)
    gen = beta * b.conj().T - np.conj(beta) * b
    herm = -1j * gen  # Hermitian; exp(i*herm) = exp(gen)
    evals, vecs = np.linalg.eigh(herm)
    return (vecs * np.exp(1j * evals)) @ vecs.conj().T


def fock_state(space, n: int) -> np.ndarray:
    d = _dim(space)
    if not 0 <= n < d:
        raise ValueError(f"Fock index {n} outside [0, {d})")
    vec = np.zeros(d, dtype=complex)
    vec[n] = 1.0
    return vec


def coherent_state(space, beta: complex) -> np.ndarray:
    """Coherent state amplitudes e^{-|beta|^2/2} beta^n / sqrt(n!), renormalized.

    Warns when the truncation discards more than 1e-8 of the weight.
    """
    d = _dim(space)
    n = np.arange(d)
    # log-domain to avoid factorial overflow at large cutoffs
    if beta == 0:
        return fock_state(d, 0)
    log_mag = n * np.log(abs(beta)) - 0.5 * gammaln(n + 1) - abs(beta) ** 2 / 2
    phase = np.exp(1j * n * np.angle(beta))
    amps = np.exp(log_mag) * phase
    kept = float(np.sum(np.abs(amps) ** 2))
    discarded = 1.0 - kept
    if discarded > 1e-8:
        warnings.warn(
            f"coherent state |beta|={abs(beta):.3g} discards weight "
            f"{discarded:.3g} at dim={d}",
            CutoffWarning,
            stacklevel=2,
        )
    return amps / math.sqrt(kept)


def cat_state(space, beta0: float, parity: str) -> np.ndarray:
    """Even/odd Schroedinger cat: N_pm (|beta0> pm |-beta0>), beta0 real >= 0.

    The wrong-parity Fock sector is exactly zero by construction.  The odd
    cat at beta0 = 0 is the empty superposition and raises.
    """
    sign = _parity_sign(parity)
    if beta0 < 0:
        raise ValueError("cat amplitude beta0 must be non-negative")
    if beta0 == 0:
        if sign < 0:
            raise ValueError("odd cat undefined at zero amplitude")
        return fock_state(space, 0)
    d = _dim(space)
    plus = coherent_state(d, beta0)
    minus = coherent_state(d, -beta0)
    amps = plus + sign * minus
    # enforce the exact parity sector (the sum already cancels there)
    n = np.arange(d)
    amps[(n % 2) != (0 if sign > 0 else 1)] = 0.0
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise ValueError("cat state has no support at this cutoff")
    return amps / norm


def _parity_sign(parity) -> int:
    if parity in ("+", 1, +1):
        return +1
    if parity in ("-", -1):
        return -1
    raise ValueError(f"parity must be '+' or '-', got {parity!r}")


def displaced_fock_state(space, n: int, beta: complex) -> np.ndarray:
    """D(beta)|n>."""
    return displacement(space, beta) @ fock_state(space, n)


# ---------------------------------------------------------------------------
# multi-mode layout


@dataclass(frozen=True)
class ProductLayout:
    """Ordered tensor factors, e.g. a1 (x) b (x) a2 for a single link."""

    spaces: tuple[HilbertSpace, ...]

    def __post_init__(self):
        if len(self.spaces) < 1:
            raise ValueError("layout needs at least one factor")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.spaces)

    def site(self, label: str) -> int:
        return self.labels.index(label)

    def embed(self, op, site: int):
        """Lift a single-mode operator to the full product space."""
        if not 0 <= site < len(self.spaces):
            raise ValueError(f"site index {site} outside layout")
        d_op = op.shape[0]
        if d_op != self.dims[site]:
            raise ValueError(
                f"operator dim {d_op} != factor dim {self.dims[site]} at site {site}"
            )
        factors = [
            op if i == site else identity(d) for i, d in enumerate(self.dims)
        ]
        return tensor(factors)

    def product_state(self, states) -> np.ndarray:
        states = list(states)
        if len(states) != len(self.spaces):
            raise ValueError("one state per factor required")
        out = states[0]
        for s in states[1:]:
            out = np.kron(out, s)
        return out


def tensor(ops):
    """Kronecker product of operators in the declared order.

    Returns a dense array below SPARSE_THRESHOLD total dimension and a CSR
    matrix above it.
    """
    ops = list(ops)
    if not ops:
        raise ValueError("tensor of zero operators")
    total = 1
    for op in ops:
        if op.shape[0] != op.shape[1]:
            raise ValueError("tensor factors must be square")
        total *= op.shape[0]
    if total > SPARSE_THRESHOLD:
        out = sp.csr_matrix(ops[0])
        for op in ops[1:]:
            out = sp.kron(out, sp.csr_matrix(op), format="csr")
        return out
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def partial_trace(rho: np.ndarray, dims, keep: int) -> np.ndarray:
    """Reduced density matrix of factor `keep` from rho on prod(dims).

    Trace is preserved; the result is Hermitian and PSD whenever rho is.
    """
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if not 0 <= keep < n:
        raise ValueError(f"keep index {keep} outside layout of {n} factors")
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"rho shape {rho.shape} incompatible with dims {dims}")
    resh = np.asarray(rho, dtype=complex).reshape(dims + dims)
    # repeated einsum indices on traced factors, distinct pair on the kept one
    bra = [chr(ord("a") + i) for i in range(n)]
    ket = list(bra)
    ket[keep] = chr(ord("a") + n)
    spec = "".join(bra) + "".join(ket) + "->" + bra[keep] + ket[keep]
    return np.einsum(spec, resh)


def density_matrix(psi: np.ndarray) -> np.ndarray:
    return np.outer(psi, psi.conj())


def check_density_matrix(rho: np.ndarray, tol: float = 1e-9) -> None:
    """Validate Hermiticity, unit trace and positivity; raises on failure."""
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol:
        raise ValueError(f"density matrix not Hermitian: deviation {herm:.3g}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density matrix trace {tr} != 1")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -tol:
        raise ValueError(f"density matrix has negative eigenvalue {evals.min():.3g}")


def check_hermitian(op, tol: float = 1e-12, name: str = "operator") -> None:
    if sp.issparse(op):
        dev = abs(op - op.conj().T)
        worst = dev.max() if dev.nnz else 0.0
    else:
        worst = np.max(np.abs(op - op.conj().T))
    if worst > tol:
        raise ValueError(f"{name} not Hermitian within {tol}: deviation {worst:.3g}")


def expectation(op, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, op @ psi))


def fidelity(psi: np.ndarray, phi: np.ndarray) -> float:
    return float(abs(np.vdot(psi, phi)) ** 2)


# ---------------------------------------------------------------------------
# displaced-oscillator overlaps


def franck_condon(
    n: int,
    m: int,
    alpha: complex,
    beta: complex,
    dim: int | None = None,
    rtol: float = 1e-10,
    max_dim: int = 4096,
) -> complex:
    """Overlap <n| D(alpha) D(beta)^dag |m> of displaced number states.

    Evaluated as a matrix product at a finite cutoff; the cutoff is doubled
    until the value moves by less than `rtol`, starting from `dim` (or an
    occupation-based guess).  Raises ConvergenceError at max_dim.
    """
    if n < 0 or m < 0:
        raise ValueError("Fock indices must be non-negative")
    start = dim or max(
        16, 2 * (max(n, m) + 1), int(math.ceil(4 * (abs(alpha) + abs(beta)) ** 2)) + 8
    )
    d = int(start)
    prev = None
    while d <= max_dim:
        if max(n, m) >= d:
            d *= 2
            continue
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CutoffWarning)
            op = displacement(d, alpha) @ displacement(d, beta).conj().T
        val = complex(op[n, m])
        if prev is not None and abs(val - prev) < rtol:
            return val
        prev = val
        d *= 2
    raise ConvergenceError(
        f"franck_condon({n},{m},{alpha},{beta}) not converged at dim {max_dim}"
    )
