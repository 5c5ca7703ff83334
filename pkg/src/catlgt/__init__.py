"""Numerical simulator for Z2 lattice-gauge dynamics on cat-qubit resonator
networks: truncated-Fock operator algebra, Hamiltonian assembly, exact time
evolution, spectral and phase-space diagnostics, and figure recipes."""

__version__ = "0.1.0"
