"""Numerical tolerances and size caps shared across the package.

Functions read ``settings`` at call time, so tests and callers may adjust
a field temporarily (see :func:`override`).
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    # construction / algebra identities
    algebra_tol: float = 1e-12
    # eigen residuals and orthonormality of eigenvectors
    eigen_tol: float = 1e-9
    # Hermiticity assertion and PSD slack
    hermitian_tol: float = 1e-10
    # unit-norm / unit-trace checks
    norm_tol: float = 1e-12
    # default threshold for reporting a coefficient as nonzero
    report_tol: float = 1e-9
    # largest matrix axis accepted by dense operations (2**10)
    max_dim: int = 1 << 10
    # largest qubit count for full Hilbert-Schmidt decomposition
    max_hs_qubits: int = 5
    # Jacobi sweep limit before ConvergenceError
    max_sweeps: int = 100


settings = Settings()


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace fields of the global settings."""
    global settings
    old = settings
    settings = replace(old, **changes)
    try:
        yield settings
    finally:
        settings = old


def max_qubits() -> int:
    return settings.max_dim.bit_length() - 1
