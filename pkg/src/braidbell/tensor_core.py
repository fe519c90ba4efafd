"""Dense complex linear algebra: Kronecker products, Hermitian eigensystems, PSD roots.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Qubit A is always
the leftmost Kronecker factor and the most significant bit of a basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import config
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    NotPSDError,
    TooLargeError,
)

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# index 0..3 -> I, Sigma_x, Sigma_y, Sigma_z
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in PAULIS:
    _m.setflags(write=False)


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def _check_cap(rows: int, cols: int) -> None:
    cap = config.settings.max_dim
    if rows > cap or cols > cap:
        raise TooLargeError(f"result of shape ({rows}, {cols}) exceeds the dimension cap {cap}")


def _require_square(m: np.ndarray, what: str = "matrix") -> None:
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {m.shape}")


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``; ``a`` indexes the more significant bits."""
    a, b = as_matrix(a), as_matrix(b)
    _check_cap(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    if not factors:
        return np.ones((1, 1), dtype=complex)
    return reduce(kron, factors)


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def is_hermitian(h, tol: float | None = None) -> bool:
    tol = config.settings.hermitian_tol if tol is None else tol
    h = as_matrix(h)
    return h.shape[0] == h.shape[1] and float(np.max(np.abs(h - h.conj().T), initial=0.0)) <= tol


def is_unitary(u, tol: float | None = None) -> bool:
    tol = config.settings.algebra_tol if tol is None else tol
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))) <= tol


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def hermitian_eigensystem(h, max_sweeps: int | None = None):
    """Eigen-decompose a Hermitian matrix with cyclic Jacobi rotations.

    Each rotation first removes the phase of the pivot ``h[p, q]`` and then applies
    the classical real Jacobi rotation, so the matrix stays Hermitian throughout.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, column ``k`` belongs to ``eigenvalues[k]``

    Raises
    ------
    NotHermitianError
        if ``h`` deviates from its adjoint by more than the configured tolerance.
    ConvergenceError
        if the off-diagonal norm has not vanished after ``max_sweeps`` sweeps.
    """
    h = as_matrix(h)
    _require_square(h)
    _check_cap(*h.shape)
    if not is_hermitian(h):
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    max_sweeps = config.settings.max_sweeps if max_sweeps is None else max_sweeps

    n = h.shape[0]
    a = 0.5 * (h + h.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)
    target = np.finfo(float).eps * scale

    for _ in range(max_sweeps + 1):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= target * 1e-3:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(h) -> np.ndarray:
    return hermitian_eigensystem(h)[0]


def rounding_floor(w: np.ndarray) -> float:
    """Magnitude below which eigenvalues of an O(1) spectrum are indistinguishable from zero."""
    return 64 * np.finfo(float).eps * max(float(np.max(np.abs(w), initial=0.0)), 1.0)


def sqrt_psd(h) -> np.ndarray:
    """Hermitian PSD square root.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero, as are positive ones at rounding level.
    """
    w, v = hermitian_eigensystem(h)
    tol = config.settings.hermitian_tol
    if w.size and w[0] < -tol:
        raise NotPSDError(f"matrix has eigenvalue {w[0]:.3e} below -{tol:g}")
    # sqrt would amplify rounding-level eigenvalues to ~1e-8
    root = np.sqrt(np.where(w > rounding_floor(w), w, 0.0))
    s = (v * root) @ v.conj().T
    return 0.5 * (s + s.conj().T)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm pure state of ``num_qubits`` qubits (qubit A most significant)."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if self.num_qubits < 0 or amps.size != 1 << self.num_qubits:
            raise DimensionError(
                f"{amps.size} amplitudes do not describe {self.num_qubits} qubits"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > config.settings.norm_tol:
            raise InvalidStateError(f"state norm is {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = amps.size.bit_length() - 1
        if amps.size == 0 or 1 << n != amps.size:
            raise DimensionError(f"length {amps.size} is not a power of two")
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n, amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def inner(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return self.num_qubits == other.num_qubits and np.allclose(
            self.amplitudes, other.amplitudes, rtol=0, atol=atol
        )

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self.amplitudes!r})"
