"""Density matrices, partial traces and purity.

Qubit labels are 1-based with 1 = A as the leftmost factor; letters ``"A".."Z"``
are accepted wherever a label is expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import config
from .errors import DimensionError, InvalidStateError, NotHermitianError, NotPSDError
from .tensor_core import StateVector, as_matrix, eigvalsh


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, PSD operator on ``num_qubits`` qubits.

    Invariants are checked on construction. Pass ``validate=False`` only for
    matrices already known to be valid (e.g. exact outer products).
    """

    num_qubits: int
    matrix: np.ndarray
    validate: bool = True

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        dim = 1 << self.num_qubits
        if m.shape != (dim, dim):
            raise DimensionError(f"matrix shape {m.shape} does not match {self.num_qubits} qubits")
        if self.validate:
            s = config.settings
            if np.max(np.abs(m - m.conj().T)) > s.hermitian_tol:
                raise NotHermitianError("density matrix is not Hermitian")
            tr = np.trace(m).real
            if abs(tr - 1.0) > s.norm_tol:
                raise InvalidStateError(f"density matrix trace is {tr!r}, expected 1")
            lo = eigvalsh(m)[0]
            if lo < -s.hermitian_tol:
                raise NotPSDError(f"density matrix has eigenvalue {lo:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, matrix) -> "DensityMatrix":
        m = as_matrix(matrix)
        n = m.shape[0].bit_length() - 1
        if m.shape[0] != 1 << n:
            raise DimensionError(f"dimension {m.shape[0]} is not a power of two")
        return cls(n, m)

    @classmethod
    def maximally_mixed(cls, n: int) -> "DensityMatrix":
        return cls(n, np.eye(1 << n) / (1 << n))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return f"DensityMatrix(num_qubits={self.num_qubits}, matrix={self.matrix!r})"


def qubit_index(label: int | str) -> int:
    """Normalize a qubit label (``3`` or ``"C"``) to its 1-based integer."""
    if isinstance(label, str):
        s = label.strip()
        if s.isdigit():
            return int(s)
        if len(s) == 1 and s.isalpha():
            return ord(s.upper()) - ord("A") + 1
        raise DimensionError(f"invalid qubit label {label!r}")
    return int(label)


def qubit_letter(label: int) -> str:
    return chr(ord("A") + label - 1)


def density_from_pure(state: StateVector) -> DensityMatrix:
    v = state.amplitudes
    return DensityMatrix(state.num_qubits, np.outer(v, v.conj()), validate=False)


def partial_trace(rho: DensityMatrix, drop: Iterable[int | str]) -> DensityMatrix:
    """Trace out the qubits in ``drop``; the kept qubits retain their relative order."""
    n = rho.num_qubits
    dropped = sorted({qubit_index(q) for q in drop})
    if not dropped:
        raise DimensionError("nothing to trace out")
    if any(not 1 <= q <= n for q in dropped):
        raise DimensionError(f"qubit labels {dropped} outside [1, {n}]")
    if len(dropped) == n:
        raise DimensionError("cannot trace out every qubit")
    kept = [q for q in range(1, n + 1) if q not in dropped]

    # bit position of label q in a basis index (A is the most significant bit)
    def spread(values: np.ndarray, labels: list[int]) -> np.ndarray:
        out = np.zeros_like(values)
        k = len(labels)
        for j, q in enumerate(labels):
            bit = (values >> (k - 1 - j)) & 1
            out |= bit << (n - q)
        return out

    kept_idx = spread(np.arange(1 << len(kept)), kept)
    drop_idx = spread(np.arange(1 << len(dropped)), dropped)
    m = rho.matrix
    out = np.zeros((kept_idx.size, kept_idx.size), dtype=complex)
    for d in drop_idx:
        rows = kept_idx | d
        out += m[np.ix_(rows, rows)]
    return DensityMatrix(len(kept), out)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2), computed as the squared Frobenius norm of the Hermitian matrix."""
    return float(np.sum(np.abs(rho.matrix) ** 2))
