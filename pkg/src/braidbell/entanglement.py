"""Concurrence and partial-transpose (PPT) analysis of two-qubit states."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import config
from .density import DensityMatrix, density_from_pure, partial_trace, qubit_index
from .errors import DimensionError, NotPSDError
from .tensor_core import SIGMA_Y, StateVector, eigvalsh, kron, rounding_floor, sqrt_psd

YY = kron(SIGMA_Y, SIGMA_Y)
YY.setflags(write=False)


def _require_two_qubits(num_qubits: int) -> None:
    if num_qubits != 2:
        raise DimensionError(f"operation is defined for 2 qubits, got {num_qubits}")


@dataclass(frozen=True)
class ConcurrenceResult:
    lambdas: tuple[float, float, float, float]  # decreasing
    concurrence: float


@dataclass(frozen=True)
class PPTResult:
    eigenvalues: tuple[float, ...]  # ascending
    min_eigenvalue: float
    is_ppt: bool
    # separability verdict; None when the criterion is not decisive (more than 2 qubits)
    separable: bool | None


def spin_flip_state(psi: StateVector) -> StateVector:
    _require_two_qubits(psi.num_qubits)
    return StateVector(2, YY @ psi.amplitudes.conj())


def concurrence_pure(psi: StateVector) -> float:
    """|<psi|psi~>| for a two-qubit pure state."""
    return abs(psi.inner(spin_flip_state(psi)))


def spin_flip_density(rho: DensityMatrix) -> np.ndarray:
    _require_two_qubits(rho.num_qubits)
    return YY @ rho.matrix.conj() @ YY


def concurrence_mixed(rho: DensityMatrix) -> ConcurrenceResult:
    """Wootters concurrence max(l1 - l2 - l3 - l4, 0).

    The l_k are square roots of the eigenvalues of rho·rho~. Those are taken from the
    Hermitian matrix sqrt(rho)·rho~·sqrt(rho), which has the same spectrum.
    """
    _require_two_qubits(rho.num_qubits)
    root = sqrt_psd(rho.matrix)
    h = root @ spin_flip_density(rho) @ root
    h = 0.5 * (h + h.conj().T)
    squares = eigvalsh(h)
    tol = config.settings.hermitian_tol
    if squares[0] < -tol:
        raise NotPSDError(f"rho·rho~ has negative eigenvalue {squares[0]:.3e}")
    lambdas = np.sqrt(np.where(squares > rounding_floor(squares), squares, 0.0))[::-1]
    c = max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0)
    return ConcurrenceResult(tuple(float(x) for x in lambdas), float(c))


def partial_transpose(rho: DensityMatrix | np.ndarray, qubit: int | str) -> np.ndarray:
    """Transpose the indices of one qubit only: |k><l| -> |l><k| on that factor."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    n = m.shape[0].bit_length() - 1
    q = qubit_index(qubit)
    if not 1 <= q <= n:
        raise DimensionError(f"qubit label {qubit!r} outside [1, {n}]")
    # axes: row bits (A..), then column bits (A..)
    t = m.reshape((2,) * (2 * n))
    t = np.swapaxes(t, q - 1, n + q - 1)
    return t.reshape(m.shape).copy()


def ppt_check(rho: DensityMatrix, qubit: int | str = 2) -> PPTResult:
    pt = partial_transpose(rho, qubit)
    w = eigvalsh(pt)
    is_ppt = bool(w[0] >= -config.settings.hermitian_tol)
    return PPTResult(
        tuple(float(x) for x in w),
        float(w[0]),
        is_ppt,
        is_ppt if rho.num_qubits == 2 else None,
    )


@dataclass(frozen=True)
class Reduction:
    kept: tuple[int, int]
    traced: tuple[int, ...]
    rho: DensityMatrix
    concurrence: ConcurrenceResult
    ppt: PPTResult


def reduce_to_pair(state: StateVector, kept: tuple[int, int]) -> DensityMatrix:
    rho = density_from_pure(state)
    drop = [q for q in range(1, state.num_qubits + 1) if q not in kept]
    return partial_trace(rho, drop)


def reduction_survey(state: StateVector) -> list[Reduction]:
    """Concurrence and PPT verdict for every reduction of ``state`` to two qubits."""
    n = state.num_qubits
    if n < 3:
        raise DimensionError(f"reduction survey needs at least 3 qubits, got {n}")
    rho = density_from_pure(state)
    out = []
    for kept in itertools.combinations(range(1, n + 1), 2):
        traced = tuple(q for q in range(1, n + 1) if q not in kept)
        reduced = partial_trace(rho, traced)
        out.append(
            Reduction(kept, traced, reduced, concurrence_mixed(reduced), ppt_check(reduced, 2))
        )
    return out
