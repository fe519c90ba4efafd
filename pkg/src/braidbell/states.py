"""Computational and general Bell bases, plus the JSON state file format."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import config
from .braid import sigma
from .errors import DimensionError, InvalidStateError, TooLargeError
from .tensor_core import StateVector


class BasisKind(enum.Enum):
    COMPUTATIONAL = "computational"
    BELL = "bell"


def _check_n(n: int, minimum: int = 1) -> None:
    if n < minimum:
        raise DimensionError(f"need at least {minimum} qubit(s), got {n}")
    if n > config.max_qubits():
        raise TooLargeError(f"{n} qubits exceeds the cap of {config.max_qubits()}")


def _check_index(n: int, index: int) -> None:
    if not 1 <= index <= 1 << n:
        raise DimensionError(f"basis index {index} outside [1, {1 << n}]")


def computational_state(n: int, index: int) -> StateVector:
    """|C index>: 1 at position ``index - 1``, so index 1 is |0...0>."""
    _check_n(n)
    _check_index(n, index)
    amps = np.zeros(1 << n, dtype=complex)
    amps[index - 1] = 1.0
    return StateVector(n, amps)


@lru_cache(maxsize=16)
def _bell_operator_cached(n: int) -> np.ndarray:
    out = np.eye(1 << n, dtype=complex)
    for i in range(1, n):
        out = out @ sigma(i, n)
    out.setflags(write=False)
    return out


def bell_operator(n: int) -> np.ndarray:
    """The product sigma_1 sigma_2 ... sigma_{n-1}."""
    _check_n(n, 2)
    return _bell_operator_cached(n)


def bell_state(n: int, index: int) -> StateVector:
    """|B index> = sigma_1 ... sigma_{n-1} |C index>, i.e. column ``index - 1`` of the product."""
    _check_n(n, 2)
    _check_index(n, index)
    return StateVector(n, bell_operator(n)[:, index - 1])


def basis_state(kind: BasisKind | str, n: int, index: int) -> StateVector:
    kind = BasisKind(kind)
    if kind is BasisKind.BELL:
        return bell_state(n, index)
    return computational_state(n, index)


def bell_basis(n: int) -> list[StateVector]:
    return [bell_state(n, k) for k in range(1, (1 << n) + 1)]


def ghz_state(n: int = 3) -> StateVector:
    """(|0...0> + |1...1>) / sqrt(2)."""
    _check_n(n, 2)
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return StateVector(n, amps)


def gram_deviation(states: list[StateVector]) -> float:
    m = np.array([s.amplitudes for s in states]).T
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[1]))))


@dataclass(frozen=True)
class TermStructure:
    num_qubits: int
    term_count: int
    magnitudes: tuple[float, ...]
    expected_count: int
    expected_magnitude: float
    matches: bool


def bell_term_structure(state: StateVector, tol: float | None = None) -> TermStructure:
    """Count nonzero amplitudes and compare with the 2^(n-1) equal-weight pattern."""
    tol = config.settings.algebra_tol if tol is None else tol
    n = state.num_qubits
    mags = np.abs(state.amplitudes)
    nonzero = mags[mags > tol]
    expected_count = 1 << (n - 1) if n >= 1 else 1
    expected_mag = 2.0 ** (-(n - 1) / 2)
    matches = nonzero.size == expected_count and bool(
        np.all(np.abs(nonzero - expected_mag) <= tol)
    )
    return TermStructure(
        n, int(nonzero.size), tuple(float(x) for x in nonzero), expected_count, expected_mag, matches
    )


def basis_label(index0: int, n: int) -> str:
    """Bit string for a 0-based basis index, qubit A leftmost."""
    return format(index0, f"0{n}b") if n else ""


# state file: {"n": int, "amplitudes": [[re, im], ...]} in basis-index order


def state_to_dict(state: StateVector, digits: int = 12) -> dict:
    def f(x: float) -> float:
        v = float(f"{x:.{digits}g}")
        return 0.0 if v == 0 else v

    return {
        "n": state.num_qubits,
        "amplitudes": [[f(a.real), f(a.imag)] for a in state.amplitudes],
    }


def state_to_json(state: StateVector, digits: int = 12) -> str:
    return json.dumps(state_to_dict(state, digits))


def state_from_dict(data: dict, normalize: bool = False) -> StateVector:
    try:
        n = int(data["n"])
        pairs = data["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStateError(f"malformed state document: {exc}") from exc
    if amps.size != 1 << n:
        raise DimensionError(f"{amps.size} amplitudes given for n={n}")
    if normalize:
        amps = amps / np.linalg.norm(amps)
    else:
        # 12 significant digits in the file format leave ~1e-12 norm slack
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-10:
            raise InvalidStateError(f"state norm is {norm!r}, expected 1")
        amps = amps / norm
    return StateVector(n, amps)


def state_from_json(text: str, normalize: bool = False) -> StateVector:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"state file is not valid JSON: {exc}") from exc
    return state_from_dict(data, normalize)
