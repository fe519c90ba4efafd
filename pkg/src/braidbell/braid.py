"""The R gate, the B_n generators built from it, and braid words acting on states.

Generator ``sigma(i, n)`` places R on qubits ``(i, i+1)`` (1-based, qubit A leftmost)
and identities elsewhere. A word such as ``"s1 s2^-1"`` denotes the operator
product in textual order, so its rightmost letter acts on a state first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import config
from .errors import BraidIndexError, BraidSyntaxError, DimensionError, TooLargeError
from .tensor_core import I2, SIGMA_X, SIGMA_Y, StateVector, dagger, kron, kron_all

_SQRT1_2 = 1.0 / np.sqrt(2.0)


def r_matrix() -> np.ndarray:
    """The 4x4 real orthogonal R gate entangling two neighbouring qubits."""
    r = _SQRT1_2 * np.array(
        [[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]], dtype=complex
    )
    return r


def r_matrix_exponential() -> np.ndarray:
    """R evaluated as exp(i pi/4 X⊗Y).

    (X⊗Y)^2 = I, so the exponential series collapses to cos(pi/4) I + i sin(pi/4) X⊗Y.
    """
    xy = kron(SIGMA_X, SIGMA_Y)
    return np.cos(np.pi / 4) * np.eye(4) + 1j * np.sin(np.pi / 4) * xy


def _check_generator(i: int, n: int) -> None:
    if n < 2:
        raise DimensionError(f"braid generators need at least 2 qubits, got {n}")
    if n > config.max_qubits():
        raise TooLargeError(f"{n} qubits exceeds the cap of {config.max_qubits()}")
    if not 1 <= i <= n - 1:
        raise DimensionError(f"generator index {i} outside [1, {n - 1}]")


@lru_cache(maxsize=64)
def _sigma_cached(i: int, n: int) -> np.ndarray:
    m = kron_all(np.eye(1 << (i - 1)), r_matrix(), np.eye(1 << (n - i - 1)))
    m.setflags(write=False)
    return m


def sigma(i: int, n: int) -> np.ndarray:
    """Generator sigma_i of B_n as a 2^n x 2^n unitary (read-only array)."""
    _check_generator(i, n)
    return _sigma_cached(i, n)


def sigma_inverse(i: int, n: int) -> np.ndarray:
    return dagger(sigma(i, n))


def sigma_pauli_form(i: int, n: int) -> np.ndarray:
    """sigma_i rebuilt as (I + i X_i Y_{i+1}) / sqrt(2) from single-qubit factors."""
    _check_generator(i, n)
    factors = [I2] * n
    factors[i - 1] = SIGMA_X
    factors[i] = SIGMA_Y
    xy = kron_all(*factors)
    return _SQRT1_2 * np.eye(1 << n) + 1j * _SQRT1_2 * xy


def _max_dev(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True)
class RelationCheck:
    kind: str  # "inverse", "far-commutation" or "braid"
    generators: tuple[int, ...]
    deviation: float
    passed: bool

    def describe(self) -> str:
        g = self.generators
        if self.kind == "inverse":
            return f"s{g[0]} s{g[0]}^-1 = I"
        if self.kind == "far-commutation":
            return f"s{g[0]} s{g[1]} = s{g[1]} s{g[0]}"
        i, j = g
        return f"s{i} s{j} s{i} = s{j} s{i} s{j}"


@dataclass(frozen=True)
class RelationReport:
    num_qubits: int
    checks: tuple[RelationCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_deviation(self) -> float:
        return max((c.deviation for c in self.checks), default=0.0)

    def of_kind(self, kind: str) -> list[RelationCheck]:
        return [c for c in self.checks if c.kind == kind]


def check_yang_baxter(n: int, tol: float | None = None) -> tuple[bool, float]:
    """sigma_i sigma_{i+1} sigma_i == sigma_{i+1} sigma_i sigma_{i+1} for every adjacent pair."""
    if n < 3:
        raise DimensionError("the Yang-Baxter relation needs at least 3 qubits")
    tol = config.settings.algebra_tol if tol is None else tol
    dev = 0.0
    for i in range(1, n - 1):
        a, b = sigma(i, n), sigma(i + 1, n)
        dev = max(dev, _max_dev(a @ b @ a, b @ a @ b))
    return dev < tol, dev


def check_braid_relations(n: int, tol: float | None = None) -> RelationReport:
    """Evaluate every Artin relation of B_n on the matrix representation."""
    tol = config.settings.algebra_tol if tol is None else tol
    checks = []
    ident = np.eye(1 << n)
    for i in range(1, n):
        s = sigma(i, n)
        dev = _max_dev(s @ sigma_inverse(i, n), ident)
        checks.append(RelationCheck("inverse", (i,), dev, dev < tol))
    for i in range(1, n):
        for j in range(i + 1, n):
            a, b = sigma(i, n), sigma(j, n)
            if j - i == 1:
                dev = _max_dev(a @ b @ a, b @ a @ b)
                checks.append(RelationCheck("braid", (i, j), dev, dev < tol))
            else:
                dev = _max_dev(a @ b, b @ a)
                checks.append(RelationCheck("far-commutation", (i, j), dev, dev < tol))
    return RelationReport(n, tuple(checks))


@dataclass(frozen=True)
class BraidWord:
    """Ordered generator letters ``(index, exponent)`` over B_n, exponent in {+1, -1}."""

    num_qubits: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.num_qubits - 1:
                raise DimensionError(f"generator index {i} outside [1, {self.num_qubits - 1}]")
            if e not in (1, -1):
                raise DimensionError(f"exponent must be +1 or -1, got {e}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.num_qubits, tuple((i, -e) for i, e in reversed(self.letters)))


_TERM = re.compile(r"s(\d+)(\^-1)?")
_SPACE = re.compile(r"\s+")


def parse_braid_word(text: str, n: int) -> BraidWord:
    """Parse ``word := term (whitespace term)*``, ``term := "s" INTEGER ("^-1")?``.

    The empty (or all-blank) string is the identity word.
    """
    if n < 2:
        raise DimensionError(f"braid words need at least 2 qubits, got {n}")
    letters = []
    pos = 0
    m = _SPACE.match(text, pos)
    if m:
        pos = m.end()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            tok = _SPACE.split(text[pos:], maxsplit=1)[0]
            raise BraidSyntaxError(f"unexpected token {tok!r}", text, pos)
        index = int(m.group(1))
        if not 1 <= index <= n - 1:
            raise BraidIndexError(
                f"generator index {index} outside [1, {n - 1}] for n={n}", text, pos
            )
        letters.append((index, -1 if m.group(2) else 1))
        pos = m.end()
        if pos < len(text):
            sep = _SPACE.match(text, pos)
            if not sep:
                raise BraidSyntaxError("expected whitespace between terms", text, pos)
            pos = sep.end()
    return BraidWord(n, tuple(letters))


def braid_word_matrix(word: BraidWord) -> np.ndarray:
    """Operator product of the word's generators in textual order."""
    n = word.num_qubits
    out = np.eye(1 << n, dtype=complex)
    for i, e in word.letters:
        out = out @ (sigma(i, n) if e == 1 else sigma_inverse(i, n))
    return out


def apply_braid_word(word: BraidWord, state: StateVector) -> StateVector:
    if word.num_qubits != state.num_qubits:
        raise DimensionError(
            f"word acts on {word.num_qubits} qubits, state has {state.num_qubits}"
        )
    n = word.num_qubits
    amps = np.array(state.amplitudes)
    for i, e in reversed(word.letters):
        amps = (sigma(i, n) if e == 1 else sigma_inverse(i, n)) @ amps
    return StateVector(n, amps)
