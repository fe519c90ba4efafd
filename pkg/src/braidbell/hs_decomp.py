"""Hilbert-Schmidt (Pauli-string) decomposition of n-qubit density matrices.

A label is a tuple over {0, 1, 2, 3} = {I, X, Y, Z}, one entry per qubit with A
first. Coefficients are stored flat, indexed by the base-4 value of the label
(qubit A is the most significant digit), so ``coeffs[0]`` is the identity term.

For three qubits the coefficients have traditional names: one-qubit vectors
``r`` (A), ``s`` (B), ``p`` (C); pair tensors ``t`` (B,C), ``o`` (A,C), ``f`` (A,B);
and the three-qubit tensor ``G``. Pauli indices 1, 2, 3 in these names mean X, Y, Z.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import config
from .density import DensityMatrix, qubit_letter
from .errors import DimensionError, InvalidStateError, TooLargeError
from .tensor_core import PAULIS, kron_all

LETTERS = "IXYZ"

# names of the qubit subsets for three-qubit states
_THREE_QUBIT_NAMES = {
    (1,): "r",
    (2,): "s",
    (3,): "p",
    (2, 3): "t",
    (1, 3): "o",
    (1, 2): "f",
    (1, 2, 3): "G",
}


def label_to_str(label) -> str:
    return "".join(LETTERS[k] for k in label)


def label_from_str(text: str) -> tuple[int, ...]:
    try:
        return tuple(LETTERS.index(ch) for ch in text.upper())
    except ValueError:
        raise DimensionError(f"invalid Pauli label {text!r}; use letters I, X, Y, Z") from None


def label_index(label) -> int:
    idx = 0
    for k in label:
        if not 0 <= k <= 3:
            raise DimensionError(f"Pauli index {k} outside 0..3")
        idx = 4 * idx + k
    return idx


def label_at(index: int, n: int) -> tuple[int, ...]:
    digits = []
    for _ in range(n):
        index, d = divmod(index, 4)
        digits.append(d)
    return tuple(reversed(digits))


def weight(label) -> int:
    return sum(1 for k in label if k)


def support(label) -> tuple[int, ...]:
    """1-based qubits carrying a non-identity factor."""
    return tuple(q + 1 for q, k in enumerate(label) if k)


def pauli_string_matrix(label) -> np.ndarray:
    label = tuple(label)
    for k in label:
        if not 0 <= k <= 3:
            raise DimensionError(f"Pauli index {k} outside 0..3")
    return kron_all(*(PAULIS[k] for k in label))


def parameter_name(label) -> str | None:
    """Conventional name (``"t22"``, ``"G113"``...) of a three-qubit label, else None."""
    label = tuple(label)
    if len(label) != 3 or weight(label) == 0:
        return None
    sup = support(label)
    return _THREE_QUBIT_NAMES[sup] + "".join(str(label[q - 1]) for q in sup)


def label_from_name(name: str) -> tuple[int, ...]:
    """Inverse of :func:`parameter_name`: ``"o11"`` -> (1, 0, 1)."""
    inverse = {v: k for k, v in _THREE_QUBIT_NAMES.items()}
    sup = inverse.get(name[:1])
    digits = name[1:]
    if sup is None or len(digits) != len(sup) or any(d not in "123" for d in digits):
        raise DimensionError(f"invalid parameter name {name!r}")
    label = [0, 0, 0]
    for q, d in zip(sup, digits):
        label[q - 1] = int(d)
    return tuple(label)


@dataclass(frozen=True, eq=False)
class HSCoefficients:
    num_qubits: int
    coeffs: np.ndarray  # length 4**n, real

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.size != 4**self.num_qubits:
            raise DimensionError(f"{c.size} coefficients do not describe {self.num_qubits} qubits")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __getitem__(self, label) -> float:
        """Look up by tuple ``(1, 2, 0)`` or letter string ``"XYI"``."""
        if isinstance(label, str):
            label = label_from_str(label)
        if len(label) != self.num_qubits:
            raise DimensionError(f"label {label!r} has wrong length")
        return float(self.coeffs[label_index(label)])

    def labels(self):
        return itertools.product(range(4), repeat=self.num_qubits)

    def nonzero(self, tol: float | None = None) -> list[tuple[tuple[int, ...], float]]:
        """(label, value) pairs with |value| > tol, sorted by weight then label."""
        tol = config.settings.report_tol if tol is None else tol
        out = [
            (label_at(i, self.num_qubits), float(v))
            for i, v in enumerate(self.coeffs)
            if abs(v) > tol
        ]
        out.sort(key=lambda lv: (weight(lv[0]), lv[0]))
        return out

    def weight_slice(self, k: int) -> dict[tuple[int, ...], float]:
        return {
            label_at(i, self.num_qubits): float(v)
            for i, v in enumerate(self.coeffs)
            if weight(label_at(i, self.num_qubits)) == k
        }

    def named(self, tol: float | None = None) -> dict[str, float]:
        """Nonzero three-qubit parameters by conventional name (identity excluded)."""
        if self.num_qubits != 3:
            raise DimensionError("parameter names are defined for 3 qubits")
        return {parameter_name(l): v for l, v in self.nonzero(tol) if weight(l)}

    def param(self, name: str) -> float:
        """Three-qubit coefficient by name, e.g. ``"G113"``."""
        return self[label_from_name(name)]

    # three-qubit views
    def _tensor(self, qubits: tuple[int, ...]) -> np.ndarray:
        if self.num_qubits != 3:
            raise DimensionError("named tensors are defined for 3 qubits")
        out = np.zeros((3,) * len(qubits))
        for idx in itertools.product(range(1, 4), repeat=len(qubits)):
            label = [0, 0, 0]
            for q, k in zip(qubits, idx):
                label[q - 1] = k
            out[tuple(i - 1 for i in idx)] = self.coeffs[label_index(label)]
        return out

    @property
    def r(self):
        return self._tensor((1,))

    @property
    def s(self):
        return self._tensor((2,))

    @property
    def p(self):
        return self._tensor((3,))

    @property
    def t(self):
        return self._tensor((2, 3))

    @property
    def o(self):
        return self._tensor((1, 3))

    @property
    def f(self):
        return self._tensor((1, 2))

    @property
    def G(self):
        return self._tensor((1, 2, 3))


def _pauli_expectation(m: np.ndarray, label, cols: np.ndarray, n: int) -> complex:
    """Tr(m P) using that P is monomial: P[j ^ flip, j] = i^nY (-1)^popcount(j & phase)."""
    flip = phase = ny = 0
    for q, k in enumerate(label):
        bit = 1 << (n - 1 - q)
        if k in (1, 2):
            flip |= bit
        if k in (2, 3):
            phase |= bit
        ny += k == 2
    signs = _parity_signs(cols & phase)
    return (1j) ** ny * complex(np.sum(m[cols, cols ^ flip] * signs))


def _parity_signs(values: np.ndarray) -> np.ndarray:
    parity = np.zeros_like(values)
    v = values.copy()
    while np.any(v):
        parity ^= v & 1
        v >>= 1
    return 1 - 2 * parity


def hs_decompose(rho: DensityMatrix) -> HSCoefficients:
    """c_L = Tr(rho P_L) for all 4^n Pauli strings."""
    n = rho.num_qubits
    if n > config.settings.max_hs_qubits:
        raise TooLargeError(
            f"{n}-qubit decomposition has {4**n} terms; cap is {config.settings.max_hs_qubits} qubits"
        )
    m = rho.matrix
    cols = np.arange(1 << n)
    values = np.array(
        [_pauli_expectation(m, label, cols, n) for label in itertools.product(range(4), repeat=n)]
    )
    if np.max(np.abs(values.imag)) > config.settings.hermitian_tol:
        raise InvalidStateError("Pauli expectations are not real; input is not Hermitian")
    return HSCoefficients(n, values.real)


def hs_reconstruct(coeffs: HSCoefficients) -> DensityMatrix:
    """rho = 2^-n sum_L c_L P_L."""
    n = coeffs.num_qubits
    dim = 1 << n
    m = np.zeros((dim, dim), dtype=complex)
    for i, c in enumerate(coeffs.coeffs):
        if c:
            m += c * pauli_string_matrix(label_at(i, n))
    return DensityMatrix(n, m / dim)


@dataclass(frozen=True)
class ArmEntry:
    label: tuple[int, ...]
    value: float
    arms: str  # qubit letters measured, e.g. "BC"
    name: str | None


@dataclass(frozen=True)
class ArmReport:
    num_qubits: int
    by_weight: dict  # weight -> list[ArmEntry], weights >= 1 only

    def entries(self, k: int) -> list[ArmEntry]:
        return self.by_weight.get(k, [])


def classify_arms(coeffs: HSCoefficients, tol: float | None = None) -> ArmReport:
    """Group the nonzero non-identity coefficients by how many qubits they involve."""
    groups: dict[int, list[ArmEntry]] = {}
    for label, value in coeffs.nonzero(tol):
        w = weight(label)
        if w == 0:
            continue
        arms = "".join(qubit_letter(q) for q in support(label))
        groups.setdefault(w, []).append(ArmEntry(label, value, arms, parameter_name(label)))
    return ArmReport(coeffs.num_qubits, groups)


def highest_weight_support(coeffs: HSCoefficients, tol: float | None = None) -> bool:
    """True when some coefficient involving every qubit is nonzero."""
    tol = config.settings.report_tol if tol is None else tol
    n = coeffs.num_qubits
    return any(weight(l) == n for l, _ in coeffs.nonzero(tol))


def parseval_sum(coeffs: HSCoefficients) -> float:
    return float(np.sum(coeffs.coeffs**2))


# report serialization


def coefficients_to_dict(coeffs: HSCoefficients, tol: float | None = None, digits: int = 12) -> dict:
    items = []
    for label, value in coeffs.nonzero(tol):
        v = float(f"{value:.{digits}g}")
        items.append({"label": label_to_str(label), "value": 0.0 if v == 0 else v})
    return {"n": coeffs.num_qubits, "coefficients": items}


def coefficients_to_json(coeffs: HSCoefficients, tol: float | None = None) -> str:
    return json.dumps(coefficients_to_dict(coeffs, tol))


def coefficients_from_dict(data: dict) -> HSCoefficients:
    """Missing labels are zero."""
    n = int(data["n"])
    c = np.zeros(4**n)
    for item in data["coefficients"]:
        label = label_from_str(item["label"])
        if len(label) != n:
            raise DimensionError(f"label {item['label']!r} does not have {n} letters")
        c[label_index(label)] = float(item["value"])
    return HSCoefficients(n, c)


def coefficients_table(coeffs: HSCoefficients, tol: float | None = None) -> str:
    """Aligned text table sorted by weight then label."""
    rows = []
    for label, value in coeffs.nonzero(tol):
        arms = "".join(qubit_letter(q) for q in support(label)) or "-"
        rows.append(
            (str(weight(label)), label_to_str(label), arms, parameter_name(label) or "", f"{value:.6g}")
        )
    header = ("weight", "label", "arms", "name", "value")
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    if coeffs.num_qubits != 3:
        widths[3] = 0
    lines = []
    for r in [header, *rows]:
        cells = [c.ljust(w) for c, w in zip(r, widths) if w]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)
