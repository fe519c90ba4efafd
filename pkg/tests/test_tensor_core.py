import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from braidbell import config
from braidbell.braid import r_matrix
from braidbell.errors import (
    ConvergenceError,
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    NotPSDError,
    TooLargeError,
)
from braidbell.tensor_core import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    StateVector,
    dagger,
    hermitian_eigensystem,
    kron,
    matmul,
    sqrt_psd,
)

from golden import RHO_AB_X4, RHO_RHOTILDE_X8


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T


def random_unitary(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


small = st.integers(1, 3)
entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def cmat(rows, cols):
    return arrays(np.complex128, (rows, cols), elements=entries)


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(I2, I2), np.eye(4))

    def test_x_kron_y_by_hand(self):
        expected = np.array([[0, 0, 0, -1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [1j, 0, 0, 0]])
        assert np.array_equal(kron(SIGMA_X, SIGMA_Y), expected)

    def test_pauli_construction_gives_r(self):
        built = (np.eye(4) + 1j * kron(SIGMA_X, SIGMA_Y)) / np.sqrt(2)
        assert np.max(np.abs(built - r_matrix())) < 1e-15

    def test_entry_layout(self, rng):
        a = rng.normal(size=(2, 3))
        b = rng.normal(size=(3, 2))
        k = kron(a, b)
        assert k.shape == (6, 6)
        for i, j, r, c in [(1, 2, 2, 0), (0, 1, 1, 1), (1, 0, 0, 1)]:
            assert k[i * 3 + r, j * 2 + c] == a[i, j] * b[r, c]

    def test_cap(self):
        with config.override(max_dim=8):
            kron(np.eye(4), np.eye(2))
            with pytest.raises(TooLargeError):
                kron(np.eye(4), np.eye(4))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_associative(self, data):
        shapes = [data.draw(st.tuples(small, small)) for _ in range(3)]
        a, b, c = (data.draw(cmat(*s)) for s in shapes)
        assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), rtol=0, atol=1e-14 * 1e3)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_mixed_product(self, data):
        m, k, p, q, r, s = (data.draw(small) for _ in range(6))
        a, c = data.draw(cmat(m, k)), data.draw(cmat(k, p))
        b, d = data.draw(cmat(q, r)), data.draw(cmat(r, s))
        lhs = matmul(kron(a, b), kron(c, d))
        rhs = kron(matmul(a, c), matmul(b, d))
        scale = max(1.0, float(np.max(np.abs(lhs), initial=0)))
        assert np.max(np.abs(lhs - rhs), initial=0) <= 1e-12 * scale


class TestDaggerMatmul:
    def test_dagger_identity(self):
        assert np.array_equal(dagger(np.eye(3)), np.eye(3))

    def test_dagger_sigma_y_is_hermitian(self):
        assert np.array_equal(dagger(SIGMA_Y), SIGMA_Y)

    def test_r_unitary(self):
        assert np.max(np.abs(dagger(r_matrix()) @ r_matrix() - np.eye(4))) < 1e-12

    def test_xy_is_i_z(self):
        assert np.array_equal(matmul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z)

    def test_right_identity(self, rng):
        a = rng.normal(size=(3, 3))
        assert np.array_equal(matmul(a, np.eye(3)), a)

    def test_traced_state_times_spin_flip(self):
        rho = RHO_AB_X4 / 4
        yy = np.kron(SIGMA_Y, SIGMA_Y)
        assert np.max(np.abs(matmul(rho, yy @ rho.conj() @ yy) - RHO_RHOTILDE_X8 / 8)) < 1e-15

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            matmul(np.eye(2), np.eye(3))


class TestEigensystem:
    def test_sigma_z(self):
        w, _ = hermitian_eigensystem(SIGMA_Z)
        assert np.allclose(w, [-1, 1], atol=1e-15)

    def test_partial_transpose_matrix(self):
        w, _ = hermitian_eigensystem(np.array([[1, 0, 0, 1], [0, 1, -1, 0], [0, -1, 1, 0], [1, 0, 0, 1]]) / 4)
        assert np.allclose(w, [0, 0, 0.5, 0.5], atol=1e-12)

    def test_rho_rho_tilde(self):
        # M/8 with M = 4 rho, rank 2 and eigenvalues (0, 0, 2, 2) -> (0, 0, 1/4, 1/4)
        oracle = np.linalg.eigvalsh(RHO_RHOTILDE_X8 / 8)
        w, _ = hermitian_eigensystem(RHO_RHOTILDE_X8 / 8)
        assert np.allclose(oracle, [0, 0, 0.25, 0.25], atol=1e-14)
        assert np.allclose(w, oracle, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16, 32])
    def test_random_against_lapack(self, rng, n):
        h = random_hermitian(rng, n)
        w, v = hermitian_eigensystem(h)
        assert np.all(np.diff(w) >= 0)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10)
        assert np.max(np.abs(h @ v - v * w)) < 1e-9
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-9
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) < 1e-9

    def test_degenerate(self, rng):
        u = random_unitary(rng, 6)
        h = u @ np.diag([1, 1, 1, -2, -2, 0.5]) @ u.conj().T
        w, v = hermitian_eigensystem(h)
        assert np.allclose(w, [-2, -2, 0.5, 1, 1, 1], atol=1e-12)
        assert np.max(np.abs(h @ v - v * w)) < 1e-9

    def test_already_diagonal(self):
        w, v = hermitian_eigensystem(np.diag([3.0, -1.0, 2.0]))
        assert np.array_equal(w, [-1, 2, 3])
        assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])

    def test_not_hermitian(self):
        with pytest.raises(NotHermitianError):
            hermitian_eigensystem(np.array([[0, 1], [0, 0]]))

    def test_sweep_limit(self, rng):
        with pytest.raises(ConvergenceError):
            hermitian_eigensystem(random_hermitian(rng, 6), max_sweeps=0)


class TestSqrtPSD:
    def test_identity(self):
        assert np.allclose(sqrt_psd(np.eye(4)), np.eye(4), atol=1e-15)

    def test_diagonal(self):
        assert np.allclose(sqrt_psd(np.diag([4, 1, 0, 0])), np.diag([2, 1, 0, 0]), atol=1e-15)

    def test_traced_state(self):
        rho = RHO_AB_X4 / 4
        s = sqrt_psd(rho)
        assert np.max(np.abs(s - s.conj().T)) < 1e-15
        assert np.max(np.abs(s @ s - rho)) < 1e-12

    def test_projector_fixed_point(self, rng):
        u = random_unitary(rng, 5)
        p = u[:, :2] @ u[:, :2].conj().T
        assert np.max(np.abs(sqrt_psd(p) - p)) < 1e-10

    def test_clamps_tiny_negative(self):
        s = sqrt_psd(np.diag([1.0, -1e-12]))
        assert np.allclose(s, np.diag([1, 0]))

    def test_rejects_negative(self):
        with pytest.raises(NotPSDError):
            sqrt_psd(np.diag([1.0, -1e-6]))


class TestStateVector:
    def test_normalization_enforced(self):
        with pytest.raises(InvalidStateError):
            StateVector(1, [1, 1])

    def test_length_must_match(self):
        with pytest.raises(DimensionError):
            StateVector(2, [1, 0])

    def test_immutable(self):
        s = StateVector(1, [1, 0])
        with pytest.raises(ValueError):
            s.amplitudes[0] = 0

    def test_from_amplitudes(self):
        s = StateVector.from_amplitudes([1, 0, 0, 1], normalize=True)
        assert s.num_qubits == 2
        assert np.isclose(np.linalg.norm(s.amplitudes), 1)
