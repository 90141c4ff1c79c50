import math

import numpy as np
import pytest
import scipy.linalg

from lindqbit import (
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
    det2,
    expm_general,
    expm_hermitian_scaled,
    hermitian_eig,
    kron,
    sqrtm_psd,
)
from lindqbit.dynamics import ControlHamiltonian

from helpers import random_complex_matrix, random_hermitian

SIGMA_Y = np.array([[0, -1j], [1j, 0]])


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_sigma_y_squared(self):
        # expanded by hand from the 2x2 definition: antidiagonal
        # (-1, 1, 1, -1) reading from the top-right corner down
        expected = np.array(
            [
                [0, 0, 0, -1],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [-1, 0, 0, 0],
            ],
            dtype=complex,
        )
        assert np.array_equal(kron(SIGMA_Y, SIGMA_Y), expected)

    def test_scalar_factor(self, rng):
        b = random_complex_matrix(rng, 3)
        assert np.array_equal(kron([[2.0]], b), 2.0 * b)

    def test_associative_bilinear(self, rng):
        for _ in range(50):
            a, b, c = (random_complex_matrix(rng, 2) for _ in range(3))
            left = kron(kron(a, b), c)
            right = kron(a, kron(b, c))
            assert np.max(np.abs(left - right)) <= 1e-14
            s = complex(rng.normal(), rng.normal())
            assert np.max(np.abs(kron(s * a, b) - s * kron(a, b))) <= 1e-13
            assert np.max(np.abs(kron(a + b, c) - kron(a, c) - kron(b, c))) <= 1e-13


class TestHermitianEig:
    def test_diagonal(self):
        evals, vecs = hermitian_eig(np.diag([3.0, 1.0]))
        assert np.array_equal(evals, [1.0, 3.0])
        assert np.array_equal(np.abs(vecs), [[0, 1], [1, 0]])

    def test_sigma_y(self):
        # characteristic polynomial is lambda^2 - 1
        evals, _ = hermitian_eig(SIGMA_Y)
        assert np.allclose(evals, [-1.0, 1.0], atol=1e-15)

    def test_corner_coupling_block(self):
        # the corner-coupled pair forms a 2x2 block with unit off-diagonal,
        # so +-1 must appear in the spectrum
        h = ControlHamiltonian(0.0, 0.0, 0.0, 1.0).matrix
        evals, _ = hermitian_eig(h)
        assert np.any(np.abs(evals - 1.0) < 1e-14)
        assert np.any(np.abs(evals + 1.0) < 1e-14)

    @pytest.mark.parametrize("n", [4, 16])
    def test_reconstruction_and_orthonormality(self, rng, n):
        for _ in range(20):
            a = random_hermitian(rng, n)
            evals, vecs = hermitian_eig(a)
            scale = np.linalg.norm(a)
            assert np.max(np.abs((vecs * evals) @ vecs.conj().T - a)) <= 1e-12 * scale
            assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(n))) <= 1e-12
            assert np.all(np.diff(evals) >= 0.0)

    def test_matches_library_solver(self, rng):
        for n in (4, 16):
            a = random_hermitian(rng, n)
            evals, _ = hermitian_eig(a)
            assert np.allclose(evals, np.linalg.eigvalsh(a), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_sweep_budget(self, rng):
        a = random_hermitian(rng, 4)
        with pytest.raises(NoConvergenceError):
            hermitian_eig(a, max_sweeps=0)


class TestExpmHermitian:
    def test_zero_time_is_identity(self, rng):
        h = random_hermitian(rng, 4)
        assert np.max(np.abs(expm_hermitian_scaled(h, 0j) - np.eye(4))) < 1e-14

    def test_diagonal(self):
        d = np.diag([0.5, -1.0, 2.0, 0.0])
        u = expm_hermitian_scaled(d, 0.7j)
        assert np.allclose(u, np.diag(np.exp(0.7j * np.diag(d))), atol=1e-14)

    def test_unitary_for_imaginary_scale(self, rng):
        for _ in range(20):
            h = random_hermitian(rng, 4)
            u = expm_hermitian_scaled(h, 1j * rng.normal())
            assert np.max(np.abs(u.conj().T @ u - np.eye(4))) <= 1e-12

    def test_corner_coupling_closed_form(self):
        # exp(i t H) applied to the first basis vector stays in the
        # corner-coupled pair: e^{i t x1} (cos(t y), 0, 0, i sin(t y))
        x1, y = 0.4, 1.3
        h = ControlHamiltonian(x1, -2.0, 0.9, y).matrix
        for t in (0.0, 0.31, 1.7):
            v = expm_hermitian_scaled(h, 1j * t) @ np.array([1, 0, 0, 0], dtype=complex)
            expected = np.exp(1j * t * x1) * np.array(
                [math.cos(t * y), 0, 0, 1j * math.sin(t * y)]
            )
            assert np.max(np.abs(v - expected)) < 1e-13


class TestExpmGeneral:
    def test_zero_is_exact_identity(self):
        assert np.array_equal(expm_general(np.zeros((16, 16))), np.eye(16))

    def test_diagonal(self):
        d = np.diag(np.linspace(-2.0, 1.0, 16))
        assert np.allclose(expm_general(d), np.diag(np.exp(np.diag(d))), atol=1e-14)

    def test_inverse_pair(self, rng):
        for _ in range(10):
            m = random_complex_matrix(rng, 16)
            m *= 10.0 / np.linalg.norm(m)
            prod = expm_general(m) @ expm_general(-m)
            assert np.max(np.abs(prod - np.eye(16))) <= 1e-10

    def test_semigroup(self, rng):
        for _ in range(10):
            m = random_complex_matrix(rng, 16)
            m *= 5.0 / np.linalg.norm(m)
            t1, t2 = rng.uniform(0.1, 1.0, size=2)
            whole = expm_general(m * (t1 + t2))
            split = expm_general(m * t1) @ expm_general(m * t2)
            assert np.max(np.abs(whole - split)) <= 1e-10

    def test_matches_library_solver(self, rng):
        for _ in range(5):
            m = random_complex_matrix(rng, 16)
            ref = scipy.linalg.expm(m)
            assert np.max(np.abs(expm_general(m) - ref)) <= 1e-11 * np.linalg.norm(ref)

    def test_rejects_non_finite(self):
        m = np.zeros((4, 4))
        m[0, 0] = np.inf
        with pytest.raises(ValueError):
            expm_general(m)


class TestSqrtmPsd:
    def test_identity(self):
        assert np.allclose(sqrtm_psd(np.eye(4)), np.eye(4), atol=1e-14)

    def test_diagonal(self):
        s = sqrtm_psd(np.diag([4.0, 9.0, 0.0, 1.0]))
        assert np.allclose(s, np.diag([2.0, 3.0, 0.0, 1.0]), atol=1e-14)

    def test_projector_is_its_own_root(self):
        v = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        proj = np.outer(v, v.conj())
        assert np.max(np.abs(sqrtm_psd(proj) - proj)) < 1e-13

    def test_square_recovers_input(self, rng):
        for _ in range(20):
            g = random_complex_matrix(rng, 4)
            a = g @ g.conj().T  # PSD by construction
            s = sqrtm_psd(a)
            assert np.max(np.abs(s @ s - a)) <= 1e-10 * np.linalg.norm(a)
            assert np.max(np.abs(s - s.conj().T)) < 1e-13

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(NotPSDError):
            sqrtm_psd(np.diag([1.0, -0.5, 0.0, 0.0]))

    def test_clamps_rounding_residue(self):
        s = sqrtm_psd(np.diag([1.0, -1e-12, 0.0, 0.0]))
        assert np.allclose(s, np.diag([1.0, 0.0, 0.0, 0.0]), atol=1e-14)


class TestDet2:
    def test_separable_example(self):
        c = np.array([[1.0, 3.0], [2.0, 6.0]]) / math.sqrt(50.0)
        assert det2(c) == 0.0

    def test_bell_coefficients(self):
        c = np.eye(2) / math.sqrt(2.0)
        assert abs(det2(c) - 0.5) < 1e-15

    def test_diagonal(self):
        assert det2(np.diag([3.0 + 1j, -2.0])) == (3.0 + 1j) * -2.0

    def test_rejects_wrong_shape(self):
        with pytest.raises(DimensionMismatchError):
            det2(np.eye(3))
