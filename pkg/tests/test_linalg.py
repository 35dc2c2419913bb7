"""Tests for the dense complex-matrix kernels.

Expected values come from independent oracles: a hand-rolled Gaussian
elimination solver, numpy's dense eigendecomposition, and scipy's
generalized eigensolver. The kernels under test never call these.
"""

import numpy as np
import pytest
import scipy.linalg

from beamsim import linalg
from beamsim.linalg import (
    NoConvergenceError,
    SingularMatrixError,
    dominant_eigvec,
    generalized_dominant_eigvec,
    herm_solve,
    principal_sqrt_inv,
)


def gauss_solve(a, b):
    """Independent oracle: Gaussian elimination with partial pivoting."""
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    n = a.shape[0]
    for col in range(n):
        piv = col + np.argmax(np.abs(a[col:, col]))
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        for r in range(col + 1, n):
            m = a[r, col] / a[col, col]
            a[r, col:] -= m * a[col, col:]
            b[r] -= m * b[col]
    x = np.zeros(n, dtype=complex)
    for r in range(n - 1, -1, -1):
        x[r] = (b[r] - a[r, r + 1:] @ x[r + 1:]) / a[r, r]
    return x


def random_pd(rng, n, ridge=1.0):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return ridge * np.eye(n) + m @ m.conj().T


def random_unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


class TestHermSolve:
    def test_identity(self):
        w = np.array([1.0, 2.0j, -1.0])
        np.testing.assert_allclose(herm_solve(np.eye(3, dtype=complex), w), w)

    def test_diagonal(self):
        b = np.diag([2.0, 4.0]).astype(complex)
        w = np.array([2.0, 4.0], dtype=complex)
        np.testing.assert_allclose(herm_solve(b, w), [1.0, 1.0])

    def test_random_pd_residual_and_oracle(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            b = random_pd(rng, 4)
            w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            x = herm_solve(b, w)
            assert np.linalg.norm(b @ x - w) <= 1e-9 * np.linalg.norm(w)
            np.testing.assert_allclose(x, gauss_solve(b, w), rtol=1e-8, atol=1e-10)

    def test_rejects_non_hermitian(self):
        b = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
        with pytest.raises(ValueError):
            herm_solve(b, np.ones(2, dtype=complex))

    def test_singular_raises(self):
        b = np.outer([1.0, 1.0], [1.0, 1.0]).astype(complex)  # rank 1 PSD
        with pytest.raises(SingularMatrixError):
            herm_solve(b, np.array([1.0, 0.0], dtype=complex))


class TestPrincipalSqrtInv:
    def test_identity(self):
        np.testing.assert_allclose(principal_sqrt_inv(np.eye(3, dtype=complex)), np.eye(3), atol=1e-14)

    def test_diagonal(self):
        b = np.diag([4.0, 9.0]).astype(complex)
        np.testing.assert_allclose(principal_sqrt_inv(b), np.diag([0.5, 1.0 / 3.0]), atol=1e-14)

    def test_random_pd_residual(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            b = random_pd(rng, 5)
            s = principal_sqrt_inv(b)
            resid = s @ b @ s - np.eye(5)
            assert np.max(np.linalg.norm(resid, axis=0)) <= 1e-8
            # Hermitian PD output
            np.testing.assert_allclose(s, s.conj().T, atol=1e-12)
            assert np.all(np.linalg.eigvalsh(s) > 0)

    def test_commutes_with_input(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            b = random_pd(rng, 5)
            s = principal_sqrt_inv(b)
            assert np.linalg.norm(s @ b - b @ s) <= 1e-8 * np.linalg.norm(b)

    def test_non_pd_raises(self):
        b = np.diag([1.0, -1.0]).astype(complex)
        with pytest.raises((SingularMatrixError, ValueError)):
            principal_sqrt_inv(b)


class TestDominantEigvec:
    def test_diagonal_gap(self):
        v = dominant_eigvec(np.diag([3.0, 1.0]).astype(complex), 1e-12, 1000)
        assert abs(abs(v[0]) - 1.0) < 1e-10
        assert abs(v[1]) < 1e-6

    def test_rank_one(self):
        w = np.array([1.0, 1.0j]) / np.sqrt(2.0)
        v = dominant_eigvec(np.outer(w, w.conj()), 1e-12, 1000)
        assert abs(np.vdot(w, v)) >= 1.0 - 1e-10

    def test_random_psd_against_eigh_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            a = random_pd(rng, 6, ridge=0.0)
            v = dominant_eigvec(a, 1e-10, 10000)
            lam_max = np.linalg.eigvalsh(a)[-1]
            quot = np.real(np.vdot(v, a @ v))
            assert quot >= (1.0 - 1e-8) * lam_max
            assert abs(np.linalg.norm(v) - 1.0) < 1e-10

    def test_scale_invariance(self):
        rng = np.random.default_rng(4)
        a = random_pd(rng, 5, ridge=0.0)
        v1 = dominant_eigvec(a, 1e-10, 10000)
        v2 = dominant_eigvec(7.5 * a, 1e-10, 10000)
        assert abs(np.vdot(v1, v2)) >= 1.0 - 1e-8

    def test_zero_matrix_rejected(self):
        with pytest.raises(ValueError):
            dominant_eigvec(np.zeros((3, 3), dtype=complex), 1e-10, 100)

    def test_budget_exhaustion_on_tied_spectrum(self):
        a = np.diag([1.0, 1.0 - 1e-9]).astype(complex)
        with pytest.raises(NoConvergenceError):
            dominant_eigvec(a, 1e-13, 50)


class TestGeneralizedDominantEigvec:
    def test_rank_one_identity_weight(self):
        rng = np.random.default_rng(5)
        w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        f = generalized_dominant_eigvec(np.outer(w, w.conj()), np.eye(4, dtype=complex))
        assert abs(np.vdot(w / np.linalg.norm(w), f)) >= 1.0 - 1e-9

    def test_rank_one_general_weight_matches_closed_form(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            w = rng.standard_normal(5) + 1j * rng.standard_normal(5)
            b = random_pd(rng, 5)
            f = generalized_dominant_eigvec(np.outer(w, w.conj()), b)
            x = herm_solve(b, w)
            x /= np.linalg.norm(x)
            assert abs(np.vdot(x, f)) >= 1.0 - 1e-8

    def test_random_pair_against_scipy_oracle(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            a = random_pd(rng, 5, ridge=0.0)
            b = random_pd(rng, 5)
            f = generalized_dominant_eigvec(a, b)
            quot = np.real(np.vdot(f, a @ f)) / np.real(np.vdot(f, b @ f))
            vals = scipy.linalg.eigh(a, b, eigvals_only=True)
            assert quot >= (1.0 - 1e-8) * vals[-1]

    def test_rank_one_shortcut_agrees_with_general_path(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            w = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            b = random_pd(rng, 4)
            shortcut = herm_solve(b, w)
            shortcut /= np.linalg.norm(shortcut)
            general = generalized_dominant_eigvec(np.outer(w, w.conj()), b)
            assert abs(np.vdot(shortcut, general)) >= 1.0 - 1e-8
