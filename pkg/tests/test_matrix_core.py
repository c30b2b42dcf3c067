"""Tests for the dense linear algebra primitives."""

import numpy as np
import pytest

from blockdfe.errors import InvalidInput, NotHermitian, NotPositiveDefinite, RankDeficient
from blockdfe.linalg import (
    as_cmatrix,
    cholesky_upper,
    hermitian_eig,
    inv_sqrt_pd,
    pinv_full_col_rank,
    qr_positive_diag,
)
from conftest import complex_gaussian, random_unitary


def rel_err(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


# ===== as_cmatrix =====

def test_as_cmatrix_rejects_non_finite():
    with pytest.raises(InvalidInput):
        as_cmatrix([[1.0, np.nan]])


def test_as_cmatrix_rejects_vectors():
    with pytest.raises(InvalidInput):
        as_cmatrix([1.0, 2.0])


# ===== hermitian_eig =====

def test_eig_of_diagonal_sorts_descending():
    eig = hermitian_eig(np.diag([1.0, 4.0]))
    np.testing.assert_allclose(eig.values, [4.0, 1.0])
    np.testing.assert_allclose(eig.vectors, [[0, 1], [1, 0]], atol=1e-15)


def test_eig_of_identity_keeps_identity_basis():
    eig = hermitian_eig(np.eye(3))
    np.testing.assert_allclose(eig.values, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(eig.vectors, np.eye(3), atol=1e-15)


def test_eig_reconstructs_random_gram(rng):
    G = complex_gaussian(rng, 4, 4)
    A = G.conj().T @ G
    eig = hermitian_eig(A)
    V, lam = eig.vectors, eig.values
    assert np.all(np.diff(lam) <= 0)
    assert rel_err(V @ np.diag(lam) @ V.conj().T, A) < 1e-10
    assert rel_err(V.conj().T @ V, np.eye(4)) < 1e-10


def test_eig_phase_convention(rng):
    G = complex_gaussian(rng, 5, 5)
    eig = hermitian_eig(G.conj().T @ G)
    for col in eig.vectors.T:
        pivot = col[np.argmax(np.abs(col))]
        assert abs(pivot.imag) < 1e-14
        assert pivot.real > 0


def test_eig_recovers_known_spectrum(rng):
    V = random_unitary(rng, 4)
    d = np.array([5.0, 3.0, 2.0, 1.0])
    eig = hermitian_eig(V @ np.diag(d) @ V.conj().T)
    np.testing.assert_allclose(eig.values, d, rtol=1e-10)
    overlaps = np.abs(np.sum(eig.vectors.conj() * V, axis=0))
    np.testing.assert_allclose(overlaps, np.ones(4), atol=1e-10)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_eig_is_deterministic(rng):
    G = complex_gaussian(rng, 6, 6)
    A = G.conj().T @ G
    first, second = hermitian_eig(A), hermitian_eig(A)
    assert np.array_equal(first.vectors, second.vectors)
    assert np.array_equal(first.values, second.values)


# ===== cholesky_upper =====

def test_cholesky_of_diagonal():
    np.testing.assert_allclose(cholesky_upper(np.diag([4.0, 1.0])), np.diag([2.0, 1.0]))


def test_cholesky_reconstructs():
    A = np.array([[2.0, 1.0], [1.0, 2.0]])
    R = cholesky_upper(A)
    assert np.allclose(np.tril(R, -1), 0)
    assert np.all(np.real(np.diag(R)) > 0)
    assert rel_err(R.conj().T @ R, A) < 1e-12


def test_cholesky_rejects_singular():
    with pytest.raises(NotPositiveDefinite):
        cholesky_upper(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_cholesky_is_deterministic(rng):
    G = complex_gaussian(rng, 5, 5)
    A = G.conj().T @ G + np.eye(5)
    assert np.array_equal(cholesky_upper(A), cholesky_upper(A))


# ===== qr_positive_diag =====

def test_qr_of_identity():
    Q, R = qr_positive_diag(np.eye(2))
    np.testing.assert_allclose(Q, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(R, np.eye(2), atol=1e-15)


def test_qr_of_diagonal():
    Q, R = qr_positive_diag(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(Q, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(R, np.diag([2.0, 1.0]), atol=1e-15)


def test_qr_random_tall(rng):
    A = complex_gaussian(rng, 5, 3)
    Q, R = qr_positive_diag(A)
    assert Q.shape == (5, 3) and R.shape == (3, 3)
    assert rel_err(Q.conj().T @ Q, np.eye(3)) < 1e-10
    assert rel_err(Q @ R, A) < 1e-10
    assert np.all(np.real(np.diag(R)) > 0)
    assert np.all(np.imag(np.diag(R)) == 0)
    assert np.all(np.tril(R, -1) == 0)


def test_qr_rejects_rank_deficient():
    A = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
    with pytest.raises(RankDeficient):
        qr_positive_diag(A)


def test_qr_is_deterministic(rng):
    A = complex_gaussian(rng, 7, 4)
    Q1, R1 = qr_positive_diag(A)
    Q2, R2 = qr_positive_diag(A)
    assert np.array_equal(Q1, Q2) and np.array_equal(R1, R2)


@pytest.mark.parametrize("n", [8, 32, 64])
def test_decompositions_reconstruct_up_to_64(rng, n):
    G = complex_gaussian(rng, n, n)
    A = G.conj().T @ G + n * np.eye(n)
    eig = hermitian_eig(A)
    assert rel_err(eig.vectors @ np.diag(eig.values) @ eig.vectors.conj().T, A) < 1e-9
    R = cholesky_upper(A)
    assert rel_err(R.conj().T @ R, A) < 1e-9
    Q, Rq = qr_positive_diag(G)
    assert rel_err(Q @ Rq, G) < 1e-9


# ===== pinv_full_col_rank =====

def test_pinv_of_column():
    np.testing.assert_allclose(pinv_full_col_rank(np.array([[1.0], [1.0]])), [[0.5, 0.5]])


def test_pinv_of_square_is_inverse(rng):
    A = complex_gaussian(rng, 4, 4) + 2 * np.eye(4)
    assert rel_err(pinv_full_col_rank(A), np.linalg.inv(A)) < 1e-10


def test_pinv_left_inverse(rng):
    A = complex_gaussian(rng, 6, 3)
    assert rel_err(pinv_full_col_rank(A) @ A, np.eye(3)) < 1e-10


# ===== inv_sqrt_pd =====

def test_inv_sqrt_of_diagonal():
    np.testing.assert_allclose(inv_sqrt_pd(np.diag([4.0, 9.0])), np.diag([0.5, 1.0 / 3.0]), atol=1e-15)


def test_inv_sqrt_of_scaled_identity():
    np.testing.assert_allclose(inv_sqrt_pd(0.25 * np.eye(3)), 2.0 * np.eye(3), atol=1e-14)


def test_inv_sqrt_product(rng):
    G = complex_gaussian(rng, 5, 5)
    A = G.conj().T @ G + 0.5 * np.eye(5)
    B = inv_sqrt_pd(A)
    assert rel_err(B, B.conj().T) < 1e-14
    assert rel_err(B @ A @ B, np.eye(5)) < 1e-10


def test_inv_sqrt_rejects_singular():
    with pytest.raises(NotPositiveDefinite):
        inv_sqrt_pd(np.diag([1.0, 0.0]))
