# Copyright 2025 Praveen Rachamreddy
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Complex dense-matrix primitives with deterministic sign and phase conventions.

All matrices are ``complex128`` numpy arrays. Tolerances scale with the
magnitude of the input:

* Hermitian check: ``max|A - A^H| <= 1e-10 * max|A|``
* positivity / rank: pivot or eigenvalue ``<= 1e-12 * trace(A) / n`` fails
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from blockdfe.errors import (
    InvalidInput,
    NotHermitian,
    NotPositiveDefinite,
    NumericalFailure,
    RankDeficient,
)

logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-10
PD_RTOL = 1e-12


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and coerce ``a`` into a finite two-dimensional complex128 array.

    Raises:
        InvalidInput: wrong rank, empty, or non-finite entries.
    """
    try:
        m = np.array(a, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidInput(f"{name}: not a numeric matrix ({e})") from e
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise InvalidInput(f"{name}: expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput(f"{name}: contains NaN or Inf")
    return m


def _require_square(a: np.ndarray, name: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise InvalidInput(f"{name}: expected a square matrix, got shape {a.shape}")


def pd_threshold(a: np.ndarray) -> float:
    """Positivity threshold ``1e-12 * trace(A) / n`` for a Hermitian matrix."""
    n = a.shape[0]
    return PD_RTOL * abs(float(np.real(np.trace(a)))) / n


@dataclass(frozen=True)
class EigenSystem:
    """Descending eigendecomposition ``A = V diag(values) V^H``."""
    vectors: np.ndarray
    values: np.ndarray


def hermitian_eig(a) -> EigenSystem:
    """Eigendecomposition of a Hermitian PSD matrix.

    Eigenvalues come back non-increasing; solver order is kept for ties.
    Each eigenvector is rotated so its first largest-magnitude component is
    real and non-negative. Round-off negatives are clipped to zero.

    Raises:
        NotHermitian: the skew part exceeds the Hermitian tolerance.
        NumericalFailure: the eigen solver did not converge.
    """
    a = as_cmatrix(a, "A")
    _require_square(a, "A")
    scale = float(np.max(np.abs(a)))
    skew = float(np.max(np.abs(a - a.conj().T)))
    if skew > HERMITIAN_RTOL * scale:
        raise NotHermitian(f"max |A - A^H| = {skew:.3e} exceeds tolerance")
    sym = 0.5 * (a + a.conj().T)
    try:
        w, v = scipy.linalg.eigh(sym)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NumericalFailure(f"eigendecomposition failed: {e}") from e

    order = np.argsort(-w, kind="stable")
    w = np.clip(w[order], 0.0, None)
    v = np.array(v[:, order], dtype=np.complex128)

    idx = np.argmax(np.abs(v), axis=0)
    pivots = v[idx, np.arange(v.shape[1])]
    phases = np.ones_like(pivots)
    nonzero = np.abs(pivots) > 0
    phases[nonzero] = pivots[nonzero] / np.abs(pivots[nonzero])
    v = v * np.conj(phases)[np.newaxis, :]
    return EigenSystem(vectors=v, values=w)


def cholesky_upper(a) -> np.ndarray:
    """Upper-triangular ``R`` with positive real diagonal and ``A = R^H R``.

    Raises:
        NotPositiveDefinite: factorization fails or a squared pivot is below threshold.
    """
    a = as_cmatrix(a, "A")
    _require_square(a, "A")
    sym = 0.5 * (a + a.conj().T)
    try:
        r = scipy.linalg.cholesky(sym, lower=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise NotPositiveDefinite(f"Cholesky factorization failed: {e}") from e
    pivots = np.real(np.diag(r)) ** 2
    if np.any(pivots <= pd_threshold(sym)):
        raise NotPositiveDefinite(f"smallest Cholesky pivot {pivots.min():.3e} below threshold")
    r = np.triu(r)
    r[np.diag_indices_from(r)] = np.real(np.diag(r))
    return r


def qr_positive_diag(a):
    """Thin QR factorization with a strictly positive real R diagonal.

    Returns:
        Tuple ``(Q, R)`` with ``A = Q R`` and ``Q^H Q = I``.

    Raises:
        InvalidInput: fewer rows than columns.
        RankDeficient: some ``|r_ii|^2 <= 1e-12 * ||A||_F^2 / n``.
    """
    a = as_cmatrix(a, "A")
    rows, cols = a.shape
    if rows < cols:
        raise InvalidInput(f"QR needs rows >= cols, got {a.shape}")
    q, r = scipy.linalg.qr(a, mode="economic")
    d = np.diag(r)
    mag = np.abs(d)
    threshold = PD_RTOL * float(np.linalg.norm(a, "fro") ** 2) / cols
    if np.any(mag ** 2 <= threshold):
        raise RankDeficient(f"matrix of shape {a.shape} is not of full column rank")
    phases = d / mag
    q = q * phases[np.newaxis, :]
    r = np.triu(r * np.conj(phases)[:, np.newaxis])
    r[np.diag_indices(cols)] = mag
    return np.asarray(q, dtype=np.complex128), np.asarray(r, dtype=np.complex128)


def pinv_full_col_rank(a) -> np.ndarray:
    """Left pseudo-inverse ``(A^H A)^{-1} A^H`` computed through QR."""
    q, r = qr_positive_diag(a)
    return scipy.linalg.solve_triangular(r, q.conj().T, lower=False)


def inv_sqrt_pd(a) -> np.ndarray:
    """Hermitian inverse square root ``A^{-1/2}``.

    Raises:
        NotPositiveDefinite: smallest eigenvalue at or below threshold.
    """
    a = as_cmatrix(a, "A")
    _require_square(a, "A")
    eig = hermitian_eig(a)
    if eig.values[-1] <= pd_threshold(a):
        raise NotPositiveDefinite(f"smallest eigenvalue {eig.values[-1]:.3e} below threshold")
    v = eig.vectors
    out = (v * (1.0 / np.sqrt(eig.values))[np.newaxis, :]) @ v.conj().T
    return 0.5 * (out + out.conj().T)
