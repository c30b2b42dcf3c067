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

"""Channel matrices and noise models.

Covers the zero-padded FIR (tall Toeplitz) and cyclic-prefix (circulant)
block channels, i.i.d. Rayleigh MIMO channels, and noise whitening.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from blockdfe.errors import InvalidInput, NotPositiveDefinite
from blockdfe.linalg.matrix_core import as_cmatrix, inv_sqrt_pd

logger = logging.getLogger(__name__)

TAP_ENERGY_TOL = 1e-12


@dataclass(frozen=True)
class FirTaps:
    """Impulse response ``h[0..L]``."""
    taps: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        h = np.asarray(self.taps, dtype=np.complex128).ravel()
        if h.size < 1:
            raise InvalidInput("FIR taps must not be empty")
        if not np.all(np.isfinite(h)):
            raise InvalidInput("FIR taps contain NaN or Inf")
        if self.normalized:
            energy = float(np.sum(np.abs(h) ** 2))
            if energy <= 0:
                raise InvalidInput("cannot normalize an all-zero impulse response")
            h = h / np.sqrt(energy)
        object.__setattr__(self, "taps", h)

    @property
    def L(self) -> int:
        """Channel order (number of taps minus one)."""
        return int(self.taps.size - 1)


@dataclass(frozen=True)
class ChannelModel:
    """Channel matrix ``H`` (P x K) and noise covariance ``Rvv`` (P x P)."""
    H: np.ndarray
    Rvv: Optional[np.ndarray] = None

    def __post_init__(self):
        H = as_cmatrix(self.H, "H")
        object.__setattr__(self, "H", H)
        if self.Rvv is None:
            object.__setattr__(self, "Rvv", np.eye(H.shape[0], dtype=np.complex128))
        else:
            rvv = as_cmatrix(self.Rvv, "Rvv")
            if rvv.shape != (H.shape[0], H.shape[0]):
                raise InvalidInput(f"Rvv shape {rvv.shape} does not match P={H.shape[0]}")
            object.__setattr__(self, "Rvv", rvv)

    @property
    def P(self) -> int:
        return int(self.H.shape[0])

    @property
    def K(self) -> int:
        return int(self.H.shape[1])

    def with_noise_variance(self, sigma2: float) -> "ChannelModel":
        """Same channel with white noise ``sigma2 * I``."""
        if not sigma2 > 0:
            raise InvalidInput(f"noise variance must be positive, got {sigma2}")
        return ChannelModel(H=self.H, Rvv=sigma2 * np.eye(self.P, dtype=np.complex128))

    def with_noise(self, Rvv) -> "ChannelModel":
        return ChannelModel(H=self.H, Rvv=Rvv)


def fir_zero_padded_channel(taps: FirTaps, K: int) -> ChannelModel:
    """Tall ``(K+L) x K`` lower-triangular Toeplitz matrix of a zero-padded block."""
    if K < 1:
        raise InvalidInput(f"K must be >= 1, got {K}")
    h = taps.taps
    first_col = np.concatenate([h, np.zeros(K - 1, dtype=np.complex128)])
    first_row = np.zeros(K, dtype=np.complex128)
    first_row[0] = h[0]
    return ChannelModel(H=scipy.linalg.toeplitz(first_col, first_row))


def circulant_channel(taps: FirTaps, K: int) -> ChannelModel:
    """``K x K`` circulant matrix of a cyclic-prefixed block."""
    if K < taps.L + 1:
        raise InvalidInput(f"circulant channel needs K >= L+1 = {taps.L + 1}, got {K}")
    first_col = np.zeros(K, dtype=np.complex128)
    first_col[: taps.L + 1] = taps.taps
    return ChannelModel(H=scipy.linalg.circulant(first_col))


def rayleigh_mimo_channel(P: int, K: int, rng: np.random.Generator) -> ChannelModel:
    """``P x K`` matrix of i.i.d. unit-variance circular complex Gaussian gains."""
    if P < 1 or K < 1:
        raise InvalidInput(f"P and K must be >= 1, got P={P}, K={K}")
    H = (rng.standard_normal((P, K)) + 1j * rng.standard_normal((P, K))) / np.sqrt(2.0)
    return ChannelModel(H=H)


def random_fir_taps(L: int, rng: np.random.Generator, normalize: bool = True) -> FirTaps:
    """Draw ``L+1`` i.i.d. circular Gaussian taps, optionally scaled to unit energy."""
    if L < 0:
        raise InvalidInput(f"channel order must be >= 0, got {L}")
    h = (rng.standard_normal(L + 1) + 1j * rng.standard_normal(L + 1)) / np.sqrt(2.0)
    return FirTaps(taps=h, normalized=normalize)


def noise_variance_for_snr(snr_db: float, p0: float, M: int) -> float:
    """Noise variance for SNR defined as per-symbol energy ``p0/M`` over ``sigma^2``."""
    if p0 <= 0 or M < 1:
        raise InvalidInput(f"need p0 > 0 and M >= 1, got p0={p0}, M={M}")
    return (p0 / M) / (10.0 ** (snr_db / 10.0))


def whitened_gram(ch: ChannelModel) -> Tuple[np.ndarray, np.ndarray]:
    """Whitened channel and its Gram matrix.

    Returns:
        Tuple ``(Hbreve, gram)`` with ``Hbreve = Rvv^{-1/2} H`` and
        ``gram = Hbreve^H Hbreve``.

    Raises:
        NotPositiveDefinite: ``Rvv`` is not positive definite.
    """
    try:
        w = inv_sqrt_pd(ch.Rvv)
    except NotPositiveDefinite as e:
        raise NotPositiveDefinite(f"noise covariance: {e}") from e
    hb = w @ ch.H
    gram = hb.conj().T @ hb
    return hb, 0.5 * (gram + gram.conj().T)


def sample_noise(P: int, n_blocks: int, sigma2: float, rng: np.random.Generator) -> np.ndarray:
    """``P x n_blocks`` white CN(0, sigma2) noise; each part has variance ``sigma2/2``."""
    scale = np.sqrt(sigma2 / 2.0)
    return scale * (rng.standard_normal((P, n_blocks)) + 1j * rng.standard_normal((P, n_blocks)))
