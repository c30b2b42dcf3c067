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

"""Optimal receiver for a given precoder.

The monic feedback filter minimizing the error given ``F`` comes from a
Cholesky-type factorization ``A = R^H R``: ``U = diag(R)^{-1} R``, with
``A = F^H gram F`` for zero forcing and ``A = I + F^H gram F`` for MMSE.
Linear receivers fix ``U = I``.
"""

import logging

import numpy as np
import scipy.linalg

from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.errors import InvalidInput, RankDeficient
from blockdfe.linalg.matrix_core import (
    as_cmatrix,
    cholesky_upper,
    inv_sqrt_pd,
    pinv_full_col_rank,
    qr_positive_diag,
)
from blockdfe.transceiver.types import DesignKind, Transceiver, scrub_feedback

logger = logging.getLogger(__name__)


def _hermitian(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + x.conj().T)


def monic_from_factor(R: np.ndarray) -> np.ndarray:
    """``diag(R)^{-1} R`` with an exact unit diagonal and zeros below it."""
    U = np.triu(R / np.real(np.diag(R))[:, np.newaxis])
    U[np.diag_indices_from(U)] = 1.0
    return U.astype(np.complex128)


def mmse_feedforward(ch: ChannelModel, F: np.ndarray, U: np.ndarray) -> np.ndarray:
    """``W = U F^H H^H (H F F^H H^H + Rvv)^{-1}`` via a P x P Hermitian solve."""
    HF = ch.H @ F
    Ryy = HF @ HF.conj().T + ch.Rvv
    return scipy.linalg.solve(_hermitian(Ryy), HF @ U.conj().T, assume_a="her").conj().T


def zf_feedforward(ch: ChannelModel, Hb: np.ndarray, F: np.ndarray, U: np.ndarray) -> np.ndarray:
    """``W = U pinv(Hbreve F) Rvv^{-1/2}``."""
    return U @ pinv_full_col_rank(Hb @ F) @ inv_sqrt_pd(ch.Rvv)


def receiver_for_precoder(ch: ChannelModel, F, kind: DesignKind) -> Transceiver:
    """Synthesize the optimal ``W`` and ``B`` of the given kind for precoder ``F``.

    Args:
        ch: Channel and noise covariance.
        F: K x M precoder.
        kind: Receiver structure.

    Returns:
        Transceiver with ``predicted_Ree`` from the kind's error covariance.

    Raises:
        InvalidInput: ``F`` does not match the channel input dimension.
        RankDeficient: zero forcing is infeasible because ``H F`` lacks full column rank.
    """
    F = as_cmatrix(F, "F")
    kind = DesignKind(kind)
    if F.shape[0] != ch.K:
        raise InvalidInput(f"F has {F.shape[0]} rows but the channel has K={ch.K} inputs")
    M = F.shape[1]
    Hb, gram = whitened_gram(ch)
    eye = np.eye(M, dtype=np.complex128)

    if kind.is_zf:
        G = Hb @ F
        if G.shape[0] < M:
            raise RankDeficient(f"zero forcing needs P >= M, got P={G.shape[0]}, M={M}")
        _, R = qr_positive_diag(G)
        U = eye if kind.is_linear else monic_from_factor(R)
        W = zf_feedforward(ch, Hb, F, U)
        Ree = W @ ch.Rvv @ W.conj().T
    else:
        A = eye + F.conj().T @ gram @ F
        R = cholesky_upper(_hermitian(A))
        U = eye if kind.is_linear else monic_from_factor(R)
        W = mmse_feedforward(ch, F, U)
        Ree = U @ scipy.linalg.solve(_hermitian(A), U.conj().T, assume_a="pos")

    logger.debug("receiver %s built for M=%d", kind.value, M)
    return Transceiver(
        F=F,
        W=W,
        B=scrub_feedback(U),
        kind=kind,
        predicted_Ree=_hermitian(Ree),
        q_active=M,
    )
