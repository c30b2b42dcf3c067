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

"""Reference precoders and the schemes that pair them with a receiver."""

import numpy as np
import scipy.linalg

from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.errors import InvalidInput, RankDeficient
from blockdfe.linalg.matrix_core import hermitian_eig, pd_threshold
from blockdfe.transceiver.base_design import TransceiverDesign
from blockdfe.transceiver.receiver import receiver_for_precoder
from blockdfe.transceiver.types import BaselineKind, DesignKind, DesignSpec, Transceiver
from blockdfe.transceiver.waterfill import linear_mmse_allocation


def dft_matrix(M: int) -> np.ndarray:
    """Unitary ``M``-point DFT matrix."""
    return scipy.linalg.dft(M, scale="sqrtn").astype(np.complex128)


def baseline_precoder(kind: BaselineKind, ch: ChannelModel, spec: DesignSpec) -> np.ndarray:
    """Build one of the reference precoders.

    * ``IDENTITY``: ``sqrt(p0/M) I`` (direct transmission, ``K = M``).
    * ``DFT``: ``sqrt(p0/M) D^H`` with ``D`` the unitary DFT (``K = M``).
    * ``OPT_LINEAR_ZF``: ``sqrt(p0 / tr Lambda^{-1/2}) V_M Lambda^{-1/4} D``.
    * ``OPT_LINEAR_MMSE``: ``V_k [Upsilon 0] D`` with the ``ell``-mode allocation.

    Args:
        kind: Which precoder.
        ch: Channel (used by the channel-dependent kinds and for ``K``).
        spec: Block size and power budget.

    Returns:
        K x M precoder with ``trace(F F^H) = p0``.

    Raises:
        InvalidInput: ``K != M`` for the channel-independent kinds.
        RankDeficient: fewer than ``M`` usable eigenmodes for ``OPT_LINEAR_ZF``.
    """
    kind = BaselineKind(kind)
    M = spec.M
    scale = np.sqrt(spec.p0 / M)

    if kind in (BaselineKind.IDENTITY, BaselineKind.DFT):
        if ch.K != M:
            raise InvalidInput(f"{kind.value} precoder requires K = M, got K={ch.K}, M={M}")
        if kind is BaselineKind.IDENTITY:
            return scale * np.eye(M, dtype=np.complex128)
        return scale * dft_matrix(M).conj().T

    _, gram = whitened_gram(ch)
    eig = hermitian_eig(gram)
    D = dft_matrix(M)

    if kind is BaselineKind.OPT_LINEAR_ZF:
        if M > ch.K:
            raise RankDeficient(f"M={M} exceeds K={ch.K}")
        lam = eig.values[:M]
        if lam[-1] <= pd_threshold(gram):
            raise RankDeficient(f"lambda_M = {lam[-1]:.3e} at or below threshold")
        c = np.sqrt(spec.p0 / float(np.sum(lam ** -0.5)))
        return c * (eig.vectors[:, :M] * (lam ** -0.25)[np.newaxis, :]) @ D

    lam_pos = eig.values[eig.values > pd_threshold(gram)]
    if lam_pos.size == 0:
        raise RankDeficient("channel Gram matrix has no positive eigenvalue")
    _, ups = linear_mmse_allocation(lam_pos, spec)
    k = ups.size
    ups_pad = np.zeros((k, M), dtype=np.complex128)
    ups_pad[np.arange(k), np.arange(k)] = ups
    return eig.vectors[:, :k] @ ups_pad @ D


class BaselineScheme(TransceiverDesign):
    """A reference precoder paired with the optimal receiver of a given kind."""

    def __init__(self, precoder: BaselineKind, kind: DesignKind, name: str, description: str):
        super().__init__(name=name, description=description, kind=kind)
        self.precoder = precoder

    def design(self, ch: ChannelModel, spec: DesignSpec) -> Transceiver:
        F = baseline_precoder(self.precoder, ch, spec)
        return receiver_for_precoder(ch, F, self.kind)


identity_zf_bdfd = BaselineScheme(
    BaselineKind.IDENTITY, DesignKind.ZF_BDFD,
    "IDENTITY_ZF_BDFD", "Direct transmission with zero-forcing BDFD",
)
identity_mmse_bdfd = BaselineScheme(
    BaselineKind.IDENTITY, DesignKind.MMSE_BDFD,
    "IDENTITY_MMSE_BDFD", "Direct transmission with MMSE BDFD",
)
dft_zf_bdfd = BaselineScheme(
    BaselineKind.DFT, DesignKind.ZF_BDFD,
    "DFT_ZF_BDFD", "DFT precoder with zero-forcing BDFD",
)
dft_mmse_bdfd = BaselineScheme(
    BaselineKind.DFT, DesignKind.MMSE_BDFD,
    "DFT_MMSE_BDFD", "DFT precoder with MMSE BDFD",
)
opt_linear_zf = BaselineScheme(
    BaselineKind.OPT_LINEAR_ZF, DesignKind.LINEAR_ZF,
    "OPT_LINEAR_ZF", "Minimum-BER precoder with linear zero-forcing detector",
)
opt_linear_mmse = BaselineScheme(
    BaselineKind.OPT_LINEAR_MMSE, DesignKind.LINEAR_MMSE,
    "OPT_LINEAR_MMSE", "Minimum-MSE precoder with linear MMSE detector",
)
