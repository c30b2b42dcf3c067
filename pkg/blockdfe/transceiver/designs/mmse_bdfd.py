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

"""Jointly optimal MMSE precoder and decision-feedback detector.

Power is waterfilled over the ``q`` strongest eigenmodes, which maximizes
``det(I + F^H gram F)``. With ``rotation="equal_diag"`` the rotation ``Psi``
equalizes the R-factor of ``(I + Phi^T Lambda Phi)^{1/2} Psi`` so every
decision point has error variance ``1 / r_diag^2``. ``rotation="identity"``
keeps ``Psi = I`` (vector coding): same mutual information, diagonal MMSE
receiver, unequal per-symbol SINRs.
"""

from typing import List

import numpy as np

from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.errors import InvalidInput, RankDeficient
from blockdfe.linalg.equal_diag import GammaSpec, equal_diag_rotation
from blockdfe.linalg.matrix_core import hermitian_eig, pd_threshold, qr_positive_diag
from blockdfe.transceiver.base_design import TransceiverDesign
from blockdfe.transceiver.receiver import mmse_feedforward, monic_from_factor, receiver_for_precoder
from blockdfe.transceiver.types import DesignKind, DesignSpec, Transceiver, scrub_feedback
from blockdfe.transceiver.waterfill import waterfill

ROTATIONS = ("equal_diag", "identity")


class MmseBdfdDesign(TransceiverDesign):
    """Waterfilled precoder with an MMSE BDFD (or the vector-coding variant)."""

    def __init__(self, rotation: str = "equal_diag"):
        if rotation not in ROTATIONS:
            raise InvalidInput(f"unknown rotation {rotation!r}; expected one of {ROTATIONS}")
        if rotation == "equal_diag":
            super().__init__(
                name="OPT_MMSE_BDFD",
                description="Optimized precoder with MMSE BDFD",
                kind=DesignKind.MMSE_BDFD,
            )
        else:
            super().__init__(
                name="OPT_MMSE_VC",
                description="Waterfilled eigenmode precoder with diagonal MMSE receiver",
                kind=DesignKind.LINEAR_MMSE,
            )
        self.rotation = rotation

    def design(self, ch: ChannelModel, spec: DesignSpec) -> Transceiver:
        M = spec.M
        _, gram = whitened_gram(ch)
        eig = hermitian_eig(gram)
        active = eig.values > pd_threshold(gram)
        if not np.any(active):
            raise RankDeficient("channel Gram matrix has no positive eigenvalue")
        lam_pos = eig.values[active]

        wf = waterfill(lam_pos, spec)
        q = wf.q
        lam_q = lam_pos[:q]
        notes: List[str] = []
        if q < M:
            msg = f"only {q} of {M} eigenmodes active at p0={spec.p0:g}; symbols share the active modes"
            self.logger.warning(msg)
            notes.append(msg)

        phi_pad = np.zeros((q, M), dtype=np.complex128)
        phi_pad[np.arange(q), np.arange(q)] = wf.phi
        Vq = eig.vectors[:, :q]

        if self.rotation == "identity":
            t = receiver_for_precoder(ch, Vq @ phi_pad, self.kind)
            return Transceiver(
                F=t.F, W=t.W, B=t.B, kind=t.kind,
                predicted_Ree=t.predicted_Ree, q_active=q, notes=tuple(notes),
            )

        d = np.ones(M)
        d[:q] = np.sqrt(1.0 + wf.powers * lam_q)
        gspec = GammaSpec.from_unsorted(d)
        rot = equal_diag_rotation(gspec)
        Psi = gspec.unsort_rows(rot.S)

        F = Vq @ phi_pad @ Psi
        _, Ucheck = qr_positive_diag(np.diag(d) @ Psi)
        U = monic_from_factor(Ucheck / rot.r_diag)
        W = mmse_feedforward(ch, F, U)

        sigma2 = 1.0 / rot.r_diag ** 2
        self.logger.debug("MMSE-BDFD designed: M=%d q=%d, predicted MSE %.6e", M, q, sigma2)
        return Transceiver(
            F=F,
            W=W,
            B=scrub_feedback(U),
            kind=self.kind,
            predicted_Ree=sigma2 * np.eye(M, dtype=np.complex128),
            q_active=q,
            notes=tuple(notes),
        )


opt_mmse_bdfd = MmseBdfdDesign()
opt_mmse_vc = MmseBdfdDesign(rotation="identity")


def design_mmse_bdfd(ch: ChannelModel, spec: DesignSpec, rotation: str = "equal_diag") -> Transceiver:
    """Design the optimal MMSE-BDFD transceiver for ``ch``.

    Args:
        ch: Channel and noise covariance.
        spec: Block size and power budget.
        rotation: ``"equal_diag"`` for equal per-symbol MSE, ``"identity"``
            for the vector-coding variant.
    """
    if rotation == "equal_diag":
        return opt_mmse_bdfd.design(ch, spec)
    if rotation == "identity":
        return opt_mmse_vc.design(ch, spec)
    raise InvalidInput(f"unknown rotation {rotation!r}; expected one of {ROTATIONS}")
