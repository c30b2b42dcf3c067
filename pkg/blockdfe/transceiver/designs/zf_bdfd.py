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

"""Jointly optimal zero-forcing precoder and decision-feedback detector."""

import numpy as np

from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.errors import RankDeficient
from blockdfe.linalg.equal_diag import GammaSpec, equal_diag_rotation
from blockdfe.linalg.matrix_core import hermitian_eig, pd_threshold, qr_positive_diag
from blockdfe.transceiver.base_design import TransceiverDesign
from blockdfe.transceiver.receiver import monic_from_factor, zf_feedforward
from blockdfe.transceiver.types import DesignKind, DesignSpec, Transceiver, scrub_feedback


class ZfBdfdDesign(TransceiverDesign):
    """Minimum-MSE zero-forcing BDFD transceiver.

    The precoder is ``sqrt(p0/M) V_M Psi`` where ``V_M`` holds the ``M``
    strongest eigenvectors of the whitened Gram matrix and ``Psi`` equalizes
    the R-factor diagonal of ``Lambda_M^{1/2} Psi``. Every decision point then
    sees the same error variance ``(M/p0) prod(lambda_i)^{-1/M}``, the lowest
    any zero-forcing BDFD can reach.
    """

    def __init__(self):
        super().__init__(
            name="OPT_ZF_BDFD",
            description="Optimized precoder with zero-forcing BDFD",
            kind=DesignKind.ZF_BDFD,
        )

    def design(self, ch: ChannelModel, spec: DesignSpec) -> Transceiver:
        M = spec.M
        if M > ch.K or M > ch.P:
            raise RankDeficient(f"zero forcing needs rank(H) >= M, but H is {ch.P}x{ch.K} and M={M}")
        Hb, gram = whitened_gram(ch)
        eig = hermitian_eig(gram)
        lam = eig.values[:M]
        if lam[-1] <= pd_threshold(gram):
            raise RankDeficient(f"lambda_M = {lam[-1]:.3e} at or below threshold; zero forcing infeasible")

        rot = equal_diag_rotation(GammaSpec(np.sqrt(lam)))
        F = np.sqrt(spec.p0 / M) * (eig.vectors[:, :M] @ rot.S)

        _, Ubar = qr_positive_diag(np.diag(np.sqrt(lam)) @ rot.S)
        U = monic_from_factor(Ubar / rot.r_diag)
        W = zf_feedforward(ch, Hb, F, U)

        sigma2 = (M / spec.p0) * float(np.exp(-np.mean(np.log(lam))))
        self.logger.debug("ZF-BDFD designed: M=%d, predicted MSE %.6e", M, sigma2)
        return Transceiver(
            F=F,
            W=W,
            B=scrub_feedback(U),
            kind=self.kind,
            predicted_Ree=sigma2 * np.eye(M, dtype=np.complex128),
            q_active=M,
        )


opt_zf_bdfd = ZfBdfdDesign()


def design_zf_bdfd(ch: ChannelModel, spec: DesignSpec) -> Transceiver:
    """Design the optimal ZF-BDFD transceiver for ``ch``.

    Raises:
        RankDeficient: ``rank(H) < M``.
    """
    return opt_zf_bdfd.design(ch, spec)
