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

"""Power allocation over channel eigenmodes."""

import logging
from typing import Sequence, Tuple

import numpy as np

from blockdfe.errors import InvalidInput
from blockdfe.transceiver.types import DesignSpec, WaterfillResult

logger = logging.getLogger(__name__)


def _check_lambdas(lambdas: Sequence[float]) -> np.ndarray:
    lam = np.asarray(lambdas, dtype=float).ravel()
    if lam.size < 1:
        raise InvalidInput("need at least one eigenvalue")
    if not np.all(np.isfinite(lam)) or np.any(lam <= 0):
        raise InvalidInput("eigenvalues must be finite and strictly positive")
    if np.any(np.diff(lam) > 0):
        raise InvalidInput("eigenvalues must be sorted non-increasing")
    return lam


def waterfill(lambdas: Sequence[float], spec: DesignSpec) -> WaterfillResult:
    """Mutual-information-maximizing waterfilling.

    ``r`` is the largest index with ``1/lam_r < (p0 + sum_{j<=r} 1/lam_j) / r``;
    ``q = min(r, M)`` and ``phi_i^2 = mu - 1/lam_i`` with
    ``mu = (p0 + sum_{j<=q} 1/lam_j) / q``.

    Args:
        lambdas: Positive eigenvalues in non-increasing order.
        spec: Block size and power budget.

    Returns:
        WaterfillResult with ``sum(phi^2) = p0``.
    """
    lam = _check_lambdas(lambdas)
    inv = 1.0 / lam
    ranks = np.arange(1, lam.size + 1)
    levels = (spec.p0 + np.cumsum(inv)) / ranks
    satisfied = np.nonzero(inv < levels)[0]
    # r = 1 always satisfies the condition for p0 > 0
    r = int(satisfied[-1]) + 1
    q = min(r, spec.M)
    mu = (spec.p0 + float(np.sum(inv[:q]))) / q
    phi = np.sqrt(mu - inv[:q])
    logger.debug("waterfill: r=%d q=%d mu=%.6e", r, q, mu)
    return WaterfillResult(r=r, q=q, phi=phi, mu=mu)


def linear_mmse_allocation(lambdas: Sequence[float], spec: DesignSpec) -> Tuple[int, np.ndarray]:
    """Mode count ``ell`` and amplitudes of the MMSE-optimal linear precoder.

    ``ell`` is the largest index with
    ``lam_ell^{-1/2} sum_{j<=ell} lam_j^{-1/2} - sum_{j<=ell} lam_j^{-1} < p0``;
    with ``k = min(ell, M)``,
    ``upsilon_i^2 = ((p0 + S1) / Sh) lam_i^{-1/2} - lam_i^{-1}`` where
    ``S1 = sum_{j<=k} 1/lam_j`` and ``Sh = sum_{j<=k} lam_j^{-1/2}``.

    Returns:
        Tuple ``(ell, upsilon)`` with ``upsilon`` of length ``min(ell, M)``.
    """
    lam = _check_lambdas(lambdas)
    inv = 1.0 / lam
    inv_half = 1.0 / np.sqrt(lam)
    lhs = inv_half * np.cumsum(inv_half) - np.cumsum(inv)
    satisfied = np.nonzero(lhs < spec.p0)[0]
    ell = int(satisfied[-1]) + 1
    k = min(ell, spec.M)
    s1 = float(np.sum(inv[:k]))
    sh = float(np.sum(inv_half[:k]))
    ups2 = (spec.p0 + s1) / sh * inv_half[:k] - inv[:k]
    return ell, np.sqrt(np.clip(ups2, 0.0, None))
