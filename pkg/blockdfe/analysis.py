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

"""Closed-form performance predictions.

Error covariance, MSE, decision-point SINR, BER approximations and their
Jensen lower bounds, Gaussian mutual information, and the optimal MSE of
each design family.

BER SNR convention: the coefficients of ``BerCoeffs`` take ``rho`` as a
per-bit SNR. Decision-point SINRs (``1/[Ree]_ii`` and ``1/[Ree]_ii - 1``)
are per-symbol; pass ``per_symbol_snr=True`` to divide them by ``2b`` so
the approximation predicts the bit error rate a Gray-coded square QAM
slicer actually measures.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import erfc

from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.errors import InvalidInput, RegimeViolation
from blockdfe.linalg.matrix_core import as_cmatrix
from blockdfe.transceiver.types import DesignSpec, Transceiver
from blockdfe.transceiver.waterfill import linear_mmse_allocation, waterfill

logger = logging.getLogger(__name__)


class DetectorKind(str, Enum):
    """SINR convention at the decision point."""
    ZF = "ZF"
    MMSE = "MMSE"


class ClosedFormKind(str, Enum):
    OPT_ZF_BDFD = "OPT_ZF_BDFD"
    OPT_MMSE_BDFD = "OPT_MMSE_BDFD"
    OPT_ZF_LINEAR = "OPT_ZF_LINEAR"
    OPT_MMSE_LINEAR = "OPT_MMSE_LINEAR"


# =============================================================================
# COVARIANCE, MSE AND SINR
# =============================================================================


def _hermitian(x: np.ndarray) -> np.ndarray:
    return 0.5 * (x + x.conj().T)


def error_covariance(ch: ChannelModel, t: Transceiver) -> np.ndarray:
    """Decision-point error covariance assuming correct past decisions.

    ``Ree = (WHF - B - I)(WHF - B - I)^H + W Rvv W^H``, symmetrized.
    """
    M = t.M
    if t.W.shape != (M, ch.P) or t.F.shape[0] != ch.K or t.B.shape != (M, M):
        raise InvalidInput(
            f"transceiver shapes F{t.F.shape} W{t.W.shape} B{t.B.shape} do not fit H{ch.H.shape}"
        )
    E = t.W @ ch.H @ t.F - t.U
    return _hermitian(E @ E.conj().T + t.W @ ch.Rvv @ t.W.conj().T)


def sinr(Ree, kind: DetectorKind) -> np.ndarray:
    """Per-element decision-point SINR.

    ZF: ``1/[Ree]_ii``. MMSE: ``1/[Ree]_ii - 1`` (bias-adjusted).

    Raises:
        InvalidInput: a diagonal entry is not positive, or not below one for MMSE.
    """
    d = np.real(np.diag(as_cmatrix(Ree, "Ree")))
    if np.any(d <= 0):
        raise InvalidInput("error variances must be positive")
    if DetectorKind(kind) is DetectorKind.ZF:
        return 1.0 / d
    if np.any(d >= 1.0):
        raise InvalidInput("MMSE error variances must be below one")
    return 1.0 / d - 1.0


@dataclass(frozen=True)
class MseReport:
    Ree: np.ndarray
    arithmetic_mse: float
    geometric_mse: float
    per_element_sinr: np.ndarray


def mse_report(Ree, kind: DetectorKind) -> MseReport:
    """Arithmetic and geometric MSE plus per-element SINR of ``Ree``."""
    Ree = _hermitian(as_cmatrix(Ree, "Ree"))
    M = Ree.shape[0]
    sign, logdet = np.linalg.slogdet(Ree)
    geometric = float(np.exp(logdet / M)) if np.real(sign) > 0 else 0.0
    return MseReport(
        Ree=Ree,
        arithmetic_mse=float(np.real(np.trace(Ree))) / M,
        geometric_mse=geometric,
        per_element_sinr=sinr(Ree, kind),
    )


def element_rates(Ree, kind: DetectorKind) -> np.ndarray:
    """Per-element Gaussian rates ``log2(1 + rho_i)`` in bits."""
    return np.log2(1.0 + sinr(Ree, kind))


def gmi(ch: ChannelModel, F) -> float:
    """Gaussian mutual information ``log2 det(I + F^H gram F)`` in bits per block."""
    F = as_cmatrix(F, "F")
    if F.shape[0] != ch.K:
        raise InvalidInput(f"F has {F.shape[0]} rows but the channel has K={ch.K} inputs")
    _, gram = whitened_gram(ch)
    A = _hermitian(np.eye(F.shape[1]) + F.conj().T @ gram @ F)
    _, logdet = np.linalg.slogdet(A)
    return max(float(logdet) / np.log(2.0), 0.0)


# =============================================================================
# BIT ERROR RATE
# =============================================================================


@dataclass(frozen=True)
class BerCoeffs:
    """Coefficients of the square ``4^b``-QAM BER approximation."""
    alpha: float
    beta: float
    zeta: float
    b: int

    @classmethod
    def from_bits(cls, b: int) -> "BerCoeffs":
        if int(b) != b or b < 1:
            raise InvalidInput(f"b must be a positive integer, got {b}")
        root = 2.0 ** b
        return cls(
            alpha=(root - 1.0) / (b * root),
            beta=3.0 * b / (4.0 ** b - 1.0),
            zeta=(root - 2.0) / (b * root),
            b=int(b),
        )

    def effective_beta(self, per_symbol_snr: bool) -> float:
        return self.beta / (2 * self.b) if per_symbol_snr else self.beta


@dataclass(frozen=True)
class BerBound:
    """Bound value and whether the averaged function is convex there."""
    value: float
    convex_regime: bool


def ber_approx(rho, coeffs: BerCoeffs, per_symbol_snr: bool = False):
    """``alpha erfc(sqrt(beta rho)) + zeta erfc(3 sqrt(beta rho))``."""
    rho = np.clip(np.asarray(rho, dtype=float), 0.0, None)
    x = np.sqrt(coeffs.effective_beta(per_symbol_snr) * rho)
    out = coeffs.alpha * erfc(x) + coeffs.zeta * erfc(3.0 * x)
    return float(out) if out.ndim == 0 else out


def ber_average(Ree, coeffs: BerCoeffs, kind: DetectorKind, per_symbol_snr: bool = False) -> float:
    """Mean of ``ber_approx`` over the decision-point SINRs of ``Ree``."""
    return float(np.mean(ber_approx(sinr(Ree, kind), coeffs, per_symbol_snr)))


def ber_lower_bound(
    trace_Ree: float,
    M: int,
    coeffs: BerCoeffs,
    kind: DetectorKind,
    per_symbol_snr: bool = False,
) -> BerBound:
    """Jensen lower bound on the average BER given ``trace(Ree)``.

    The bound evaluates ``ber_approx`` at the SINR of the mean error variance
    ``trace/M``. It holds when ``trace/M < 2 beta / 3``; outside that range
    the value is still returned with ``convex_regime=False``.
    """
    if M < 1 or trace_Ree <= 0:
        raise InvalidInput(f"need M >= 1 and a positive trace, got M={M}, trace={trace_Ree}")
    mean_var = trace_Ree / M
    kind = DetectorKind(kind)
    if kind is DetectorKind.ZF:
        rho = 1.0 / mean_var
    else:
        rho = max(1.0 / mean_var - 1.0, 0.0)
    convex = mean_var < 2.0 * coeffs.effective_beta(per_symbol_snr) / 3.0
    if not convex:
        logger.debug("BER bound outside convex regime: trace/M=%.4e", mean_var)
    return BerBound(value=ber_approx(rho, coeffs, per_symbol_snr), convex_regime=bool(convex))


# =============================================================================
# OPTIMAL MSE OF EACH DESIGN FAMILY
# =============================================================================


def closed_form_mse(kind: ClosedFormKind, lambdas_M: Sequence[float], spec: DesignSpec) -> float:
    """Optimal arithmetic MSE of a design family, valid when all ``M`` modes are active.

    Args:
        kind: Design family.
        lambdas_M: The ``M`` largest eigenvalues of the whitened Gram matrix,
            non-increasing.
        spec: Block size and power budget.

    Raises:
        InvalidInput: eigenvalues not positive and non-increasing.
        RegimeViolation: fewer than ``M`` eigenvalues, or the power budget leaves
            some mode inactive (``q < M`` or ``ell < M``).
    """
    kind = ClosedFormKind(kind)
    lam = np.asarray(lambdas_M, dtype=float).ravel()
    M = spec.M
    if lam.size < M:
        raise RegimeViolation(f"need {M} eigenvalues, got {lam.size}")
    lam = lam[:M]
    if np.any(lam <= 0) or np.any(np.diff(lam) > 0):
        raise InvalidInput("eigenvalues must be positive and non-increasing")
    p0 = spec.p0
    geo_inv = float(np.exp(-np.mean(np.log(lam))))
    tr_inv = float(np.sum(1.0 / lam))
    tr_inv_half = float(np.sum(lam ** -0.5))

    if kind is ClosedFormKind.OPT_ZF_BDFD:
        return (M / p0) * geo_inv
    if kind is ClosedFormKind.OPT_ZF_LINEAR:
        return tr_inv_half ** 2 / (M * p0)
    if kind is ClosedFormKind.OPT_MMSE_BDFD:
        q = waterfill(lam, spec).q
        if q < M:
            raise RegimeViolation(f"only {q} of {M} modes active at p0={p0:g}")
        return M / (p0 + tr_inv) * geo_inv

    ell, _ = linear_mmse_allocation(lam, spec)
    if ell < M:
        raise RegimeViolation(f"only {ell} of {M} modes active at p0={p0:g}")
    return tr_inv_half ** 2 / (M * (p0 + tr_inv) - tr_inv_half ** 2)
