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

"""Sequential intra-block decision-feedback detection."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from blockdfe.detection.constellation import Constellation
from blockdfe.errors import InvalidInput
from blockdfe.transceiver.types import Transceiver

logger = logging.getLogger(__name__)


class FeedbackMode(str, Enum):
    """What the feedback filter subtracts."""
    GENIE = "GENIE"  # true past symbols
    REAL = "REAL"  # past decisions, with error propagation


@dataclass(frozen=True)
class DetectionResult:
    """Decisions for one block (or ``M x N`` for a batch of blocks)."""
    decided_symbols: np.ndarray
    decided_bits: np.ndarray
    mode: FeedbackMode


def _bias_gains(t: Transceiver) -> np.ndarray:
    ree = np.clip(np.real(np.diag(t.predicted_Ree)), 0.0, None)
    if np.any(ree >= 1.0):
        raise InvalidInput("unbiased scaling needs MMSE error variances below one")
    return 1.0 / (1.0 - ree)


def detect_blocks(
    Y: np.ndarray,
    t: Transceiver,
    c: Constellation,
    mode: FeedbackMode,
    true_s: Optional[np.ndarray] = None,
    unbiased_scaling: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """Detect ``N`` independent blocks at once.

    Args:
        Y: ``P x N`` received blocks.
        t: Transceiver whose ``W`` and ``B`` drive the detector.
        c: Constellation used at the transmitter.
        mode: Feedback source.
        true_s: ``M x N`` transmitted symbols, required in GENIE mode.
        unbiased_scaling: Divide each decision statistic by ``1 - [Ree]_mm``
            (MMSE receivers only).

    Returns:
        Tuple of decided labels and symbols, both ``M x N``.
    """
    mode = FeedbackMode(mode)
    Y = np.asarray(Y, dtype=np.complex128)
    if Y.ndim == 1:
        Y = Y[:, np.newaxis]
    M, P = t.W.shape
    if Y.shape[0] != P:
        raise InvalidInput(f"received block length {Y.shape[0]} does not match W (P={P})")
    N = Y.shape[1]
    if mode is FeedbackMode.GENIE:
        if true_s is None:
            raise InvalidInput("GENIE mode requires the transmitted symbols")
        true_s = np.asarray(true_s, dtype=np.complex128)
        if true_s.size != M * N:
            raise InvalidInput(f"GENIE mode needs {M * N} transmitted symbols, got {true_s.size}")
        true_s = true_s.reshape(M, N)

    gains = _bias_gains(t) if unbiased_scaling and not t.kind.is_zf else np.ones(M)

    Z = t.W @ Y
    labels = np.zeros((M, N), dtype=np.int64)
    decided = np.zeros((M, N), dtype=np.complex128)
    feedback_src = true_s if mode is FeedbackMode.GENIE else decided
    # Feedback state starts at zero for every block.
    for m in range(M - 1, -1, -1):
        stat = Z[m] - t.B[m, m + 1:] @ feedback_src[m + 1:]
        labels[m] = c.slice_labels(gains[m] * stat)
        decided[m] = c.points[labels[m]]
    return labels, decided


def bdfd_detect(
    y,
    t: Transceiver,
    c: Constellation,
    mode: FeedbackMode,
    true_s=None,
    unbiased_scaling: bool = False,
) -> DetectionResult:
    """Detect one block, symbol ``M`` first.

    Raises:
        InvalidInput: dimension mismatch, or GENIE mode without ``true_s``.
    """
    y = np.asarray(y, dtype=np.complex128).ravel()
    labels, decided = detect_blocks(
        y[:, np.newaxis], t, c, mode,
        true_s=None if true_s is None else np.asarray(true_s).reshape(-1, 1),
        unbiased_scaling=unbiased_scaling,
    )
    bits = c.bit_labels[labels[:, 0]].ravel()
    return DetectionResult(decided_symbols=decided[:, 0], decided_bits=bits, mode=FeedbackMode(mode))


def count_bit_errors(decided, truth) -> Tuple[int, int]:
    """Hamming distance and length of two equal-length bit sequences."""
    d = np.asarray(decided, dtype=np.uint8).ravel()
    t = np.asarray(truth, dtype=np.uint8).ravel()
    if d.size != t.size:
        raise InvalidInput(f"bit sequences differ in length: {d.size} vs {t.size}")
    return int(np.count_nonzero(d != t)), int(d.size)


def count_label_bit_errors(decided_labels: np.ndarray, true_labels: np.ndarray, c: Constellation) -> int:
    """Bit errors between two label arrays without expanding them to bits."""
    diff = np.bitwise_xor(decided_labels.astype(np.int64), true_labels.astype(np.int64))
    return int(np.sum(c.bit_labels[diff].astype(np.int64)))
