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

"""Value types shared by the transceiver designs."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

import numpy as np

from blockdfe.errors import InvalidInput

# =============================================================================
# KINDS
# =============================================================================


class DesignKind(str, Enum):
    """Receiver structure of a transceiver."""
    ZF_BDFD = "ZF_BDFD"
    MMSE_BDFD = "MMSE_BDFD"
    LINEAR_ZF = "LINEAR_ZF"
    LINEAR_MMSE = "LINEAR_MMSE"

    @property
    def is_zf(self) -> bool:
        return self in (DesignKind.ZF_BDFD, DesignKind.LINEAR_ZF)

    @property
    def is_linear(self) -> bool:
        return self in (DesignKind.LINEAR_ZF, DesignKind.LINEAR_MMSE)


class BaselineKind(str, Enum):
    """Precoders the optimized designs are compared against."""
    IDENTITY = "IDENTITY"
    DFT = "DFT"
    OPT_LINEAR_ZF = "OPT_LINEAR_ZF"
    OPT_LINEAR_MMSE = "OPT_LINEAR_MMSE"


# =============================================================================
# DESIGN INPUTS AND OUTPUTS
# =============================================================================


@dataclass(frozen=True)
class DesignSpec:
    """Symbols per block ``M`` and total block power ``p0``."""
    M: int
    p0: float

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 1:
            raise InvalidInput(f"M must be a positive integer, got {self.M}")
        if not np.isfinite(self.p0) or self.p0 <= 0:
            raise InvalidInput(f"p0 must be positive, got {self.p0}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "p0", float(self.p0))


@dataclass(frozen=True)
class WaterfillResult:
    """Active-mode counts, per-mode amplitudes ``phi`` (length ``q``) and water level ``mu``."""
    r: int
    q: int
    phi: np.ndarray
    mu: float

    @property
    def powers(self) -> np.ndarray:
        return self.phi ** 2


@dataclass(frozen=True)
class Transceiver:
    """Precoder ``F`` (K x M), feedforward ``W`` (M x P), feedback ``B`` (M x M).

    ``B`` is strictly upper triangular with exact zeros on and below the
    diagonal; linear kinds carry ``B = 0``.
    """
    F: np.ndarray
    W: np.ndarray
    B: np.ndarray
    kind: DesignKind
    predicted_Ree: np.ndarray
    q_active: int
    notes: Tuple[str, ...] = field(default=())

    @property
    def M(self) -> int:
        return int(self.F.shape[1])

    @property
    def U(self) -> np.ndarray:
        """Monic upper-triangular ``B + I``."""
        return self.B + np.eye(self.M, dtype=np.complex128)

    @property
    def predicted_mse(self) -> float:
        """Arithmetic MSE ``trace(predicted_Ree) / M``."""
        return float(np.real(np.trace(self.predicted_Ree))) / self.M

    @property
    def power(self) -> float:
        return float(np.real(np.trace(self.F @ self.F.conj().T)))


def scrub_feedback(U: np.ndarray) -> np.ndarray:
    """Feedback matrix ``U - I`` with exact zeros on and below the diagonal."""
    return np.triu(U, k=1).astype(np.complex128)
