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

"""Gray-coded square QAM with unit average energy.

A symbol carries ``2b`` bits: the first ``b`` select the in-phase level and
the last ``b`` the quadrature level, each through a per-axis Gray code.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from blockdfe.errors import InvalidInput


def _gray(i: np.ndarray) -> np.ndarray:
    return i ^ (i >> 1)


@dataclass(frozen=True)
class Constellation:
    """Square ``4^b``-QAM.

    Attributes:
        b: Bits per axis (``2b`` bits per symbol).
        points: All ``4^b`` points indexed by their integer bit label.
        bit_labels: ``4^b x 2b`` array, row ``n`` is the label of ``points[n]``.
    """
    b: int
    points: np.ndarray = field(repr=False)
    bit_labels: np.ndarray = field(repr=False)
    levels: np.ndarray = field(repr=False)
    gray_of_level: np.ndarray = field(repr=False)
    level_of_gray: np.ndarray = field(repr=False)

    @classmethod
    def square_qam(cls, b: int) -> "Constellation":
        """Build the unit-energy Gray-coded ``4^b``-QAM constellation."""
        if int(b) != b or b < 1:
            raise InvalidInput(f"b must be a positive integer, got {b}")
        b = int(b)
        L = 2 ** b
        scale = np.sqrt(2.0 * (L * L - 1) / 3.0)
        levels = (2.0 * np.arange(L) - (L - 1)) / scale
        gray_of_level = _gray(np.arange(L))
        level_of_gray = np.empty(L, dtype=int)
        level_of_gray[gray_of_level] = np.arange(L)

        labels = np.arange(L * L)
        i_level = level_of_gray[labels >> b]
        q_level = level_of_gray[labels & (L - 1)]
        points = levels[i_level] + 1j * levels[q_level]
        shifts = np.arange(2 * b - 1, -1, -1)
        bit_labels = ((labels[:, np.newaxis] >> shifts[np.newaxis, :]) & 1).astype(np.uint8)
        return cls(
            b=b,
            points=points,
            bit_labels=bit_labels,
            levels=levels,
            gray_of_level=gray_of_level,
            level_of_gray=level_of_gray,
        )

    @property
    def bits_per_symbol(self) -> int:
        return 2 * self.b

    @property
    def axis_levels(self) -> int:
        return 2 ** self.b

    @property
    def scale(self) -> float:
        L = self.axis_levels
        return float(np.sqrt(2.0 * (L * L - 1) / 3.0))

    def labels_from_bits(self, bits) -> np.ndarray:
        """Integer labels of consecutive ``2b``-bit groups."""
        bits = np.asarray(bits, dtype=np.uint8).ravel()
        n = self.bits_per_symbol
        if bits.size % n:
            raise InvalidInput(f"bit count {bits.size} is not a multiple of {n}")
        weights = 1 << np.arange(n - 1, -1, -1)
        return bits.reshape(-1, n).astype(np.int64) @ weights

    def slice_labels(self, z) -> np.ndarray:
        """Nearest-point labels; ties go to the smaller I, then smaller Q coordinate."""
        z = np.asarray(z, dtype=np.complex128)
        L = self.axis_levels
        s = self.scale

        def axis_index(x):
            idx = np.ceil((x * s + (L - 1)) / 2.0 - 0.5)
            return np.clip(idx, 0, L - 1).astype(np.int64)

        gi = self.gray_of_level[axis_index(z.real)]
        gq = self.gray_of_level[axis_index(z.imag)]
        return (gi << self.b) | gq


def qam_map(bits, c: Constellation) -> np.ndarray:
    """Map a bit sequence onto symbols.

    Raises:
        InvalidInput: bit count not divisible by ``2b``.
    """
    return c.points[c.labels_from_bits(bits)]


def qam_slice(z: complex, c: Constellation) -> Tuple[complex, np.ndarray]:
    """Scalar decision: nearest point and its bit label."""
    label = int(c.slice_labels(np.asarray([z]))[0])
    return complex(c.points[label]), c.bit_labels[label].copy()
