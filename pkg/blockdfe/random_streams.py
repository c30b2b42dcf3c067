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

"""Index-addressed random streams.

Every stream is a counter-based Philox generator keyed by
``(master_seed, purpose, channel_index, snr_index)``, so a trial draws the
same numbers no matter which worker runs it or in what order.
"""

from enum import IntEnum

import numpy as np


class Purpose(IntEnum):
    """Disjoint tags for the independent random quantities of a sweep."""
    CHANNEL = 0
    DATA = 1
    NOISE = 2


def stream(master_seed: int, purpose: Purpose, channel_index: int = 0, snr_index: int = 0) -> np.random.Generator:
    """Return the generator for one (purpose, channel, SNR) cell.

    Args:
        master_seed: Non-negative 64-bit sweep seed.
        purpose: Which quantity the stream feeds.
        channel_index: Channel realization index.
        snr_index: Index into the SNR grid (0 for SNR-independent streams).

    Returns:
        A fresh ``numpy.random.Generator``.
    """
    seq = np.random.SeedSequence(
        int(master_seed),
        spawn_key=(int(purpose), int(channel_index), int(snr_index)),
    )
    return np.random.Generator(np.random.Philox(seq))
