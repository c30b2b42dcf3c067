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

"""Named sweep presets for the FIR and MIMO scenarios."""

from typing import Any, Dict

from blockdfe.errors import UnknownScenario
from blockdfe.sim.config import SimConfig

ALL_SCHEMES = [
    "OPT_ZF_BDFD",
    "OPT_MMSE_BDFD",
    "IDENTITY_ZF_BDFD",
    "IDENTITY_MMSE_BDFD",
    "DFT_ZF_BDFD",
    "DFT_MMSE_BDFD",
    "OPT_LINEAR_ZF",
    "OPT_LINEAR_MMSE",
]

DEFAULT_CHANNELS = 500
DEFAULT_BLOCKS = 20
DEFAULT_SEED = 20250101

PRESETS: Dict[str, Dict[str, Any]] = {
    # length-5 unit-energy FIR, 16 symbols per zero-padded block, 4-QAM
    "fir16": {
        "scenario": "FIR_ZP",
        "L": 4,
        "K": 16,
        "M": 16,
        "b": 1,
        "snr_db_grid": [float(s) for s in range(0, 21, 2)],
    },
    "mimo33": {
        "scenario": "MIMO",
        "P": 3,
        "K": 3,
        "M": 3,
        "b": 1,
        "snr_db_grid": [float(s) for s in range(0, 31, 3)],
    },
    "mimo34": {
        "scenario": "MIMO",
        "P": 4,
        "K": 3,
        "M": 3,
        "b": 1,
        "snr_db_grid": [float(s) for s in range(0, 31, 3)],
    },
}


def scenario_preset(name: str) -> SimConfig:
    """Return the preset sweep configuration ``name``.

    Raises:
        UnknownScenario: ``name`` is not a registered preset.
    """
    try:
        base = PRESETS[name]
    except KeyError:
        raise UnknownScenario(f"unknown preset {name!r}; known: {sorted(PRESETS)}") from None
    data = dict(base)
    data.update({
        "schemes": list(ALL_SCHEMES),
        "p0": float(base["M"]),
        "channels_per_point": DEFAULT_CHANNELS,
        "blocks_per_channel": DEFAULT_BLOCKS,
        "master_seed": DEFAULT_SEED,
        "feedback_modes": ["GENIE", "REAL"],
    })
    return SimConfig.from_mapping(data)
