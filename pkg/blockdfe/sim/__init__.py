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

"""Monte Carlo sweeps, presets, result files and matrix I/O."""

from blockdfe.sim.config import Scenario, SimConfig, load_sim_config
from blockdfe.sim.engine import draw_channel, run_sweep, simulate_channel
from blockdfe.sim.matrix_io import read_matrix, read_transceiver, write_matrix, write_transceiver
from blockdfe.sim.presets import PRESETS, scenario_preset
from blockdfe.sim.report import CSV_COLUMNS, SimReport, SimRow

__all__ = [
    "CSV_COLUMNS",
    "PRESETS",
    "Scenario",
    "SimConfig",
    "SimReport",
    "SimRow",
    "draw_channel",
    "load_sim_config",
    "read_matrix",
    "read_transceiver",
    "run_sweep",
    "scenario_preset",
    "simulate_channel",
    "write_matrix",
    "write_transceiver",
]
