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

"""Transceiver designs: optimized BDFD schemes, baselines and receiver synthesis."""

from blockdfe.transceiver.baselines import BaselineScheme, baseline_precoder, dft_matrix
from blockdfe.transceiver.base_design import TransceiverDesign
from blockdfe.transceiver.designs.mmse_bdfd import design_mmse_bdfd
from blockdfe.transceiver.designs.zf_bdfd import design_zf_bdfd
from blockdfe.transceiver.receiver import receiver_for_precoder
from blockdfe.transceiver.registry import SCHEME_REGISTRY, available_schemes, load_scheme
from blockdfe.transceiver.types import (
    BaselineKind,
    DesignKind,
    DesignSpec,
    Transceiver,
    WaterfillResult,
)
from blockdfe.transceiver.waterfill import linear_mmse_allocation, waterfill

__all__ = [
    "BaselineKind",
    "BaselineScheme",
    "DesignKind",
    "DesignSpec",
    "SCHEME_REGISTRY",
    "Transceiver",
    "TransceiverDesign",
    "WaterfillResult",
    "available_schemes",
    "baseline_precoder",
    "design_mmse_bdfd",
    "design_zf_bdfd",
    "dft_matrix",
    "linear_mmse_allocation",
    "load_scheme",
    "receiver_for_precoder",
    "waterfill",
]
