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

"""QAM modem and block decision-feedback detector."""

from blockdfe.detection.constellation import Constellation, qam_map, qam_slice
from blockdfe.detection.detector import (
    DetectionResult,
    FeedbackMode,
    bdfd_detect,
    count_bit_errors,
    count_label_bit_errors,
    detect_blocks,
)

__all__ = [
    "Constellation",
    "DetectionResult",
    "FeedbackMode",
    "bdfd_detect",
    "count_bit_errors",
    "count_label_bit_errors",
    "detect_blocks",
    "qam_map",
    "qam_slice",
]
