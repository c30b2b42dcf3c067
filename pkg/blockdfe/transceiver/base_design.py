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

"""Base Design Class - common interface for every transceiver scheme."""

import logging
from abc import ABC, abstractmethod

from blockdfe.channel import ChannelModel
from blockdfe.transceiver.types import DesignKind, Transceiver, DesignSpec


class TransceiverDesign(ABC):
    """Base class for all transceiver schemes.

    A scheme turns a channel and a design spec into a full (F, W, B)
    triple. Subclasses pick the precoder and the receiver structure.
    """

    def __init__(self, name: str, description: str, kind: DesignKind):
        """Initialize the scheme.

        Args:
            name: Registry name of the scheme (``"OPT_ZF_BDFD"``...).
            description: One-line description used in reports.
            kind: Receiver structure the scheme produces.
        """
        self.name = name
        self.description = description
        self.kind = kind
        self.logger = logging.getLogger(f"{__name__}.{name}")

    @property
    def detector_kind(self) -> str:
        """``"ZF"`` or ``"MMSE"``, the SINR convention of the receiver."""
        return "ZF" if self.kind.is_zf else "MMSE"

    @abstractmethod
    def design(self, ch: ChannelModel, spec: DesignSpec) -> Transceiver:
        """Build the transceiver for one channel realization.

        Args:
            ch: Channel and noise covariance.
            spec: Block size and power budget.

        Returns:
            Configured Transceiver.
        """
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, kind={self.kind.value})"
