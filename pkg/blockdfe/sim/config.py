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

"""Sweep configuration model and YAML loading."""

import logging
from enum import Enum
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from blockdfe.detection.detector import FeedbackMode
from blockdfe.errors import ConfigError, FileAccessError
from blockdfe.transceiver.registry import SCHEME_REGISTRY

logger = logging.getLogger(__name__)


class Scenario(str, Enum):
    """Channel family of a sweep."""
    FIR_ZP = "FIR_ZP"
    MIMO = "MIMO"


class SimConfig(BaseModel):
    """Monte Carlo sweep parameters.

    SNR is the per-symbol energy ``p0/M`` over the noise variance. For
    ``FIR_ZP`` sweeps ``K`` defaults to ``M`` and ``P`` is always ``K + L``;
    ``MIMO`` sweeps need ``P`` and ``K``. ``p0`` defaults to ``M``.
    """
    model_config = ConfigDict(extra="forbid")

    scenario: Scenario
    L: Optional[int] = Field(default=None, ge=0)
    normalize_taps: bool = True
    P: Optional[int] = Field(default=None, ge=1)
    K: Optional[int] = Field(default=None, ge=1)
    M: int = Field(ge=1)
    b: int = Field(default=1, ge=1, le=8)
    schemes: List[str] = Field(min_length=1)
    snr_db_grid: List[float] = Field(min_length=1)
    p0: Optional[float] = Field(default=None, gt=0)
    channels_per_point: int = Field(ge=1)
    blocks_per_channel: int = Field(default=20, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2 ** 64)
    feedback_modes: List[FeedbackMode] = Field(
        default_factory=lambda: [FeedbackMode.GENIE, FeedbackMode.REAL], min_length=1
    )
    unbiased_scaling: bool = False

    @field_validator("schemes")
    @classmethod
    def _known_schemes(cls, schemes: List[str]) -> List[str]:
        unknown = [s for s in schemes if s not in SCHEME_REGISTRY]
        if unknown:
            raise ValueError(f"unknown schemes {unknown}; known: {sorted(SCHEME_REGISTRY)}")
        if len(set(schemes)) != len(schemes):
            raise ValueError("schemes must not repeat")
        return schemes

    @field_validator("feedback_modes")
    @classmethod
    def _distinct_modes(cls, modes: List[FeedbackMode]) -> List[FeedbackMode]:
        if len(set(modes)) != len(modes):
            raise ValueError("feedback_modes must not repeat")
        return modes

    @model_validator(mode="after")
    def _derive_geometry(self) -> "SimConfig":
        if self.scenario is Scenario.FIR_ZP:
            if self.L is None:
                raise ValueError("FIR_ZP scenario needs the channel order L")
            if self.K is None:
                self.K = self.M
            expected_P = self.K + self.L
            if self.P is not None and self.P != expected_P:
                raise ValueError(f"FIR_ZP needs P = K + L = {expected_P}, got P={self.P}")
            self.P = expected_P
        else:
            if self.P is None or self.K is None:
                raise ValueError("MIMO scenario needs P and K")
            if self.L is not None:
                raise ValueError("L applies only to the FIR_ZP scenario")
        if self.p0 is None:
            self.p0 = float(self.M)
        return self

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "SimConfig":
        """Validate a plain mapping.

        Raises:
            ConfigError: unknown keys, missing keys, or invalid values.
        """
        if not isinstance(data, dict):
            raise ConfigError("sweep configuration must be a mapping of keys to values")
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid sweep configuration: {e}") from e

    def with_overrides(self, **overrides: Any) -> "SimConfig":
        """Copy with selected fields replaced; ``None`` values are ignored.

        For ``FIR_ZP`` sweeps the derived geometry follows the overrides:
        ``K`` tracks a new ``M`` when it equalled the old one, and ``P`` is
        recomputed as ``K + L`` unless it is overridden itself. A ``p0`` left
        at its default of ``M`` follows a new ``M`` as well.
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        data = self.model_dump(mode="json")
        if "M" in overrides and "p0" not in overrides and self.p0 == float(self.M):
            data["p0"] = None
        if self.scenario is Scenario.FIR_ZP:
            if "M" in overrides and "K" not in overrides and self.K == self.M:
                data["K"] = None
            if "P" not in overrides and overrides.keys() & {"K", "L", "M"}:
                data["P"] = None
        data.update(overrides)
        return SimConfig.from_mapping(data)


def load_sim_config(path: str) -> SimConfig:
    """Read and validate a YAML sweep configuration file.

    Raises:
        FileAccessError: the file cannot be read.
        ConfigError: the content is not valid YAML or not a valid configuration.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise FileAccessError(f"cannot read sweep config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"sweep config {path} is not valid YAML: {e}") from e
    logger.info(f"Loaded sweep configuration from {path}")
    return SimConfig.from_mapping(data)
