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

"""Scheme registry and dynamic loading."""

import importlib
import logging
from typing import Dict

from blockdfe.errors import InvalidInput
from blockdfe.transceiver.base_design import TransceiverDesign

logger = logging.getLogger(__name__)

# =============================================================================
# SCHEME REGISTRY AND DYNAMIC LOADING
# =============================================================================

# Each module exposes a scheme object named after the lower-cased scheme name.
SCHEME_REGISTRY: Dict[str, str] = {
    "OPT_ZF_BDFD": ".designs.zf_bdfd",
    "OPT_MMSE_BDFD": ".designs.mmse_bdfd",
    "OPT_MMSE_VC": ".designs.mmse_bdfd",
    "IDENTITY_ZF_BDFD": ".baselines",
    "IDENTITY_MMSE_BDFD": ".baselines",
    "DFT_ZF_BDFD": ".baselines",
    "DFT_MMSE_BDFD": ".baselines",
    "OPT_LINEAR_ZF": ".baselines",
    "OPT_LINEAR_MMSE": ".baselines",
}

_loaded: Dict[str, TransceiverDesign] = {}


def load_scheme(name: str) -> TransceiverDesign:
    """Import and return the scheme object registered under ``name``.

    Raises:
        InvalidInput: unknown scheme name.
    """
    if name in _loaded:
        return _loaded[name]
    try:
        module_path = SCHEME_REGISTRY[name]
        module = importlib.import_module(module_path, package="blockdfe.transceiver")
        scheme = getattr(module, name.lower())
    except KeyError:
        raise InvalidInput(f"unknown scheme {name!r}; known: {sorted(SCHEME_REGISTRY)}") from None
    except (ImportError, AttributeError) as e:
        logger.error(f"Error loading scheme '{name}': {e}")
        raise InvalidInput(f"scheme {name!r} could not be loaded: {e}") from e
    _loaded[name] = scheme
    return scheme


def available_schemes():
    return list(SCHEME_REGISTRY)
