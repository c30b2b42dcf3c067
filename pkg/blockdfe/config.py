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

"""Runtime settings loaded from the project-root config.yaml."""

import logging
import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, "config.yaml")

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "runtime_settings": {
        "log_level": "INFO",
        "workers": 1,
    },
    "server_settings": {
        "host": "0.0.0.0",
        "port": 8000,
        "max_simulation_channels": 50,
    },
}


def _merge(defaults: Dict[str, Any], loaded: Dict[str, Any]) -> Dict[str, Any]:
    merged = {section: dict(values) for section, values in defaults.items()}
    for section, values in (loaded or {}).items():
        if isinstance(values, dict):
            merged.setdefault(section, {}).update(values)
        else:
            merged[section] = values
    return merged


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Load runtime settings, layering environment overrides on top.

    Args:
        config_path: Explicit path; falls back to ``BLOCKDFE_CONFIG`` and then
            the project-root ``config.yaml``.

    Returns:
        Settings dictionary with ``runtime_settings`` and ``server_settings``.
    """
    load_dotenv()
    path = config_path or os.getenv("BLOCKDFE_CONFIG") or DEFAULT_CONFIG_PATH
    try:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
    except FileNotFoundError:
        logger.warning(f"Config file not found at {path}. Using defaults.")
        loaded = {}
    except Exception as e:
        logger.error(f"Error loading config file: {e}. Using defaults.")
        loaded = {}

    config = _merge(DEFAULT_CONFIG, loaded)

    runtime = config["runtime_settings"]
    if os.getenv("BLOCKDFE_LOG_LEVEL"):
        runtime["log_level"] = os.environ["BLOCKDFE_LOG_LEVEL"]
    if os.getenv("BLOCKDFE_WORKERS"):
        try:
            runtime["workers"] = int(os.environ["BLOCKDFE_WORKERS"])
        except ValueError:
            logger.warning("Ignoring non-integer BLOCKDFE_WORKERS=%s", os.environ["BLOCKDFE_WORKERS"])
    return config
