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

"""Logging setup and the sweep trace log."""

import logging
import time
from typing import Any, Dict, List, Optional, Union

LOG_FORMAT = "[%(levelname)s]: %(message)s"

logger = logging.getLogger(__name__)


def configure_logging(level: Union[str, int] = logging.INFO) -> None:
    """Install the project log format on the root logger.

    Args:
        level: Level name (``"DEBUG"``, ``"info"``...) or numeric level.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.INFO
    logging.basicConfig(format=LOG_FORMAT, level=level, force=True)


def log_sweep_event(
    action: str,
    details: Dict[str, Any],
    trace_log: List[Dict[str, Any]],
    source: Optional[str] = None,
) -> dict:
    """Logs a sweep event to a trace log list.

    Args:
        action: The type of event being logged (``"cell_skipped"``, ``"sweep_done"``...).
        details: Structured details about the event.
        trace_log: The list the entry is appended to.
        source: Component that raised the event.

    Returns:
        dict: Status of the logging operation.
    """
    trace_log.append({
        "timestamp": time.time(),
        "source": source or "sim",
        "action": action,
        "details": details,
    })
    logger.debug("%s: %s", action, details)

    return {
        "status": "success"
    }
