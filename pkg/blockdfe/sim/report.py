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

"""Sweep results and their CSV form."""

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from blockdfe.errors import FileAccessError

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "scheme",
    "snr_db",
    "feedback_mode",
    "bits",
    "errors",
    "ber",
    "stderr",
    "predicted_mse",
    "predicted_ber_bound",
    "gmi_bits",
]


def binomial_stderr(errors: int, bits: int) -> float:
    """``sqrt(p (1 - p) / n)`` of the BER estimate ``p = errors / n``."""
    if bits <= 0:
        return float("nan")
    p = errors / bits
    return math.sqrt(p * (1.0 - p) / bits)


@dataclass(frozen=True)
class SimRow:
    """One (scheme, SNR, feedback mode) cell."""
    scheme: str
    snr_db: float
    feedback_mode: str
    bits: int
    errors: int
    predicted_mse: float
    predicted_ber_bound: float
    gmi_bits: float

    @property
    def ber(self) -> float:
        return self.errors / self.bits if self.bits else float("nan")

    @property
    def stderr(self) -> float:
        return binomial_stderr(self.errors, self.bits)

    def as_record(self) -> List[str]:
        return [
            self.scheme,
            repr(float(self.snr_db)),
            self.feedback_mode,
            str(self.bits),
            str(self.errors),
            repr(float(self.ber)),
            repr(float(self.stderr)),
            repr(float(self.predicted_mse)),
            repr(float(self.predicted_ber_bound)),
            repr(float(self.gmi_bits)),
        ]

    def as_dict(self) -> Dict[str, Any]:
        """JSON-safe mapping keyed by ``CSV_COLUMNS``; non-finite numbers become ``None``."""
        values = [
            self.scheme, float(self.snr_db), self.feedback_mode, int(self.bits), int(self.errors),
            float(self.ber), float(self.stderr), float(self.predicted_mse),
            float(self.predicted_ber_bound), float(self.gmi_bits),
        ]
        return {
            key: (None if isinstance(v, float) and not math.isfinite(v) else v)
            for key, v in zip(CSV_COLUMNS, values)
        }


@dataclass
class SimReport:
    """Rows of a sweep plus the header, skipped cells and event trace."""
    rows: List[SimRow]
    header: Dict[str, Any] = field(default_factory=dict)
    skipped: List[Dict[str, Any]] = field(default_factory=list)
    trace_log: List[Dict[str, Any]] = field(default_factory=list)

    def row(self, scheme: str, snr_db: float, feedback_mode: str) -> SimRow:
        for r in self.rows:
            if r.scheme == scheme and r.snr_db == snr_db and r.feedback_mode == feedback_mode:
                return r
        raise KeyError((scheme, snr_db, feedback_mode))

    def curve(self, scheme: str, feedback_mode: str) -> List[SimRow]:
        """Rows of one BER curve ordered by SNR."""
        rows = [r for r in self.rows if r.scheme == scheme and r.feedback_mode == feedback_mode]
        return sorted(rows, key=lambda r: r.snr_db)

    def snr_at_ber(self, scheme: str, feedback_mode: str, target: float) -> Optional[float]:
        """SNR where the curve first falls through ``target``.

        Interpolates ``log10(BER)`` linearly in dB between the bracketing
        points. A zero-error point counts as half an error. Returns ``None``
        when the curve never crosses the target.
        """
        pts: List[Tuple[float, float]] = []
        for r in self.curve(scheme, feedback_mode):
            if r.bits:
                pts.append((r.snr_db, max(r.ber, 0.5 / r.bits)))
        for (s0, b0), (s1, b1) in zip(pts, pts[1:]):
            if b0 >= target > b1:
                l0, l1, lt = np.log10(b0), np.log10(b1), np.log10(target)
                return float(s0 + (lt - l0) * (s1 - s0) / (l1 - l0))
        return None

    def to_csv(self) -> str:
        """CSV text: ``#`` comment lines with the header, then the column row and data."""
        buf = io.StringIO()
        for key in sorted(self.header):
            buf.write(f"# {key}: {json.dumps(self.header[key], sort_keys=True)}\n")
        buf.write(f"# skipped_cells: {len(self.skipped)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(r.as_record())
        return buf.getvalue()

    def write_csv(self, path: str) -> None:
        """Write ``to_csv()`` to ``path``.

        Raises:
            FileAccessError: the file cannot be written.
        """
        try:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(self.to_csv())
        except OSError as e:
            raise FileAccessError(f"cannot write report {path}: {e}") from e
        logger.info(f"Wrote {len(self.rows)} rows to {path}")


def read_csv_rows(path: str) -> List[Dict[str, str]]:
    """Parse the data rows of a report CSV, skipping ``#`` header lines."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line for line in f if not line.startswith("#")]
    except OSError as e:
        raise FileAccessError(f"cannot read report {path}: {e}") from e
    return list(csv.DictReader(lines))
