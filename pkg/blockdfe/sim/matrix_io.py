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

"""Plain-text complex matrix files.

A matrix block is a header line ``cmatrix <rows> <cols>`` followed by the
entries in row-major order as ``re:im`` pairs separated by whitespace (one
matrix row per line when written). Floats use the shortest repr that
round-trips exactly.

A transceiver file holds ``meta <key> <value>`` lines and named blocks
(``name F`` then a matrix block) for ``F``, ``W``, ``B`` and ``Ree``.
"""

import logging
from typing import Dict, List, Tuple

import numpy as np

from blockdfe.errors import FileAccessError, MatrixFormatError
from blockdfe.linalg.matrix_core import as_cmatrix
from blockdfe.transceiver.types import DesignKind, Transceiver

logger = logging.getLogger(__name__)


def format_matrix(a) -> str:
    """Text form of one matrix block."""
    a = as_cmatrix(a)
    lines = [f"cmatrix {a.shape[0]} {a.shape[1]}"]
    for row in a:
        lines.append(" ".join(f"{float(z.real)!r}:{float(z.imag)!r}" for z in row))
    return "\n".join(lines) + "\n"


def _parse_entry(token: str) -> complex:
    try:
        re_part, im_part = token.split(":")
        return complex(float(re_part), float(im_part))
    except ValueError:
        raise MatrixFormatError(f"bad matrix entry {token!r}; expected re:im") from None


def _parse_block(tokens: List[str], pos: int) -> Tuple[np.ndarray, int]:
    if pos + 2 >= len(tokens):
        raise MatrixFormatError("truncated matrix header")
    if tokens[pos] != "cmatrix":
        raise MatrixFormatError(f"expected 'cmatrix', found {tokens[pos]!r}")
    try:
        rows, cols = int(tokens[pos + 1]), int(tokens[pos + 2])
    except (ValueError, IndexError):
        raise MatrixFormatError("matrix header needs integer rows and cols") from None
    if rows < 1 or cols < 1:
        raise MatrixFormatError(f"matrix dimensions must be positive, got {rows}x{cols}")
    start = pos + 3
    end = start + rows * cols
    if end > len(tokens):
        raise MatrixFormatError(f"expected {rows * cols} entries, found {len(tokens) - start}")
    values = np.array([_parse_entry(t) for t in tokens[start:end]], dtype=np.complex128)
    m = values.reshape(rows, cols)
    if not np.all(np.isfinite(m)):
        raise MatrixFormatError("matrix contains NaN or Inf")
    return m, end


def parse_matrix(text: str) -> np.ndarray:
    """Parse exactly one matrix block."""
    tokens = text.split()
    if not tokens:
        raise MatrixFormatError("empty matrix text")
    m, end = _parse_block(tokens, 0)
    if end != len(tokens):
        raise MatrixFormatError(f"{len(tokens) - end} unexpected trailing tokens")
    return m


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise FileAccessError(f"cannot read {path}: {e}") from e


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise FileAccessError(f"cannot write {path}: {e}") from e


def read_matrix(path: str) -> np.ndarray:
    return parse_matrix(_read_text(path))


def write_matrix(path: str, a) -> None:
    _write_text(path, format_matrix(a))


def format_transceiver(t: Transceiver) -> str:
    parts = [
        f"meta kind {t.kind.value}\n",
        f"meta q_active {t.q_active}\n",
        f"meta predicted_mse {t.predicted_mse!r}\n",
    ]
    for name, m in (("F", t.F), ("W", t.W), ("B", t.B), ("Ree", t.predicted_Ree)):
        parts.append(f"name {name}\n")
        parts.append(format_matrix(m))
    return "".join(parts)


def parse_transceiver(text: str) -> Transceiver:
    """Parse a transceiver file.

    Raises:
        MatrixFormatError: missing blocks, unknown directives, or malformed matrices.
    """
    tokens = text.split()
    meta: Dict[str, str] = {}
    blocks: Dict[str, np.ndarray] = {}
    pos = 0
    while pos < len(tokens):
        directive = tokens[pos]
        if directive == "meta" and pos + 2 < len(tokens):
            meta[tokens[pos + 1]] = tokens[pos + 2]
            pos += 3
        elif directive == "name" and pos + 1 < len(tokens):
            blocks[tokens[pos + 1]], pos = _parse_block(tokens, pos + 2)
        else:
            raise MatrixFormatError(f"unexpected token {directive!r}")
    missing = [n for n in ("F", "W", "B", "Ree") if n not in blocks]
    if missing or "kind" not in meta:
        raise MatrixFormatError(f"transceiver file incomplete; missing {missing or ['kind']}")
    try:
        kind = DesignKind(meta["kind"])
        q_active = int(meta.get("q_active", blocks["F"].shape[1]))
    except ValueError as e:
        raise MatrixFormatError(f"bad transceiver metadata: {e}") from e
    return Transceiver(
        F=blocks["F"],
        W=blocks["W"],
        B=blocks["B"],
        kind=kind,
        predicted_Ree=blocks["Ree"],
        q_active=q_active,
    )


def write_transceiver(path: str, t: Transceiver) -> None:
    _write_text(path, format_transceiver(t))
    logger.info(f"Wrote {t.kind.value} transceiver to {path}")


def read_transceiver(path: str) -> Transceiver:
    return parse_transceiver(_read_text(path))
