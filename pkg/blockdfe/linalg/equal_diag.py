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

"""Unitary rotation giving an equal-diagonal R-factor.

For a diagonal non-singular ``Gamma`` the rotation ``S`` is built one column
at a time so that the QR factorization of ``Gamma S`` has every diagonal entry
equal to the geometric mean ``(prod gamma_k)^(1/M)``.

Step ``k`` (``k = 0 .. M-2``) works inside the orthogonal complement
``Zp`` of the ``k`` columns already fixed. With ``Y = Gamma S[:, :k]`` and
``P`` the projector onto the complement of ``span(Y)``, the Hermitian matrix
``A = (Gamma Zp)^H P (Gamma Zp)`` gives the squared R-diagonal any unit
vector ``Zp x`` would produce. Mixing its extreme eigenvectors hits the
target ``g = (prod gamma_k^2)^(1/M)`` exactly. The last column is the
orthogonal mix of the final pair of modes; its diagonal entry is then fixed
by ``|det Gamma|``.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from blockdfe.errors import InvalidInput, NumericalFailure
from blockdfe.linalg.matrix_core import hermitian_eig

logger = logging.getLogger(__name__)

EQUAL_RTOL = 1e-9


@dataclass(frozen=True)
class GammaSpec:
    """Strictly positive non-increasing diagonal of ``Gamma``.

    ``order`` maps sorted position to the caller's original index and is
    the identity when the caller passed sorted values.
    """
    gammas: np.ndarray
    order: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        g = np.asarray(self.gammas, dtype=float).ravel()
        if g.size < 1:
            raise InvalidInput("GammaSpec needs at least one entry")
        if not np.all(np.isfinite(g)) or np.any(g <= 0):
            raise InvalidInput("GammaSpec entries must be finite and strictly positive")
        if np.any(np.diff(g) > 0):
            raise InvalidInput("GammaSpec entries must be sorted non-increasing")
        object.__setattr__(self, "gammas", g)
        order = np.arange(g.size) if self.order is None else np.asarray(self.order, dtype=int)
        object.__setattr__(self, "order", order)

    @classmethod
    def from_unsorted(cls, values: Sequence[float]) -> "GammaSpec":
        """Sort ``values`` descending (stable) and remember the permutation."""
        v = np.asarray(values, dtype=float).ravel()
        order = np.argsort(-v, kind="stable")
        return cls(gammas=v[order], order=order)

    @property
    def M(self) -> int:
        return int(self.gammas.size)

    def unsort_rows(self, s: np.ndarray) -> np.ndarray:
        """Map a rotation built for the sorted diagonal back to the caller's order."""
        out = np.empty_like(s)
        out[self.order, :] = s
        return out


@dataclass(frozen=True)
class EqualDiagRotation:
    """Unitary ``S`` and the common R-diagonal value ``r_diag``."""
    S: np.ndarray
    r_diag: float


def _mix_weights(values: np.ndarray, g: float, step: int):
    """Weights ``(a, b)`` with ``a^2 lam_max + b^2 lam_min = g`` and ``a^2 + b^2 = 1``."""
    lam_max, lam_min = float(values[0]), float(values[-1])
    tol = EQUAL_RTOL * max(lam_max, g)
    if g < lam_min - tol or g > lam_max + tol:
        raise NumericalFailure(
            f"step {step}: target {g:.6e} outside eigenvalue range [{lam_min:.6e}, {lam_max:.6e}]"
        )
    spread = lam_max - lam_min
    if spread <= EQUAL_RTOL * lam_max:
        return 1.0, 0.0
    a = np.sqrt(max(g - lam_min, 0.0) / spread)
    b = np.sqrt(max(lam_max - g, 0.0) / spread)
    return a, b


def equal_diag_rotation(spec: GammaSpec) -> EqualDiagRotation:
    """Build the equal-diagonal rotation for ``diag(spec.gammas)``.

    Args:
        spec: Sorted diagonal of ``Gamma``.

    Returns:
        EqualDiagRotation for the sorted diagonal. Use
        ``spec.unsort_rows`` to map ``S`` back when the spec came from
        ``GammaSpec.from_unsorted``.

    Raises:
        NumericalFailure: the target left an eigenvalue range by more than
            the tolerance.
    """
    gam = spec.gammas
    M = spec.M
    r_diag = float(np.exp(np.mean(np.log(gam))))
    g = r_diag ** 2

    if M == 1 or gam[0] - gam[-1] <= EQUAL_RTOL * gam[0]:
        return EqualDiagRotation(S=np.eye(M, dtype=np.complex128), r_diag=r_diag)

    Gamma = np.diag(gam).astype(np.complex128)
    S = np.zeros((M, M), dtype=np.complex128)

    for k in range(M - 1):
        if k == 0:
            Zp = np.eye(M, dtype=np.complex128)
            GZp = Gamma
            A = GZp.conj().T @ GZp
        else:
            q_full, _ = scipy.linalg.qr(S[:, :k])
            Zp = q_full[:, k:]
            GZp = Gamma @ Zp
            qy, _ = scipy.linalg.qr(Gamma @ S[:, :k], mode="economic")
            proj = GZp - qy @ (qy.conj().T @ GZp)
            A = GZp.conj().T @ proj
        eig = hermitian_eig(0.5 * (A + A.conj().T))
        a, b = _mix_weights(eig.values, g, k)

        y = np.zeros(M - k, dtype=np.complex128)
        y[0], y[-1] = a, b
        S[:, k] = Zp @ (eig.vectors @ y)

        if k == M - 2:
            y_last = np.zeros(M - k, dtype=np.complex128)
            y_last[0], y_last[-1] = -b, a
            S[:, M - 1] = Zp @ (eig.vectors @ y_last)

    logger.debug("equal-diagonal rotation built for M=%d, r_diag=%.6e", M, r_diag)
    return EqualDiagRotation(S=S, r_diag=r_diag)
