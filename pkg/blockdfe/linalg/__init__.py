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

"""Dense complex linear algebra used by every design."""

from blockdfe.linalg.matrix_core import (
    EigenSystem,
    as_cmatrix,
    cholesky_upper,
    hermitian_eig,
    inv_sqrt_pd,
    pinv_full_col_rank,
    qr_positive_diag,
)
from blockdfe.linalg.equal_diag import EqualDiagRotation, GammaSpec, equal_diag_rotation

__all__ = [
    "EigenSystem",
    "EqualDiagRotation",
    "GammaSpec",
    "as_cmatrix",
    "cholesky_upper",
    "equal_diag_rotation",
    "hermitian_eig",
    "inv_sqrt_pd",
    "pinv_full_col_rank",
    "qr_positive_diag",
]
