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

"""Exception hierarchy shared by every blockdfe module.

Each class carries the process exit code the CLI reports for it:
1 for usage errors, 2 for numerical or design failures, 3 for I/O.
"""


class BlockDfeError(Exception):
    """Base class for all library errors."""

    exit_code: int = 2


class InvalidInput(BlockDfeError):
    """Arguments violate an operation's preconditions."""

    exit_code = 1


class NotHermitian(BlockDfeError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class NotPositiveDefinite(BlockDfeError):
    """A Cholesky pivot or eigenvalue fell below the positivity threshold."""


class RankDeficient(BlockDfeError):
    """A matrix expected to have full column rank does not."""


class NumericalFailure(BlockDfeError):
    """An iteration failed to converge or a theoretical guarantee was violated numerically."""


class RegimeViolation(BlockDfeError):
    """A closed-form expression was requested outside the regime where it is valid."""


class UnknownScenario(BlockDfeError):
    """A scenario preset name is not registered."""

    exit_code = 1


class ConfigError(BlockDfeError):
    """A configuration file is malformed or carries unknown keys."""

    exit_code = 1


class FileAccessError(BlockDfeError):
    """A file could not be read or written."""

    exit_code = 3


class MatrixFormatError(BlockDfeError):
    """A matrix text file could not be parsed."""

    exit_code = 3
