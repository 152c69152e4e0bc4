# Copyright 2026 The floqrylov Authors
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

"""Krylov subspaces, Krylov complexity and spectral statistics for Floquet quantum maps."""

from ._core import (
    FloqrylovError,
    IoError,
    NumericalError,
    ParseError,
    UsageError,
    ValidationError,
    __version__,
    build_kicked_harper,
    build_toral_qkr,
    complexity,
    effective_hamiltonian,
    evolve_chain,
    krylov,
    lanczos,
    quasi_energies,
    run_cli,
    spectrum_stats,
    unitarity_defect,
)

__all__ = [
    "FloqrylovError",
    "IoError",
    "NumericalError",
    "ParseError",
    "UsageError",
    "ValidationError",
    "__version__",
    "build_kicked_harper",
    "build_toral_qkr",
    "complexity",
    "effective_hamiltonian",
    "evolve_chain",
    "krylov",
    "lanczos",
    "quasi_energies",
    "run_cli",
    "spectrum_stats",
    "unitarity_defect",
]
