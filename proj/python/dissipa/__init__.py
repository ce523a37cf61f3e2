# Copyright 2026 The dissipa Authors
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

"""Python bindings for the dissipa C++ core."""

from ._core import (
    ConfigError,
    ExperimentConfig,
    InvalidInput,
    LambdaParams,
    Model,
    PropagationError,
    TwoAtomParams,
    build_lambda_effective,
    build_lambda_full,
    build_two_atom_effective,
    build_two_atom_full,
    commutator,
    compare_zeno,
    cooperativity,
    dissipator,
    format_double,
    hermitian_eigen,
    kron,
    noise_scan,
    noise_superoperator,
    simulate,
    sweep,
    verify,
    zeno_reduce,
)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "InvalidInput",
    "LambdaParams",
    "Model",
    "PropagationError",
    "TwoAtomParams",
    "build_lambda_effective",
    "build_lambda_full",
    "build_two_atom_effective",
    "build_two_atom_full",
    "commutator",
    "compare_zeno",
    "cooperativity",
    "dissipator",
    "format_double",
    "hermitian_eigen",
    "kron",
    "noise_scan",
    "noise_superoperator",
    "simulate",
    "sweep",
    "verify",
    "zeno_reduce",
]
