# Copyright 2026 The pwla authors
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
"""Optimal piecewise linear approximation in one dimension.

The heavy lifting lives in the compiled extension ``_pwla``; this package
re-exports its public surface.
"""

from ._pwla import (  # noqa: F401
    Dataset,
    FitResult,
    Interval,
    JunctionKind,
    LnnNeuron,
    LnnParams,
    OptimalityReport,
    PwlModel,
    Segment,
    Tolerances,
    TrainResult,
    catalog_names,
    check_continuous_optimality,
    check_discontinuous_optimality,
    default_tolerances,
    fit_fixed,
    grid,
    grid_scaled_tolerances,
    load_csv,
    load_model,
    mse,
    network_forward,
    refine,
    save_model,
    solve_de,
    solve_dp,
    solve_scan,
    sse,
    to_pwl,
    train,
)

__all__ = [
    "Dataset",
    "FitResult",
    "Interval",
    "JunctionKind",
    "LnnNeuron",
    "LnnParams",
    "OptimalityReport",
    "PwlModel",
    "Segment",
    "Tolerances",
    "TrainResult",
    "catalog_names",
    "check_continuous_optimality",
    "check_discontinuous_optimality",
    "default_tolerances",
    "fit_fixed",
    "grid",
    "grid_scaled_tolerances",
    "load_csv",
    "load_model",
    "mse",
    "network_forward",
    "refine",
    "save_model",
    "solve_de",
    "solve_dp",
    "solve_scan",
    "sse",
    "to_pwl",
    "train",
]

__version__ = "1.0.0"
