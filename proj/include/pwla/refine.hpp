/* Copyright 2026 The pwla authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <vector>

#include <pwla/core.hpp>
#include <pwla/linfit.hpp>
#include <pwla/lnn.hpp>

namespace pwla {

/// Cost of deleting interior breakpoint index i (0-based over the interior
/// breakpoints): the mean squared error, over the target samples in
/// [mu_{i-1}, mu_{i+1}], of the straight chord joining the model's values
/// at mu_{i-1} and mu_{i+1}. Cheap breakpoints are the ones whose removal
/// barely bends the fit away from the data.
double chord_cost(const PwlModel &model, const Dataset &data, std::size_t i);

/// Greedily removes interior breakpoints one at a time — always the one
/// with the currently smallest chord cost, ties to the smallest index —
/// until `keep` remain, and returns the survivors sorted ascending. After
/// a removal the model is treated as the polyline through the surviving
/// (breakpoint, value) knots, and only the affected neighbours' costs are
/// recomputed. Requires keep < interior breakpoint count.
std::vector<double> prune(const PwlModel &model, const Dataset &data,
                          std::size_t keep);

struct RefineResult {
    PwlModel model; // pruned breakpoints refit against the data
    double mse = 0.0;
};

/// Over-parameterise, prune, refit:
///  1. train a network with n_over - 1 units,
///  2. convert it to an explicit model and prune down to n_target - 1
///     interior breakpoints,
///  3. refit those breakpoints exactly with fit_cpwl_fixed.
/// Requires n_over > n_target >= 2; deterministic given config.seed.
RefineResult refine_pipeline(const Dataset &data, int n_target, int n_over,
                             const TrainConfig &config);

} // namespace pwla
