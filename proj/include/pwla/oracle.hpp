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

#include <cstdint>
#include <vector>

#include <pwla/core.hpp>
#include <pwla/linfit.hpp>

namespace pwla {

/// Dynamic-programming table for segmented least squares. cost[j][k] is the
/// minimal sse of covering the first j samples with k segments (infinity
/// when infeasible); split[j][k] is the start index of the last segment in
/// that optimum. cost[j][1] equals the single-line fit over [0, j), and
/// cost[j][k] is non-increasing in k.
struct DpTable {
    std::vector<std::vector<double>> cost;
    std::vector<std::vector<std::size_t>> split;
};

/// Builds the table for up to n_max segments. Each segment must contain at
/// least two samples. Ties break toward the smallest split index, which
/// makes backtracking deterministic.
DpTable build_dp_table(const MomentCache &cache, int n_max);

/// Reconstructs the optimal n-segment model from a built table. Interior
/// breakpoints are placed at the midpoint of the grid cell separating two
/// consecutive segments' samples, so no sample ever sits exactly on an
/// interior breakpoint and sse(model, data) reproduces the table cost.
PwlModel dp_model(const DpTable &table, const MomentCache &cache, int n);

/// Optimal discontinuous piecewise linear fit with n segments over all
/// grid-restricted sample partitions (O(m^2 n) time, O(1)-cost line fits).
/// Requires n >= 1 and m >= 2n; throws std::invalid_argument otherwise.
FitResult solve_pwla_dp(const Dataset &data, int n);

/// Optimal continuous piecewise linear fit with n in {2, 3} segments, found
/// by exhaustively scanning every tuple of interior grid points and
/// refitting each with fit_cpwl_fixed. Ties (within 1e-12 relative of the
/// incumbent) break toward the lexicographically smallest breakpoint tuple.
/// Orders above 3 are refused (the enumeration explodes combinatorially;
/// use solve_cpwla_de instead).
FitResult solve_cpwla_scan(const Dataset &data, int n);

/// Differential evolution settings (DE/rand/1/bin).
struct DeConfig {
    int population = 30; // >= 4
    int generations = 200;
    double crossover = 0.7; // CR, in [0, 1]
    double weight = 0.8;    // F, in [0, 2]
    std::uint64_t seed = 0;
};

/// Sorts a candidate breakpoint vector, clamps it into the open domain, and
/// enforces a minimum gap between consecutive breakpoints (and against the
/// domain ends) by sweeping left to right then right to left. Exposed for
/// testing.
std::vector<double> de_repair(std::vector<double> candidate, Interval domain,
                              double min_gap);

/// Continuous piecewise linear fit with n >= 2 segments via differential
/// evolution over the n - 1 interior breakpoints. Candidate vectors are
/// sorted before evaluation (the search space is unordered tuples) and
/// repaired with a one-grid-spacing minimum gap before scoring with
/// fit_cpwl_fixed. Bit-identical across reruns with the same seed.
FitResult solve_cpwla_de(const Dataset &data, int n, const DeConfig &config);

} // namespace pwla
