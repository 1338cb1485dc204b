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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <pwla/core.hpp>

namespace pwla {

/// Classification of one junction between adjacent segments of a candidate
/// optimum: the two segments either meet (continuous) or straddle the
/// target symmetrically (reflected), i.e. g_p(mu) + g_{p+1}(mu) = 2 f(mu);
/// anything else marks the model as non-optimal.
enum class JunctionKind { kContinuous, kReflected, kViolated };

std::string to_string(JunctionKind kind);

/// Absolute slacks used by the optimality checkers. The residual-moment
/// slacks scale with sample count and data magnitude; the junction slack
/// scales with grid spacing and the steepest sampled slope, since a
/// grid-restricted optimum can only pin a junction down to one grid cell.
struct Tolerances {
    double moment_a = 1e-9;
    double moment_b = 1e-9;
    double junction = 1e-9;
};

/// Data-derived defaults: moment_a = 1e-6 * m * max|y|, moment_b additionally
/// scaled by max|x|, junction = 4 * spacing * (finite-difference slope bound).
Tolerances default_tolerances(const Dataset &data);

/// Looser moment slacks for models whose breakpoints were quantized to the
/// sample grid: a grid-restricted optimum sits up to half a cell away from
/// the true one, which leaves residual moments of order m * spacing.
Tolerances grid_scaled_tolerances(const Dataset &data);

/// Outcome of checking one model against one optimality condition. Segment
/// entries always cover all segments; junction entries cover the interior
/// breakpoints (empty for the continuity condition, where junctions are a
/// precondition instead).
struct OptimalityReport {
    std::string condition; // "per-segment-lsq+junctions" | "residual-moments"
    std::vector<bool> per_segment_lsq_ok;
    std::vector<double> moment_a; // per segment
    std::vector<double> moment_b; // per segment
    std::vector<double> junction_mu;
    std::vector<JunctionKind> junction_kind;
    std::vector<double> junction_residual; // best of the two branch residuals
    double max_moment = 0.0;
    double max_junction_residual = 0.0;
    bool pass() const;
};

/// Necessary conditions for an optimal discontinuous fit: every segment is
/// the least-squares line of its own samples (residual moments vanish), and
/// every junction is either continuous or reflected about the target value
/// there. The target value at a junction is read from the nearest sample,
/// so CSV-supplied datasets work without re-evaluating any formula.
OptimalityReport check_theorem1(const PwlModel &model, const Dataset &data,
                                const Tolerances &tol);

/// Necessary conditions for an optimal continuous fit: both residual
/// moments A_i = sum(y - g) and B_i = sum((y - g) x) vanish on every
/// segment. The model must be continuous; throws std::invalid_argument
/// otherwise.
OptimalityReport check_theorem2(const PwlModel &model, const Dataset &data,
                                const Tolerances &tol);

/// Serialises a report as JSON lines: a header object with the condition
/// and verdict, then one object per segment and per junction.
void write_report(const OptimalityReport &report, std::ostream &out);

struct MonotonicityReport {
    std::vector<int> orders; // 1..n_max
    std::vector<double> sse; // optimal sse per order
    bool non_increasing = false;
};

/// A solver maps (dataset, order) to the optimal sse at that order.
using SolveFn = std::function<double(const Dataset &, int)>;

/// Solves the fitting problem at orders 1..n_max on an m-point grid of the
/// target and checks that the optimal sse never increases with order:
/// adding a segment can only help, because every n-segment solution is also
/// expressible with n + 1 segments. `rel_slack` absorbs solver noise
/// (1e-9 suits exact solvers; stochastic search wants a few percent); the
/// slack is relative to the larger of the two compared values.
MonotonicityReport check_monotonicity(const TargetFunction &target, int n_max,
                                      const SolveFn &solver, double rel_slack,
                                      int m = 2000);

} // namespace pwla
