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
#include <initializer_list>
#include <span>
#include <vector>

#include <pwla/core.hpp>

namespace pwla {

/// Closed-form least-squares line over a sample range.
struct LineFit {
    Segment segment;
    double sse;
};

/// Prefix sums of 1, x, x^2, y, x*y, y^2 over a sample set, enabling O(1)
/// line fits on any contiguous range. Sums are accumulated in long double.
class MomentCache {
public:
    MomentCache(std::span<const double> xs, std::span<const double> ys);
    explicit MomentCache(const Dataset &data);

    std::size_t size() const { return xs_.size(); }
    const std::vector<double> &xs() const { return xs_; }

    /// Least-squares line over samples [i, j). Requires j - i >= 2 and
    /// nonzero x-variance; throws std::invalid_argument otherwise.
    LineFit fit(std::size_t i, std::size_t j) const;

    /// Residual sse of an arbitrary line a + b*x over samples [i, j).
    double line_sse(std::size_t i, std::size_t j, double a, double b) const;

private:
    std::vector<double> xs_;
    std::vector<long double> n_, x_, xx_, y_, xy_, yy_;
};

inline LineFit fit_line(const MomentCache &cache, std::size_t i, std::size_t j) {
    return cache.fit(i, j);
}

/// Per-segment residual sums: A[i] = sum(y - g_i(x)), B[i] = sum((y - g_i(x)) x),
/// with samples assigned to segments by the model's half-open convention.
struct ResidualMoments {
    std::vector<double> A;
    std::vector<double> B;
};

ResidualMoments residual_moments(const PwlModel &model, const Dataset &data);

/// A fitted model together with its sum of squared residuals. Every solver
/// in this library reports sse as sse(model, data), so the pair is always
/// self-consistent.
struct FitResult {
    PwlModel model;
    double sse;
};

/// Continuous piecewise linear least squares with fixed interior breakpoints,
/// solved over the basis {1, x, max(0, x - mu_1), ..., max(0, x - mu_{k})}
/// by Householder QR. Breakpoints must be strictly increasing and strictly
/// inside the data domain; two breakpoints strictly between the same pair of
/// adjacent samples make the basis ill-posed and throw.
FitResult fit_cpwl_fixed(const Dataset &data,
                         std::span<const double> interior_breakpoints);

/// Convenience overload so call sites can write a breakpoint list inline;
/// std::span has no initializer_list constructor in C++20.
inline FitResult fit_cpwl_fixed(const Dataset &data,
                                std::initializer_list<double> interior) {
    return fit_cpwl_fixed(
        data, std::span<const double>(interior.begin(), interior.size()));
}

} // namespace pwla
