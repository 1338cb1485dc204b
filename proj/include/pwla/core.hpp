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
#include <span>
#include <string>
#include <vector>

namespace pwla {

/// Closed interval [lo, hi] on the real line. lo < hi, both finite.
struct Interval {
    double lo;
    double hi;

    Interval(double lo, double hi);

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// A named 1-D real function together with the interval it is defined on.
struct TargetFunction {
    std::string name;
    std::function<double(double)> eval;
    Interval domain;
};

/// Equally spaced samples (x_i, y_i) covering an interval endpoint to endpoint.
/// Immutable after construction; the constructor enforces strict ordering and
/// uniform spacing (1e-12 relative).
class Dataset {
public:
    Dataset(std::vector<double> xs, std::vector<double> ys);

    const std::vector<double> &xs() const { return xs_; }
    const std::vector<double> &ys() const { return ys_; }
    std::size_t m() const { return xs_.size(); }
    double spacing() const { return spacing_; }
    Interval domain() const { return {xs_.front(), xs_.back()}; }

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    double spacing_;
};

/// One affine piece a + b*x on [lo, hi].
struct Segment {
    double a; // intercept
    double b; // slope
    double lo;
    double hi;

    double eval(double x) const { return a + b * x; }
};

/// Piecewise linear function with n segments and n+1 breakpoints.
/// Segment i serves the half-open interval [breakpoints[i], breakpoints[i+1]);
/// the last interval is closed on the right.
class PwlModel {
public:
    PwlModel(std::vector<double> breakpoints, std::vector<Segment> segments,
             bool continuous);

    const std::vector<double> &breakpoints() const { return breakpoints_; }
    const std::vector<Segment> &segments() const { return segments_; }
    bool continuous() const { return continuous_; }
    int order() const { return static_cast<int>(segments_.size()); }
    Interval domain() const { return {breakpoints_.front(), breakpoints_.back()}; }

private:
    std::vector<double> breakpoints_;
    std::vector<Segment> segments_;
    bool continuous_;
};

/// Sample a target function at m equally spaced points covering its domain
/// endpoints exactly. Throws if the function is non-finite at a grid point.
Dataset make_grid(const TargetFunction &f, int m);

/// Evaluate the model at x. Throws std::domain_error outside
/// [breakpoints.front(), breakpoints.back()].
double eval_pwl(const PwlModel &model, double x);

/// Sum of squared residuals of the model against the samples.
double sse(const PwlModel &model, const Dataset &data);

/// sse / m.
double mse(const PwlModel &model, const Dataset &data);

/// Relative tolerance used for the continuity invariant of PwlModel.
inline constexpr double kContinuityTol = 1e-9;

} // namespace pwla
