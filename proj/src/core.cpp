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
#include <pwla/core.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pwla {

Interval::Interval(double lo_in, double hi_in) : lo(lo_in), hi(hi_in) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("interval endpoints must be finite");
    if (!(lo < hi))
        throw std::invalid_argument("interval requires lo < hi, got [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
}

Dataset::Dataset(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() != ys_.size())
        throw std::invalid_argument("dataset requires equally many x and y");
    if (xs_.size() < 2)
        throw std::invalid_argument("dataset requires at least two samples");
    for (double v : xs_)
        if (!std::isfinite(v))
            throw std::invalid_argument("dataset x values must be finite");
    for (double v : ys_)
        if (!std::isfinite(v))
            throw std::invalid_argument("dataset y values must be finite");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i - 1] < xs_[i]))
            throw std::invalid_argument(
                "dataset x values must be strictly increasing (row " +
                std::to_string(i) + ")");
    spacing_ = (xs_.back() - xs_.front()) /
               static_cast<double>(xs_.size() - 1);
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        double step = xs_[i] - xs_[i - 1];
        if (std::abs(step - spacing_) > 1e-12 * std::abs(spacing_))
            throw std::invalid_argument(
                "dataset x values must be equally spaced (row " +
                std::to_string(i) + ")");
    }
}

PwlModel::PwlModel(std::vector<double> breakpoints,
                   std::vector<Segment> segments, bool continuous)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)),
      continuous_(continuous) {
    if (segments_.empty())
        throw std::invalid_argument("model requires at least one segment");
    if (breakpoints_.size() != segments_.size() + 1)
        throw std::invalid_argument(
            "model requires one more breakpoint than segments");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw std::invalid_argument(
                "model breakpoints must be strictly increasing");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (!std::isfinite(segments_[i].a) || !std::isfinite(segments_[i].b))
            throw std::invalid_argument(
                "segment coefficients must be finite");
        segments_[i].lo = breakpoints_[i];
        segments_[i].hi = breakpoints_[i + 1];
    }
    if (continuous_) {
        double scale = 0.0;
        for (const Segment &s : segments_)
            scale = std::max({scale, std::abs(s.eval(s.lo)),
                              std::abs(s.eval(s.hi))});
        scale = std::max(scale, 1.0);
        for (std::size_t i = 1; i < segments_.size(); ++i) {
            double mu = breakpoints_[i];
            double gap =
                std::abs(segments_[i - 1].eval(mu) - segments_[i].eval(mu));
            if (gap > kContinuityTol * scale)
                throw std::invalid_argument(
                    "model declared continuous but segments disagree at "
                    "breakpoint " +
                    std::to_string(mu));
        }
    }
}

Dataset make_grid(const TargetFunction &f, int m) {
    if (m < 2)
        throw std::invalid_argument("grid requires at least two points");
    std::vector<double> xs(static_cast<std::size_t>(m));
    std::vector<double> ys(static_cast<std::size_t>(m));
    double lo = f.domain.lo;
    double hi = f.domain.hi;
    for (int i = 0; i < m; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(m - 1);
        double x = (i == m - 1) ? hi : lo + t * (hi - lo);
        double y = f.eval(x);
        if (!std::isfinite(y))
            throw std::domain_error("target '" + f.name +
                                    "' is non-finite at x = " +
                                    std::to_string(x));
        xs[static_cast<std::size_t>(i)] = x;
        ys[static_cast<std::size_t>(i)] = y;
    }
    return {std::move(xs), std::move(ys)};
}

namespace {

// Index of the segment serving x under the half-open convention
// [mu_i, mu_{i+1}), last interval closed.
std::size_t segment_index(const std::vector<double> &mu, double x) {
    if (x == mu.back())
        return mu.size() - 2;
    auto it = std::upper_bound(mu.begin(), mu.end(), x);
    return static_cast<std::size_t>(it - mu.begin()) - 1;
}

} // namespace

double eval_pwl(const PwlModel &model, double x) {
    const std::vector<double> &mu = model.breakpoints();
    if (x < mu.front() || x > mu.back())
        throw std::domain_error("x = " + std::to_string(x) +
                                " outside model domain [" +
                                std::to_string(mu.front()) + ", " +
                                std::to_string(mu.back()) + "]");
    return model.segments()[segment_index(mu, x)].eval(x);
}

double sse(const PwlModel &model, const Dataset &data) {
    double total = 0.0;
    const std::vector<double> &xs = data.xs();
    const std::vector<double> &ys = data.ys();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - eval_pwl(model, xs[i]);
        total += r * r;
    }
    return total;
}

double mse(const PwlModel &model, const Dataset &data) {
    return sse(model, data) / static_cast<double>(data.m());
}

} // namespace pwla
