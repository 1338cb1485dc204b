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
#include <pwla/linfit.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pwla {

MomentCache::MomentCache(std::span<const double> xs, std::span<const double> ys)
    : xs_(xs.begin(), xs.end()) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("moment cache requires matching x and y");
    std::size_t m = xs.size();
    n_.resize(m + 1, 0.0L);
    x_.resize(m + 1, 0.0L);
    xx_.resize(m + 1, 0.0L);
    y_.resize(m + 1, 0.0L);
    xy_.resize(m + 1, 0.0L);
    yy_.resize(m + 1, 0.0L);
    for (std::size_t i = 0; i < m; ++i) {
        long double x = xs[i];
        long double y = ys[i];
        n_[i + 1] = n_[i] + 1.0L;
        x_[i + 1] = x_[i] + x;
        xx_[i + 1] = xx_[i] + x * x;
        y_[i + 1] = y_[i] + y;
        xy_[i + 1] = xy_[i] + x * y;
        yy_[i + 1] = yy_[i] + y * y;
    }
}

MomentCache::MomentCache(const Dataset &data)
    : MomentCache(std::span<const double>(data.xs()),
                  std::span<const double>(data.ys())) {}

LineFit MomentCache::fit(std::size_t i, std::size_t j) const {
    if (j > xs_.size() || i + 2 > j)
        throw std::invalid_argument("line fit needs a range of >= 2 samples");
    long double n = n_[j] - n_[i];
    long double sx = x_[j] - x_[i];
    long double sxx = xx_[j] - xx_[i];
    long double sy = y_[j] - y_[i];
    long double sxy = xy_[j] - xy_[i];
    long double det = n * sxx - sx * sx;
    if (!(det > 0.0L))
        throw std::invalid_argument("line fit needs nonzero x-variance");
    long double b = (n * sxy - sx * sy) / det;
    long double a = (sy - b * sx) / n;
    LineFit out;
    out.segment = {static_cast<double>(a), static_cast<double>(b), xs_[i],
                   xs_[j - 1]};
    out.sse = line_sse(i, j, out.segment.a, out.segment.b);
    return out;
}

double MomentCache::line_sse(std::size_t i, std::size_t j, double a,
                             double b) const {
    if (j > xs_.size() || i >= j)
        throw std::invalid_argument("sse range out of bounds");
    long double n = n_[j] - n_[i];
    long double sx = x_[j] - x_[i];
    long double sxx = xx_[j] - xx_[i];
    long double sy = y_[j] - y_[i];
    long double sxy = xy_[j] - xy_[i];
    long double syy = yy_[j] - yy_[i];
    long double la = a;
    long double lb = b;
    // sum (y - a - b x)^2 expanded over the cached moments.
    long double value = syy - 2.0L * la * sy - 2.0L * lb * sxy + la * la * n +
                        2.0L * la * lb * sx + lb * lb * sxx;
    return static_cast<double>(std::max(value, 0.0L));
}

ResidualMoments residual_moments(const PwlModel &model, const Dataset &data) {
    const std::vector<double> &mu = model.breakpoints();
    Interval span = model.domain();
    ResidualMoments out;
    out.A.assign(model.segments().size(), 0.0);
    out.B.assign(model.segments().size(), 0.0);
    const std::vector<double> &xs = data.xs();
    const std::vector<double> &ys = data.ys();
    if (xs.front() < span.lo || xs.back() > span.hi)
        throw std::invalid_argument(
            "residual moments require the model to cover the data domain");
    std::size_t seg = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        while (seg + 1 < model.segments().size() && x >= mu[seg + 1])
            ++seg;
        double r = ys[i] - model.segments()[seg].eval(x);
        out.A[seg] += r;
        out.B[seg] += r * x;
    }
    return out;
}

FitResult fit_cpwl_fixed(const Dataset &data,
                       std::span<const double> interior_breakpoints) {
    const std::vector<double> &xs = data.xs();
    const std::vector<double> &ys = data.ys();
    std::size_t m = xs.size();
    std::size_t k = interior_breakpoints.size();
    double lo = xs.front();
    double hi = xs.back();
    for (std::size_t i = 0; i < k; ++i) {
        double mu = interior_breakpoints[i];
        if (!(mu > lo && mu < hi))
            throw std::invalid_argument(
                "breakpoint " + std::to_string(mu) +
                " is not strictly inside the data domain");
        if (i > 0 && !(interior_breakpoints[i - 1] < mu))
            throw std::invalid_argument(
                "breakpoints must be strictly increasing");
    }
    // Two breakpoints strictly between the same pair of adjacent samples
    // leave a sample-free middle piece, which makes the fit ill-posed.
    for (std::size_t i = 0; i + 1 < k; ++i) {
        double a = interior_breakpoints[i];
        double b = interior_breakpoints[i + 1];
        auto cell = std::upper_bound(xs.begin(), xs.end(), a) - xs.begin();
        // a lies in [xs[cell-1], xs[cell]); strictly between iff not a sample.
        bool a_between = a != xs[static_cast<std::size_t>(cell - 1)];
        if (a_between && b < xs[static_cast<std::size_t>(cell)])
            throw std::invalid_argument(
                "ill-posed fit: breakpoints " + std::to_string(a) + " and " +
                std::to_string(b) +
                " both lie strictly between the same pair of samples");
    }

    // Least squares over the hinge basis {1, x, max(0, x - mu_1), ...}.
    // Householder QR with column pivoting instead of normal equations: the
    // hinge columns become nearly collinear when breakpoints cluster, and
    // squaring the matrix would double the resulting precision loss.
    Eigen::MatrixXd design(m, k + 2);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = xs[i];
        for (std::size_t j = 0; j < k; ++j)
            design(i, j + 2) = std::max(0.0, xs[i] - interior_breakpoints[j]);
        rhs(i) = ys[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < static_cast<Eigen::Index>(k + 2))
        throw std::invalid_argument("ill-posed fit: hinge basis is rank "
                                    "deficient for these breakpoints");
    Eigen::VectorXd coef = qr.solve(rhs);

    // Expand the hinge coefficients into explicit per-segment lines: each
    // hinge adds its slope past its breakpoint and bends the intercept to
    // keep the function continuous.
    std::vector<double> breakpoints;
    breakpoints.reserve(k + 2);
    breakpoints.push_back(lo);
    breakpoints.insert(breakpoints.end(), interior_breakpoints.begin(),
                       interior_breakpoints.end());
    breakpoints.push_back(hi);
    std::vector<Segment> segments(k + 1);
    double a = coef(0);
    double b = coef(1);
    for (std::size_t s = 0; s <= k; ++s) {
        if (s > 0) {
            double gamma = coef(static_cast<Eigen::Index>(s) + 1);
            b += gamma;
            a -= gamma * interior_breakpoints[s - 1];
        }
        segments[s] = {a, b, breakpoints[s], breakpoints[s + 1]};
    }
    FitResult out{PwlModel(std::move(breakpoints), std::move(segments), true),
                0.0};
    out.sse = sse(out.model, data);
    return out;
}

} // namespace pwla
