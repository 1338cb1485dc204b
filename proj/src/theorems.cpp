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
#include <pwla/theorems.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include <pwla/linfit.hpp>

namespace pwla {

namespace {

double abs_max(const std::vector<double> &values) {
    double out = 0.0;
    for (double v : values)
        out = std::max(out, std::abs(v));
    return out;
}

// Steepest slope the samples exhibit between neighbours; bounds how far a
// junction value can move across one grid cell.
double slope_bound(const Dataset &data) {
    const std::vector<double> &xs = data.xs();
    const std::vector<double> &ys = data.ys();
    double bound = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        bound = std::max(bound,
                         std::abs((ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1])));
    return bound;
}

double nearest_sample_value(const Dataset &data, double x) {
    double t = (x - data.xs().front()) / data.spacing();
    long long i = std::llround(t);
    i = std::clamp(i, 0LL, static_cast<long long>(data.m()) - 1);
    return data.ys()[static_cast<std::size_t>(i)];
}

void fill_moments(OptimalityReport &report, const PwlModel &model,
                  const Dataset &data, const Tolerances &tol) {
    ResidualMoments moments = residual_moments(model, data);
    report.moment_a = moments.A;
    report.moment_b = moments.B;
    report.per_segment_lsq_ok.resize(moments.A.size());
    for (std::size_t i = 0; i < moments.A.size(); ++i) {
        report.per_segment_lsq_ok[i] = std::abs(moments.A[i]) <= tol.moment_a &&
                                       std::abs(moments.B[i]) <= tol.moment_b;
        report.max_moment = std::max(
            {report.max_moment, std::abs(moments.A[i]), std::abs(moments.B[i])});
    }
}

} // namespace

std::string to_string(JunctionKind kind) {
    switch (kind) {
    case JunctionKind::kContinuous:
        return "continuous";
    case JunctionKind::kReflected:
        return "reflected";
    case JunctionKind::kViolated:
        return "violated";
    }
    return "violated";
}

Tolerances default_tolerances(const Dataset &data) {
    double scale_y = std::max(abs_max(data.ys()), 1e-9);
    double scale_x = std::max(abs_max(data.xs()), 1e-9);
    double m = static_cast<double>(data.m());
    Tolerances tol;
    tol.moment_a = 1e-6 * m * scale_y;
    tol.moment_b = 1e-6 * m * scale_y * scale_x;
    tol.junction = 4.0 * data.spacing() * slope_bound(data);
    return tol;
}

Tolerances grid_scaled_tolerances(const Dataset &data) {
    Tolerances tol = default_tolerances(data);
    // A breakpoint quantized to the sample grid sits up to half a cell from
    // the true optimum, leaving per-segment residual sums of order
    // m * spacing * slope.
    double m = static_cast<double>(data.m());
    double scale_x = std::max(abs_max(data.xs()), 1e-9);
    double quantization = m * data.spacing() * std::max(slope_bound(data), 1e-9);
    tol.moment_a = std::max(tol.moment_a, quantization);
    tol.moment_b = std::max(tol.moment_b, quantization * scale_x);
    return tol;
}

bool OptimalityReport::pass() const {
    for (bool ok : per_segment_lsq_ok)
        if (!ok)
            return false;
    for (JunctionKind kind : junction_kind)
        if (kind == JunctionKind::kViolated)
            return false;
    return true;
}

OptimalityReport check_theorem1(const PwlModel &model, const Dataset &data,
                                const Tolerances &tol) {
    OptimalityReport report;
    report.condition = "per-segment-lsq+junctions";
    fill_moments(report, model, data, tol);
    const std::vector<double> &mu = model.breakpoints();
    const std::vector<Segment> &segments = model.segments();
    for (std::size_t p = 1; p + 1 < mu.size(); ++p) {
        double left = segments[p - 1].eval(mu[p]);
        double right = segments[p].eval(mu[p]);
        double target = nearest_sample_value(data, mu[p]);
        double continuity = std::abs(left - right);
        double reflection = std::abs(left + right - 2.0 * target);
        JunctionKind kind = JunctionKind::kViolated;
        // When both conditions hold the junction counts as continuous.
        if (continuity <= tol.junction)
            kind = JunctionKind::kContinuous;
        else if (reflection <= tol.junction)
            kind = JunctionKind::kReflected;
        report.junction_mu.push_back(mu[p]);
        report.junction_kind.push_back(kind);
        double residual = std::min(continuity, reflection);
        report.junction_residual.push_back(residual);
        report.max_junction_residual =
            std::max(report.max_junction_residual, residual);
    }
    return report;
}

OptimalityReport check_theorem2(const PwlModel &model, const Dataset &data,
                                const Tolerances &tol) {
    if (!model.continuous())
        throw std::invalid_argument(
            "the residual-moment condition applies to continuous models only");
    OptimalityReport report;
    report.condition = "residual-moments";
    fill_moments(report, model, data, tol);
    const std::vector<double> &mu = model.breakpoints();
    const std::vector<Segment> &segments = model.segments();
    for (std::size_t p = 1; p + 1 < mu.size(); ++p) {
        double gap =
            std::abs(segments[p - 1].eval(mu[p]) - segments[p].eval(mu[p]));
        report.junction_mu.push_back(mu[p]);
        report.junction_kind.push_back(JunctionKind::kContinuous);
        report.junction_residual.push_back(gap);
        report.max_junction_residual =
            std::max(report.max_junction_residual, gap);
    }
    return report;
}

void write_report(const OptimalityReport &report, std::ostream &out) {
    nlohmann::json header = {
        {"condition", report.condition},
        {"pass", report.pass()},
        {"max_moment", report.max_moment},
        {"max_junction_residual", report.max_junction_residual},
    };
    out << header.dump() << "\n";
    for (std::size_t i = 0; i < report.per_segment_lsq_ok.size(); ++i) {
        nlohmann::json row = {
            {"record", "segment"},
            {"index", i},
            {"moment_a", report.moment_a[i]},
            {"moment_b", report.moment_b[i]},
            {"lsq_ok", static_cast<bool>(report.per_segment_lsq_ok[i])},
        };
        out << row.dump() << "\n";
    }
    for (std::size_t i = 0; i < report.junction_kind.size(); ++i) {
        nlohmann::json row = {
            {"record", "junction"},
            {"index", i + 1},
            {"mu", report.junction_mu[i]},
            {"kind", to_string(report.junction_kind[i])},
            {"residual", report.junction_residual[i]},
        };
        out << row.dump() << "\n";
    }
}

MonotonicityReport check_monotonicity(const TargetFunction &target, int n_max,
                                      const SolveFn &solver, double rel_slack,
                                      int m) {
    if (n_max < 2)
        throw std::invalid_argument("monotonicity needs at least two orders");
    Dataset data = make_grid(target, m);
    double sum_sq = 0.0;
    for (double y : data.ys())
        sum_sq += y * y;
    MonotonicityReport report;
    for (int n = 1; n <= n_max; ++n) {
        report.orders.push_back(n);
        report.sse.push_back(solver(data, n));
    }
    report.non_increasing = true;
    for (std::size_t i = 1; i < report.sse.size(); ++i) {
        double prev = report.sse[i - 1];
        double next = report.sse[i];
        // The absolute floor keeps exactly-representable targets (sse near
        // zero at every order) from tripping on rounding noise.
        double slack = rel_slack * std::max(prev, next) + 1e-15 * sum_sq;
        if (next > prev + slack)
            report.non_increasing = false;
    }
    return report;
}

} // namespace pwla
