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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <pwla/catalog.hpp>
#include <pwla/core.hpp>
#include <pwla/linfit.hpp>
#include <pwla/oracle.hpp>
#include <pwla/theorems.hpp>

using namespace pwla;

TEST_CASE("default tolerances follow the documented formulas") {
    Dataset d = make_grid(catalog("x2"), 101); // spacing 0.02, |y| <= 1
    Tolerances tol = default_tolerances(d);
    CHECK(tol.moment_a == doctest::Approx(1.01e-4).epsilon(1e-9));
    CHECK(tol.moment_b == doctest::Approx(1.01e-4).epsilon(1e-9));
    // Steepest sampled slope of x^2 at spacing 0.02 is (1 - 0.98^2) / 0.02.
    CHECK(tol.junction == doctest::Approx(4.0 * 0.02 * 1.98).epsilon(1e-9));
}

TEST_CASE("grid-scaled tolerances widen only the moment slacks") {
    Dataset d = make_grid(catalog("x2"), 101);
    Tolerances base = default_tolerances(d);
    Tolerances grid = grid_scaled_tolerances(d);
    CHECK(grid.moment_a == doctest::Approx(101 * 0.02 * 1.98).epsilon(1e-9));
    CHECK(grid.moment_b == doctest::Approx(101 * 0.02 * 1.98).epsilon(1e-9));
    CHECK(grid.junction == base.junction);
    CHECK(grid.moment_a >= base.moment_a);
    CHECK(grid.moment_b >= base.moment_b);
}

TEST_CASE("junction kinds have stable names") {
    CHECK(to_string(JunctionKind::kContinuous) == "continuous");
    CHECK(to_string(JunctionKind::kReflected) == "reflected");
    CHECK(to_string(JunctionKind::kViolated) == "violated");
}

TEST_CASE("the exact two-piece fit of x^2 meets the discontinuous conditions") {
    Dataset d = make_grid(catalog("x2"), 500);
    FitResult fit = solve_pwla_dp(d, 2);
    OptimalityReport report =
        check_theorem1(fit.model, d, default_tolerances(d));
    CHECK(report.condition == "per-segment-lsq+junctions");
    CHECK(report.pass());
    REQUIRE(report.junction_kind.size() == 1);
    // Both half-fits of the even target take the same value at the middle.
    CHECK(report.junction_kind[0] == JunctionKind::kContinuous);
    REQUIRE(report.per_segment_lsq_ok.size() == 2);
    CHECK(report.per_segment_lsq_ok[0]);
    CHECK(report.per_segment_lsq_ok[1]);
}

TEST_CASE("the exact two-piece fit of x^3 shows a reflected junction") {
    Dataset d = make_grid(catalog("x3"), 301);
    FitResult fit = solve_pwla_dp(d, 2);
    OptimalityReport report =
        check_theorem1(fit.model, d, default_tolerances(d));
    CHECK(report.pass());
    REQUIRE(report.junction_kind.size() == 1);
    // The odd target makes the two half-fits straddle f at the junction:
    // g_left + g_right = 2 f there, with a visible jump between them.
    CHECK(report.junction_kind[0] == JunctionKind::kReflected);
    double mu = report.junction_mu[0];
    double left = fit.model.segments()[0].eval(mu);
    double right = fit.model.segments()[1].eval(mu);
    CHECK(std::abs(left - right) > default_tolerances(d).junction);
}

TEST_CASE("higher-order exact fits keep meeting the conditions") {
    for (const char *name : {"mix1", "table2_1"}) {
        Dataset d = make_grid(catalog(name), 400);
        for (int n : {3, 4}) {
            FitResult fit = solve_pwla_dp(d, n);
            OptimalityReport report =
                check_theorem1(fit.model, d, default_tolerances(d));
            INFO(name, " n=", n);
            CHECK(report.pass());
        }
    }
}

TEST_CASE("a perturbed segment is flagged on both conditions") {
    Dataset d = make_grid(catalog("x2"), 101);
    FitResult fit = solve_pwla_dp(d, 2);
    std::vector<Segment> segments = fit.model.segments();
    segments[1].a += 1.0;
    PwlModel broken(fit.model.breakpoints(), segments, false);
    OptimalityReport report =
        check_theorem1(broken, d, default_tolerances(d));
    CHECK_FALSE(report.pass());
    CHECK(report.per_segment_lsq_ok[0]);       // untouched half
    CHECK_FALSE(report.per_segment_lsq_ok[1]); // shifted half
    REQUIRE(report.junction_kind.size() == 1);
    CHECK(report.junction_kind[0] == JunctionKind::kViolated);
    CHECK(report.max_junction_residual > default_tolerances(d).junction);
    CHECK(report.max_moment > default_tolerances(d).moment_a);
}

TEST_CASE("the continuous condition rejects discontinuous input") {
    Dataset d = make_grid(catalog("x2"), 101);
    FitResult fit = solve_pwla_dp(d, 2); // discontinuous by construction
    CHECK_THROWS_WITH_AS(check_theorem2(fit.model, d, default_tolerances(d)),
                         doctest::Contains("continuous"),
                         std::invalid_argument);
}

TEST_CASE("the optimal continuous fit passes at grid-scaled slack") {
    Dataset d = make_grid(catalog("x2"), 201);
    FitResult fit = solve_cpwla_scan(d, 2);
    OptimalityReport grid_report =
        check_theorem2(fit.model, d, grid_scaled_tolerances(d));
    CHECK(grid_report.condition == "residual-moments");
    CHECK(grid_report.pass());
    // The breakpoint is quantized onto a sample, so one segment only sees a
    // one-sided stationarity condition and keeps a residual sum of order
    // r(mu)/2 — large against the exact-arithmetic slack, tiny against the
    // grid-aware one.
    OptimalityReport exact_report =
        check_theorem2(fit.model, d, default_tolerances(d));
    CHECK(exact_report.max_moment > default_tolerances(d).moment_a);
}

TEST_CASE("fixed off-optimal breakpoints fail the moment condition") {
    Dataset d = make_grid(catalog("mix1"), 200);
    std::vector<double> off{-0.7, 0.1};
    FitResult fit = fit_cpwl_fixed(d, off);
    OptimalityReport report =
        check_theorem2(fit.model, d, default_tolerances(d));
    CHECK_FALSE(report.pass());
}

TEST_CASE("single-segment fits satisfy both conditions trivially") {
    Dataset d = make_grid(catalog("sec54"), 150);
    FitResult line = solve_pwla_dp(d, 1);
    OptimalityReport first =
        check_theorem1(line.model, d, default_tolerances(d));
    CHECK(first.pass());
    CHECK(first.junction_kind.empty());

    FitResult cline = fit_cpwl_fixed(d, {});
    OptimalityReport second =
        check_theorem2(cline.model, d, default_tolerances(d));
    CHECK(second.pass());
    CHECK(second.junction_kind.empty());
}

TEST_CASE("reports serialise as parseable JSON lines") {
    Dataset d = make_grid(catalog("x2"), 101);
    FitResult fit = solve_pwla_dp(d, 2);
    OptimalityReport report =
        check_theorem1(fit.model, d, default_tolerances(d));
    std::ostringstream out;
    write_report(report, out);
    std::istringstream in(out.str());
    std::string line;
    std::vector<nlohmann::json> rows;
    while (std::getline(in, line))
        rows.push_back(nlohmann::json::parse(line));
    REQUIRE(rows.size() == 4); // header + 2 segments + 1 junction
    CHECK(rows[0].at("condition") == "per-segment-lsq+junctions");
    CHECK(rows[0].at("pass") == true);
    CHECK(rows[0].at("max_moment").is_number());
    CHECK(rows[1].at("record") == "segment");
    CHECK(rows[1].at("lsq_ok") == true);
    CHECK(rows[3].at("record") == "junction");
    CHECK(rows[3].at("kind") == "continuous");
    CHECK(rows[3].at("mu").is_number());
}

TEST_CASE("optimal error is monotone in the segment budget") {
    SolveFn dp = [](const Dataset &data, int n) {
        return solve_pwla_dp(data, n).sse;
    };
    MonotonicityReport report =
        check_monotonicity(catalog("x2"), 4, dp, 1e-9, 301);
    CHECK(report.non_increasing);
    REQUIRE(report.orders.size() == 4);
    CHECK(report.orders.front() == 1);
    CHECK(report.orders.back() == 4);
    // On a strictly convex target each extra segment strictly helps.
    for (std::size_t i = 1; i < report.sse.size(); ++i)
        CHECK(report.sse[i] < report.sse[i - 1]);

    CHECK_THROWS_AS(check_monotonicity(catalog("x2"), 1, dp, 1e-9, 50),
                    std::invalid_argument);
}

TEST_CASE("a rigged solver trips the monotonicity check") {
    SolveFn rigged = [](const Dataset &, int n) {
        return n == 3 ? 10.0 : 1.0 / static_cast<double>(n);
    };
    MonotonicityReport report =
        check_monotonicity(catalog("x2"), 4, rigged, 1e-9, 50);
    CHECK_FALSE(report.non_increasing);
}
