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
#include <pwla/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <pwla/rng.hpp>

namespace pwla {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

DpTable build_dp_table(const MomentCache &cache, int n_max) {
    if (n_max < 1)
        throw std::invalid_argument("table needs at least one segment");
    std::size_t m = cache.size();
    std::size_t kmax = static_cast<std::size_t>(n_max);
    DpTable table;
    table.cost.assign(m + 1, std::vector<double>(kmax + 1, kInf));
    table.split.assign(m + 1, std::vector<std::size_t>(kmax + 1, 0));
    table.cost[0][0] = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        for (std::size_t j = 2 * k; j <= m; ++j) {
            double best = kInf;
            std::size_t best_s = 0;
            // Last segment covers [s, j); everything before uses k-1
            // segments. Strict improvement keeps the smallest s on ties.
            for (std::size_t s = 2 * (k - 1); s + 2 <= j; ++s) {
                double before = table.cost[s][k - 1];
                if (before == kInf)
                    continue;
                double cand = before + cache.fit(s, j).sse;
                if (cand < best) {
                    best = cand;
                    best_s = s;
                }
            }
            table.cost[j][k] = best;
            table.split[j][k] = best_s;
        }
    }
    return table;
}

PwlModel dp_model(const DpTable &table, const MomentCache &cache, int n) {
    std::size_t m = cache.size();
    std::size_t k = static_cast<std::size_t>(n);
    if (n < 1 || table.cost[0].size() <= k || table.cost[m][k] == kInf)
        throw std::invalid_argument(
            "no feasible " + std::to_string(n) +
            "-segment partition (each segment needs two samples)");
    std::vector<std::size_t> starts(k);
    std::size_t j = m;
    for (std::size_t seg = k; seg >= 1; --seg) {
        starts[seg - 1] = table.split[j][seg];
        j = starts[seg - 1];
    }
    const std::vector<double> &xs = cache.xs();
    std::vector<double> breakpoints;
    breakpoints.reserve(k + 1);
    breakpoints.push_back(xs.front());
    // Interior breakpoints sit mid-cell between the last sample of one
    // segment and the first sample of the next, so no sample lies exactly
    // on a breakpoint and the half-open convention reproduces the DP's
    // sample assignment exactly.
    for (std::size_t seg = 1; seg < k; ++seg) {
        std::size_t s = starts[seg];
        breakpoints.push_back(0.5 * (xs[s - 1] + xs[s]));
    }
    breakpoints.push_back(xs.back());
    std::vector<Segment> segments;
    segments.reserve(k);
    for (std::size_t seg = 0; seg < k; ++seg) {
        std::size_t lo = starts[seg];
        std::size_t hi = (seg + 1 < k) ? starts[seg + 1] : m;
        segments.push_back(cache.fit(lo, hi).segment);
    }
    return {std::move(breakpoints), std::move(segments), false};
}

FitResult solve_pwla_dp(const Dataset &data, int n) {
    if (n < 1)
        throw std::invalid_argument("order must be at least 1");
    if (data.m() < 2 * static_cast<std::size_t>(n))
        throw std::invalid_argument(
            "infeasible order " + std::to_string(n) + " for " +
            std::to_string(data.m()) +
            " samples (each segment needs two)");
    MomentCache cache(data);
    DpTable table = build_dp_table(cache, n);
    FitResult out{dp_model(table, cache, n), 0.0};
    out.sse = sse(out.model, data);
    return out;
}

FitResult solve_cpwla_scan(const Dataset &data, int n) {
    if (n != 2 && n != 3)
        throw std::invalid_argument(
            "exhaustive scan supports orders 2 and 3 only (order " +
            std::to_string(n) + " explodes combinatorially; use the "
            "evolutionary solver)");
    const std::vector<double> &xs = data.xs();
    std::size_t m = xs.size();
    if (m < 2 * static_cast<std::size_t>(n))
        throw std::invalid_argument("too few samples for the requested order");
    // Two candidates within 1e-12 relative of each other count as tied, and
    // the earlier (lexicographically smaller) tuple wins; without the band,
    // rounding noise would pick arbitrarily between symmetric optima.
    long double scale = 0.0L;
    for (double y : data.ys())
        scale += static_cast<long double>(y) * y;
    double tie_tol = 1e-12 * static_cast<double>(scale);

    double best_sse = kInf;
    bool found = false;
    std::vector<double> best_mu;
    std::vector<double> mu;
    auto consider = [&](const std::vector<double> &candidate) {
        double value;
        try {
            value = fit_cpwl_fixed(data, candidate).sse;
        } catch (const std::invalid_argument &) {
            return; // ill-posed placement; skip
        }
        if (!found || value < best_sse - tie_tol) {
            found = true;
            best_sse = value;
            best_mu = candidate;
        }
    };
    if (n == 2) {
        mu.resize(1);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            mu[0] = xs[i];
            consider(mu);
        }
    } else {
        mu.resize(2);
        for (std::size_t i = 1; i + 2 < m; ++i) {
            mu[0] = xs[i];
            for (std::size_t j = i + 1; j + 1 < m; ++j) {
                mu[1] = xs[j];
                consider(mu);
            }
        }
    }
    if (!found)
        throw std::runtime_error("scan found no well-posed breakpoint tuple");
    return fit_cpwl_fixed(data, best_mu);
}

std::vector<double> de_repair(std::vector<double> candidate, Interval domain,
                              double min_gap) {
    std::sort(candidate.begin(), candidate.end());
    double lo = domain.lo + min_gap;
    double hi = domain.hi - min_gap;
    for (double &c : candidate)
        c = std::clamp(c, lo, hi);
    for (std::size_t i = 1; i < candidate.size(); ++i)
        candidate[i] = std::max(candidate[i], candidate[i - 1] + min_gap);
    if (!candidate.empty() && candidate.back() > hi) {
        candidate.back() = hi;
        for (std::size_t i = candidate.size() - 1; i-- > 0;)
            candidate[i] = std::min(candidate[i], candidate[i + 1] - min_gap);
    }
    return candidate;
}

FitResult solve_cpwla_de(const Dataset &data, int n, const DeConfig &config) {
    if (n < 2)
        throw std::invalid_argument("order must be at least 2");
    if (data.m() < 2 * static_cast<std::size_t>(n))
        throw std::invalid_argument("too few samples for the requested order");
    if (config.population < 4)
        throw std::invalid_argument("population must be at least 4");
    if (config.generations < 1)
        throw std::invalid_argument("generations must be at least 1");
    if (config.crossover < 0.0 || config.crossover > 1.0)
        throw std::invalid_argument("crossover must lie in [0, 1]");
    if (config.weight < 0.0 || config.weight > 2.0)
        throw std::invalid_argument("differential weight must lie in [0, 2]");

    std::size_t dim = static_cast<std::size_t>(n - 1);
    std::size_t np = static_cast<std::size_t>(config.population);
    Interval domain = data.domain();
    double gap = data.spacing();
    std::mt19937_64 gen(config.seed);

    auto score = [&](const std::vector<double> &candidate) {
        try {
            return fit_cpwl_fixed(data, candidate).sse;
        } catch (const std::invalid_argument &) {
            return kInf;
        }
    };

    std::vector<std::vector<double>> pop(np);
    std::vector<double> fitness(np);
    for (std::size_t p = 0; p < np; ++p) {
        std::vector<double> candidate(dim);
        for (double &c : candidate)
            c = uniform(gen, domain.lo, domain.hi);
        pop[p] = de_repair(std::move(candidate), domain, gap);
        fitness[p] = score(pop[p]);
    }

    std::vector<double> trial(dim);
    for (int g = 0; g < config.generations; ++g) {
        for (std::size_t i = 0; i < np; ++i) {
            std::size_t r1, r2, r3;
            do
                r1 = uniform_index(gen, np);
            while (r1 == i);
            do
                r2 = uniform_index(gen, np);
            while (r2 == i || r2 == r1);
            do
                r3 = uniform_index(gen, np);
            while (r3 == i || r3 == r1 || r3 == r2);
            std::size_t forced = uniform_index(gen, dim);
            for (std::size_t d = 0; d < dim; ++d) {
                bool cross = uniform01(gen) < config.crossover || d == forced;
                trial[d] = cross ? pop[r1][d] + config.weight *
                                                    (pop[r2][d] - pop[r3][d])
                                 : pop[i][d];
            }
            std::vector<double> repaired = de_repair(trial, domain, gap);
            double value = score(repaired);
            if (value <= fitness[i]) {
                pop[i] = std::move(repaired);
                fitness[i] = value;
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t p = 1; p < np; ++p)
        if (fitness[p] < fitness[best])
            best = p;
    if (fitness[best] == kInf)
        throw std::runtime_error("search found no well-posed candidate");
    return fit_cpwl_fixed(data, pop[best]);
}

} // namespace pwla
