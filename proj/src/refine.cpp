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
#include <pwla/refine.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <pwla/oracle.hpp>

namespace pwla {

namespace {

// MSE, over the samples with x in [x0, x1], of the straight chord joining
// (x0, v0) and (x1, v1). An empty range costs nothing.
double chord_mse(const Dataset &data, double x0, double v0, double x1,
                 double v1) {
    const std::vector<double> &xs = data.xs();
    const std::vector<double> &ys = data.ys();
    auto first = std::lower_bound(xs.begin(), xs.end(), x0);
    auto last = std::upper_bound(xs.begin(), xs.end(), x1);
    if (first == last)
        return 0.0;
    double slope = (v1 - v0) / (x1 - x0);
    double total = 0.0;
    for (auto it = first; it != last; ++it) {
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        double r = ys[i] - (v0 + slope * (*it - x0));
        total += r * r;
    }
    return total / static_cast<double>(last - first);
}

} // namespace

double chord_cost(const PwlModel &model, const Dataset &data, std::size_t i) {
    const std::vector<double> &mu = model.breakpoints();
    if (i + 2 >= mu.size())
        throw std::invalid_argument("chord cost needs an interior breakpoint");
    double x0 = mu[i];
    double x1 = mu[i + 2];
    return chord_mse(data, x0, eval_pwl(model, x0), x1, eval_pwl(model, x1));
}

std::vector<double> prune(const PwlModel &model, const Dataset &data,
                          std::size_t keep) {
    const std::vector<double> &mu = model.breakpoints();
    std::size_t interior = mu.size() - 2;
    if (keep >= interior)
        throw std::invalid_argument(
            "pruning must remove at least one interior breakpoint");
    // The working model is the polyline through the surviving knots, whose
    // values stay pinned to the original model.
    std::vector<double> kx(mu);
    std::vector<double> kv(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        kv[i] = eval_pwl(model, mu[i]);
    std::vector<double> costs(mu.size(),
                              std::numeric_limits<double>::infinity());
    auto recompute = [&](std::size_t i) {
        if (i == 0 || i + 1 >= kx.size())
            return;
        costs[i] = chord_mse(data, kx[i - 1], kv[i - 1], kx[i + 1], kv[i + 1]);
    };
    for (std::size_t i = 1; i + 1 < kx.size(); ++i)
        recompute(i);
    while (kx.size() - 2 > keep) {
        std::size_t victim = 1;
        for (std::size_t i = 2; i + 1 < kx.size(); ++i)
            if (costs[i] < costs[victim])
                victim = i;
        kx.erase(kx.begin() + static_cast<std::ptrdiff_t>(victim));
        kv.erase(kv.begin() + static_cast<std::ptrdiff_t>(victim));
        costs.erase(costs.begin() + static_cast<std::ptrdiff_t>(victim));
        recompute(victim - 1);
        recompute(victim);
    }
    return {kx.begin() + 1, kx.end() - 1};
}

RefineResult refine_pipeline(const Dataset &data, int n_target, int n_over,
                             const TrainConfig &config) {
    if (n_target < 2)
        throw std::invalid_argument("target order must be at least 2");
    if (n_over <= n_target)
        throw std::invalid_argument(
            "the wide network must exceed the target order");
    TrainResult wide = train(data, n_over - 1, config);
    PwlModel coarse = to_pwl(wide.params);
    std::size_t want = static_cast<std::size_t>(n_target - 1);
    std::size_t have = coarse.breakpoints().size() - 2;
    std::vector<double> kept;
    if (have > want) {
        kept = prune(coarse, data, want);
    } else {
        // Units collapsed during training (equal slopes or merged
        // breakpoints); refit whatever survived.
        kept.assign(coarse.breakpoints().begin() + 1,
                    coarse.breakpoints().end() - 1);
    }
    // Training can leave two breakpoints inside one grid cell, which the
    // fixed-breakpoint refit rejects as ill-posed; nudge such pairs apart.
    kept = de_repair(std::move(kept), data.domain(), data.spacing());
    FitResult refit = fit_cpwl_fixed(data, kept);
    return {std::move(refit.model),
            refit.sse / static_cast<double>(data.m())};
}

} // namespace pwla
