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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <pwla/core.hpp>

namespace pwla {

/// One hidden unit of the piecewise linear network. The unit's breakpoint
/// is not a free parameter: it is pinned inside the model domain through a
/// sigmoid reparameterisation of delta (see breakpoint_of), so training can
/// never push a breakpoint out of range. On input x the unit contributes
///
///     w1 * (x - c)   if x <  c
///     w2 * (x - c)   if x >= c
///
/// i.e. a two-slope hinge anchored at its breakpoint c. Both branches are 0
/// at x == c, so the network is continuous regardless of tie-breaking.
struct LnnNeuron {
    double w1 = 0.0;
    double w2 = 0.0;
    double delta = 0.0;
};

/// Full parameter set: hidden units, a shared output bias, and the domain
/// the breakpoints are confined to.
struct LnnParams {
    std::vector<LnnNeuron> neurons;
    double bias = 0.0;
    Interval domain{-1.0, 1.0};
};

/// Breakpoint of a unit within `domain`:
///     c = lo + (hi - lo) * sigmoid(delta),
/// strictly inside (lo, hi) for every finite delta and monotone in delta.
double breakpoint_of(const LnnNeuron &neuron, Interval domain);

/// Network output at x (sum of unit hinges plus bias).
double forward(const LnnParams &params, double x);

/// Gradient of the batch MSE  (1/B) * sum (g(x) - y)^2  with respect to
/// every parameter, laid out as [w1_0, w2_0, delta_0, w1_1, ..., bias].
/// At x == c the first branch is treated as active (a subgradient choice;
/// the forward value is unaffected). With freeze_breakpoints every delta
/// component is forced to zero.
struct LnnGradient {
    std::vector<double> values;
};

LnnGradient backward(const LnnParams &params, std::span<const double> xs,
                     std::span<const double> ys,
                     bool freeze_breakpoints = false);

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
    Optimizer optimizer = Optimizer::kAdam;
    double lr = 3e-3;
    int batch_size = 0; // 0 = full batch
    int epochs = 300;
    std::uint64_t seed = 0;
    bool freeze_breakpoints = false;
};

struct TrainResult {
    LnnParams params;
    std::vector<double> epoch_mse;         // full-dataset mse after each epoch
    std::vector<double> final_breakpoints; // sorted breakpoint_of values
    double final_mse = 0.0;
    double seconds = 0.0; // wall time of the optimisation loop
};

/// Trains an n_units network on the dataset by minibatch gradient descent
/// (SGD or Adam; Adam uses the conventional 0.9 / 0.999 / 1e-8 constants).
/// Deterministic for a fixed seed: initial slopes are drawn from the seeded
/// generator, initial breakpoints sit at equally spaced quantiles of the
/// domain, the bias starts at the sample mean, and per-epoch minibatch
/// shuffles reuse the same generator (full-batch mode never shuffles).
/// When `init` is non-null it replaces the seeded initialisation.
/// freeze_breakpoints keeps every delta fixed so only slopes and bias move.
/// Throws std::runtime_error if the loss diverges (mse non-finite or more
/// than 1e6 times its initial value).
TrainResult train(const Dataset &data, int n_units, const TrainConfig &config,
                  const LnnParams *init = nullptr);

/// Converts a network into an explicit piecewise linear model: units with
/// |w1 - w2| <= 1e-9 contribute no kink and are dropped, near-duplicate
/// breakpoints (within 1e-9) are merged, and the remaining hinges become
/// segment boundaries in ascending order. The result is continuous by
/// construction.
PwlModel to_pwl(const LnnParams &params);

/// Plain-text round trip. Format:
///     lnn v1 <lo> <hi>
///     <w1> <w2> <delta>        (one line per unit)
///     bias <value>
/// with every value printed to 17 significant digits so save/load is exact.
void write_lnn(const LnnParams &params, std::ostream &out);
LnnParams read_lnn(std::istream &in);
void save_lnn(const LnnParams &params, const std::string &path);
LnnParams load_lnn(const std::string &path);

} // namespace pwla
