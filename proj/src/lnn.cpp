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
#include <pwla/lnn.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <pwla/rng.hpp>

namespace pwla {

namespace {

double sigmoid(double v) {
    if (v >= 0.0)
        return 1.0 / (1.0 + std::exp(-v));
    double e = std::exp(v);
    return e / (1.0 + e);
}

double breakpoint_from_sigmoid(double s, Interval domain) {
    double c = domain.lo + domain.length() * s;
    // Extreme deltas saturate the sigmoid to exactly 0 or 1 in floating
    // point; nudge back so the breakpoint stays strictly interior.
    c = std::max(c, std::nextafter(domain.lo, domain.hi));
    c = std::min(c, std::nextafter(domain.hi, domain.lo));
    return c;
}

// Parameter vector layout shared by backward() and the optimizers.
std::size_t param_count(const LnnParams &params) {
    return 3 * params.neurons.size() + 1;
}

void apply_flat(LnnParams &params, const std::vector<double> &delta_values) {
    for (std::size_t j = 0; j < params.neurons.size(); ++j) {
        params.neurons[j].w1 += delta_values[3 * j];
        params.neurons[j].w2 += delta_values[3 * j + 1];
        params.neurons[j].delta += delta_values[3 * j + 2];
    }
    params.bias += delta_values.back();
}

// Training-loop view of the parameters with the per-unit sigmoid and
// breakpoint cached between updates, laid out as flat arrays so the hot
// loops vectorise. The arithmetic is value-identical to forward()/
// backward(), which recompute everything per sample: a unit's contribution
// is written as w1*min(t,0) + w2*max(t,0), where the inactive term is
// exactly zero, so every prediction accumulates the same bits as the
// branched form, bias first and units in index order; and every gradient
// slot accumulates its terms in sample order, exactly as backward() does.
// Stepping manually with the public backward() therefore reproduces
// train() bit for bit.
struct UnitCache {
    std::vector<double> c, s, w1, w2;

    void refresh(const LnnParams &params) {
        std::size_t n = params.neurons.size();
        c.resize(n);
        s.resize(n);
        w1.resize(n);
        w2.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = sigmoid(params.neurons[j].delta);
            c[j] = breakpoint_from_sigmoid(s[j], params.domain);
            w1[j] = params.neurons[j].w1;
            w2[j] = params.neurons[j].w2;
        }
        bias_ = params.bias;
    }

    double forward_at(double x) const {
        double out = bias_;
        for (std::size_t j = 0; j < c.size(); ++j) {
            double t = x - c[j];
            out += w1[j] * std::min(t, 0.0) + w2[j] * std::max(t, 0.0);
        }
        return out;
    }

    void gradient(const LnnParams &params, std::span<const double> xs,
                  std::span<const double> ys, bool freeze_breakpoints,
                  std::vector<double> &grad) const {
        std::size_t n = c.size();
        std::fill(grad.begin(), grad.end(), 0.0);
        double inv_batch = 1.0 / static_cast<double>(xs.size());
        double span = params.domain.length();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i];
            double e = 2.0 * (forward_at(x) - ys[i]) * inv_batch;
            for (std::size_t j = 0; j < n; ++j) {
                double t = x - c[j];
                // The minibatch is shuffled, so data-dependent branches
                // here would mispredict; select the slot through integer
                // arithmetic and the weight through a bit mask, which picks
                // a side without touching its value.
                std::uint64_t right = t > 0.0 ? ~std::uint64_t{0} : 0;
                double w_active = std::bit_cast<double>(
                    (std::bit_cast<std::uint64_t>(w2[j]) & right) |
                    (std::bit_cast<std::uint64_t>(w1[j]) & ~right));
                grad[3 * j + (right & 1)] += e * t;
                if (!freeze_breakpoints)
                    grad[3 * j + 2] +=
                        e * -w_active * span * s[j] * (1.0 - s[j]);
            }
            grad[3 * n] += e;
        }
    }

    double mse(const Dataset &data) const {
        const std::vector<double> &xs = data.xs();
        const std::vector<double> &ys = data.ys();
        std::size_t m = xs.size();
        std::size_t n = c.size();
        constexpr std::size_t kBlock = 128;
        std::array<double, kBlock> pred;
        double total = 0.0;
        for (std::size_t at = 0; at < m; at += kBlock) {
            std::size_t take = std::min(kBlock, m - at);
            for (std::size_t i = 0; i < take; ++i)
                pred[i] = bias_;
            for (std::size_t j = 0; j < n; ++j) {
                double cj = c[j], a1 = w1[j], a2 = w2[j];
                for (std::size_t i = 0; i < take; ++i) {
                    double t = xs[at + i] - cj;
                    pred[i] +=
                        a1 * std::min(t, 0.0) + a2 * std::max(t, 0.0);
                }
            }
            for (std::size_t i = 0; i < take; ++i) {
                double r = pred[i] - ys[at + i];
                total += r * r;
            }
        }
        return total / static_cast<double>(m);
    }

  private:
    double bias_ = 0.0;
};

} // namespace

double breakpoint_of(const LnnNeuron &neuron, Interval domain) {
    return breakpoint_from_sigmoid(sigmoid(neuron.delta), domain);
}

double forward(const LnnParams &params, double x) {
    double out = params.bias;
    for (const LnnNeuron &neuron : params.neurons) {
        double t = x - breakpoint_of(neuron, params.domain);
        out += (t < 0.0 ? neuron.w1 : neuron.w2) * t;
    }
    return out;
}

LnnGradient backward(const LnnParams &params, std::span<const double> xs,
                     std::span<const double> ys, bool freeze_breakpoints) {
    if (xs.empty() || xs.size() != ys.size())
        throw std::invalid_argument("gradient needs a nonempty batch");
    std::size_t n = params.neurons.size();
    LnnGradient grad;
    grad.values.assign(param_count(params), 0.0);
    double inv_batch = 1.0 / static_cast<double>(xs.size());
    double span = params.domain.length();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double x = xs[i];
        double e = 2.0 * (forward(params, x) - ys[i]) * inv_batch;
        for (std::size_t j = 0; j < n; ++j) {
            const LnnNeuron &neuron = params.neurons[j];
            double s = sigmoid(neuron.delta);
            double t = x - breakpoint_of(neuron, params.domain);
            // Branch 1 is active up to and including the breakpoint (the
            // forward value there is 0 either way; this is the subgradient
            // choice at the tie).
            double w_active = t <= 0.0 ? neuron.w1 : neuron.w2;
            grad.values[3 * j + (t <= 0.0 ? 0 : 1)] += e * t;
            if (!freeze_breakpoints)
                grad.values[3 * j + 2] +=
                    e * -w_active * span * s * (1.0 - s);
        }
        grad.values.back() += e;
    }
    return grad;
}

TrainResult train(const Dataset &data, int n_units, const TrainConfig &config,
                  const LnnParams *init) {
    if (n_units < 1)
        throw std::invalid_argument("training needs at least one unit");
    if (config.epochs < 1)
        throw std::invalid_argument("training needs at least one epoch");
    if (!(config.lr > 0.0))
        throw std::invalid_argument("learning rate must be positive");
    std::size_t m = data.m();
    if (config.batch_size < 0 ||
        static_cast<std::size_t>(config.batch_size) > m)
        throw std::invalid_argument("batch size must lie in [0, m]");
    if (init && init->neurons.size() != static_cast<std::size_t>(n_units))
        throw std::invalid_argument(
            "initial parameters disagree with the requested unit count");

    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(config.seed);
    LnnParams params;
    if (init) {
        params = *init;
    } else {
        params.domain = data.domain();
        params.neurons.resize(static_cast<std::size_t>(n_units));
        for (std::size_t j = 0; j < params.neurons.size(); ++j) {
            // Breakpoints start at equally spaced interior quantiles; the
            // logit inverts the sigmoid reparameterisation.
            double q = static_cast<double>(j + 1) /
                       static_cast<double>(n_units + 1);
            params.neurons[j].delta = std::log(q / (1.0 - q));
            params.neurons[j].w1 = uniform(gen, -0.5, 0.5);
            params.neurons[j].w2 = uniform(gen, -0.5, 0.5);
        }
        params.bias =
            std::accumulate(data.ys().begin(), data.ys().end(), 0.0) /
            static_cast<double>(m);
    }

    UnitCache cache;
    cache.refresh(params);
    double initial_mse = cache.mse(data);
    double guard = 1e6 * std::max(initial_mse, 1e-12);

    bool full_batch = config.batch_size == 0 ||
                      static_cast<std::size_t>(config.batch_size) == m;
    std::size_t batch = full_batch ? m
                                   : static_cast<std::size_t>(config.batch_size);

    std::size_t p_count = param_count(params);
    std::vector<double> grad(p_count), step(p_count);
    std::vector<double> adam_m, adam_v;
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    if (config.optimizer == Optimizer::kAdam) {
        adam_m.assign(p_count, 0.0);
        adam_v.assign(p_count, 0.0);
    }
    long adam_t = 0;

    auto update = [&] {
        if (config.optimizer == Optimizer::kSgd) {
            for (std::size_t p = 0; p < p_count; ++p)
                step[p] = -config.lr * grad[p];
        } else {
            ++adam_t;
            double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(adam_t));
            double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(adam_t));
            for (std::size_t p = 0; p < p_count; ++p) {
                double g = grad[p];
                adam_m[p] = kBeta1 * adam_m[p] + (1.0 - kBeta1) * g;
                adam_v[p] = kBeta2 * adam_v[p] + (1.0 - kBeta2) * g * g;
                step[p] = -config.lr * (adam_m[p] / c1) /
                          (std::sqrt(adam_v[p] / c2) + kEps);
            }
        }
        apply_flat(params, step);
        cache.refresh(params);
    };

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> bx(batch), by(batch);

    TrainResult result;
    result.epoch_mse.reserve(static_cast<std::size_t>(config.epochs));
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (full_batch) {
            cache.gradient(params, data.xs(), data.ys(),
                           config.freeze_breakpoints, grad);
            update();
        } else {
            shuffle(order, gen);
            for (std::size_t at = 0; at < m; at += batch) {
                std::size_t take = std::min(batch, m - at);
                for (std::size_t i = 0; i < take; ++i) {
                    bx[i] = data.xs()[order[at + i]];
                    by[i] = data.ys()[order[at + i]];
                }
                cache.gradient(params,
                               std::span<const double>(bx.data(), take),
                               std::span<const double>(by.data(), take),
                               config.freeze_breakpoints, grad);
                update();
            }
        }
        double epoch_mse = cache.mse(data);
        if (!std::isfinite(epoch_mse) || epoch_mse > guard)
            throw std::runtime_error(
                "training diverged at epoch " + std::to_string(epoch + 1) +
                ": mse " + std::to_string(epoch_mse) + " (initial " +
                std::to_string(initial_mse) + "); lower the learning rate");
        result.epoch_mse.push_back(epoch_mse);
    }

    result.final_mse = result.epoch_mse.back();
    result.final_breakpoints.reserve(params.neurons.size());
    for (const LnnNeuron &neuron : params.neurons)
        result.final_breakpoints.push_back(
            breakpoint_of(neuron, params.domain));
    std::sort(result.final_breakpoints.begin(),
              result.final_breakpoints.end());
    result.params = std::move(params);
    result.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
}

PwlModel to_pwl(const LnnParams &params) {
    Interval domain = params.domain;
    std::vector<double> centers;
    for (const LnnNeuron &neuron : params.neurons)
        if (std::abs(neuron.w1 - neuron.w2) > 1e-9)
            centers.push_back(breakpoint_of(neuron, domain));
    std::sort(centers.begin(), centers.end());
    std::vector<double> breakpoints;
    breakpoints.push_back(domain.lo);
    for (double c : centers)
        if (c - breakpoints.back() > 1e-9 && domain.hi - c > 1e-9)
            breakpoints.push_back(c);
    breakpoints.push_back(domain.hi);

    std::size_t n_segments = breakpoints.size() - 1;
    std::vector<Segment> segments(n_segments);
    // Chain intercepts left to right so adjacent segments agree exactly at
    // every breakpoint; slopes come from which side of each unit's hinge
    // the segment midpoint falls on.
    double value = forward(params, domain.lo);
    for (std::size_t s = 0; s < n_segments; ++s) {
        double mid = 0.5 * (breakpoints[s] + breakpoints[s + 1]);
        double slope = 0.0;
        for (const LnnNeuron &neuron : params.neurons)
            slope += mid < breakpoint_of(neuron, domain) ? neuron.w1
                                                         : neuron.w2;
        double intercept = value - slope * breakpoints[s];
        segments[s] = {intercept, slope, breakpoints[s], breakpoints[s + 1]};
        value = intercept + slope * breakpoints[s + 1];
    }
    return {std::move(breakpoints), std::move(segments), true};
}

void write_lnn(const LnnParams &params, std::ostream &out) {
    char line[128];
    std::snprintf(line, sizeof line, "lnn v1 %.17g %.17g\n", params.domain.lo,
                  params.domain.hi);
    out << line;
    for (const LnnNeuron &neuron : params.neurons) {
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", neuron.w1,
                      neuron.w2, neuron.delta);
        out << line;
    }
    std::snprintf(line, sizeof line, "bias %.17g\n", params.bias);
    out << line;
}

LnnParams read_lnn(std::istream &in) {
    std::string tag, version;
    double lo = 0.0, hi = 0.0;
    if (!(in >> tag >> version >> lo >> hi) || tag != "lnn" ||
        version != "v1")
        throw std::runtime_error("not a v1 network file");
    LnnParams params;
    params.domain = Interval(lo, hi);
    std::string token;
    bool have_bias = false;
    while (in >> token) {
        if (token == "bias") {
            if (!(in >> params.bias))
                throw std::runtime_error("malformed bias line");
            have_bias = true;
            break;
        }
        LnnNeuron neuron;
        try {
            neuron.w1 = std::stod(token);
        } catch (const std::exception &) {
            throw std::runtime_error("malformed unit line near '" + token +
                                     "'");
        }
        if (!(in >> neuron.w2 >> neuron.delta))
            throw std::runtime_error("malformed unit line");
        params.neurons.push_back(neuron);
    }
    if (!have_bias)
        throw std::runtime_error("missing bias line");
    if (params.neurons.empty())
        throw std::runtime_error("network file has no units");
    return params;
}

void save_lnn(const LnnParams &params, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_lnn(params, out);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

LnnParams load_lnn(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    try {
        return read_lnn(in);
    } catch (const std::runtime_error &err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

} // namespace pwla
