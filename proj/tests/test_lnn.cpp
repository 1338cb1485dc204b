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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <pwla/catalog.hpp>
#include <pwla/core.hpp>
#include <pwla/lnn.hpp>
#include <pwla/rng.hpp>

using namespace pwla;
namespace fs = std::filesystem;

namespace {

double logit(double q) { return std::log(q / (1.0 - q)); }

LnnParams vee_params() {
    LnnParams params;
    params.domain = Interval(-1.0, 1.0);
    params.neurons = {{-1.0, 1.0, 0.0}};
    params.bias = -1.0 / 6.0;
    return params;
}

LnnParams random_params(std::mt19937_64 &gen, int units, Interval domain) {
    LnnParams params;
    params.domain = domain;
    for (int j = 0; j < units; ++j)
        params.neurons.push_back({uniform(gen, -2.0, 2.0),
                                  uniform(gen, -2.0, 2.0),
                                  uniform(gen, -2.0, 2.0)});
    params.bias = uniform(gen, -1.0, 1.0);
    return params;
}

double batch_mse(const LnnParams &params, const std::vector<double> &xs,
                 const std::vector<double> &ys) {
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = forward(params, xs[i]) - ys[i];
        total += r * r;
    }
    return total / static_cast<double>(xs.size());
}

bool params_equal(const LnnParams &a, const LnnParams &b) {
    if (a.neurons.size() != b.neurons.size() || a.bias != b.bias)
        return false;
    for (std::size_t j = 0; j < a.neurons.size(); ++j)
        if (a.neurons[j].w1 != b.neurons[j].w1 ||
            a.neurons[j].w2 != b.neurons[j].w2 ||
            a.neurons[j].delta != b.neurons[j].delta)
            return false;
    return true;
}

} // namespace

TEST_CASE("breakpoint reparameterisation") {
    Interval domain(-1.0, 1.0);
    CHECK(breakpoint_of({0.0, 0.0, 0.0}, domain) == doctest::Approx(0.0));
    CHECK(breakpoint_of({0.0, 0.0, logit(0.85)}, domain) ==
          doctest::Approx(0.7).epsilon(1e-12));
    // Monotone in delta, and strictly interior even at saturation.
    double prev = -1.0;
    for (double delta : {-40.0, -5.0, -1.0, 0.0, 1.0, 5.0, 40.0}) {
        double c = breakpoint_of({0.0, 0.0, delta}, domain);
        CHECK(c > prev);
        CHECK(c > domain.lo);
        CHECK(c < domain.hi);
        prev = c;
    }
}

TEST_CASE("forward computes the documented vee") {
    LnnParams params = vee_params();
    for (double x : {-1.0, -0.3, 0.0, 0.2, 1.0})
        CHECK(forward(params, x) ==
              doctest::Approx(std::fabs(x) - 1.0 / 6.0).epsilon(1e-12));
    LnnParams flat = params;
    flat.neurons[0].w1 = flat.neurons[0].w2 = 0.0;
    CHECK(forward(flat, 0.4) == doctest::Approx(flat.bias));
}

TEST_CASE("backward matches central finite differences") {
    std::mt19937_64 gen(314);
    const double h = 1e-5;
    for (int trial = 0; trial < 3; ++trial) {
        LnnParams params = random_params(gen, 1 + trial, Interval(-1.0, 1.0));
        std::vector<double> xs, ys;
        while (xs.size() < 50) {
            double x = uniform(gen, -1.0, 1.0);
            bool near_hinge = false;
            for (const LnnNeuron &neuron : params.neurons)
                near_hinge =
                    near_hinge ||
                    std::fabs(x - breakpoint_of(neuron, params.domain)) <
                        1e-4;
            if (near_hinge)
                continue;
            xs.push_back(x);
            ys.push_back(uniform(gen, -1.0, 1.0));
        }
        LnnGradient grad = backward(params, xs, ys, false);
        std::size_t p_count = 3 * params.neurons.size() + 1;
        REQUIRE(grad.values.size() == p_count);
        for (std::size_t p = 0; p < p_count; ++p) {
            auto nudge = [&](double eps) {
                LnnParams shifted = params;
                if (p + 1 == p_count) {
                    shifted.bias += eps;
                } else {
                    std::size_t j = p / 3;
                    switch (p % 3) {
                    case 0: shifted.neurons[j].w1 += eps; break;
                    case 1: shifted.neurons[j].w2 += eps; break;
                    default: shifted.neurons[j].delta += eps; break;
                    }
                }
                return batch_mse(shifted, xs, ys);
            };
            double fd = (nudge(h) - nudge(-h)) / (2.0 * h);
            double denominator =
                std::max({std::fabs(fd), std::fabs(grad.values[p]), 1e-6});
            INFO("trial=", trial, " p=", p);
            CHECK(std::fabs(grad.values[p] - fd) / denominator <= 1e-5);
        }
    }
}

TEST_CASE("backward edge behavior") {
    LnnParams params = vee_params();
    params.neurons[0].w1 = params.neurons[0].w2 = 0.0;
    std::vector<double> xs{-0.5, 0.5}, ys{1.0, -1.0};
    LnnGradient grad = backward(params, xs, ys, false);
    // With zero weights the breakpoint cannot feel any pull.
    CHECK(grad.values[2] == 0.0);

    LnnParams live = vee_params();
    LnnGradient frozen = backward(live, xs, ys, true);
    CHECK(frozen.values[2] == 0.0);
    LnnGradient thawed = backward(live, xs, ys, false);
    CHECK(thawed.values[2] != 0.0);

    CHECK_THROWS_AS(backward(live, std::vector<double>{},
                             std::vector<double>{}, false),
                    std::invalid_argument);
}

TEST_CASE("training is deterministic per seed") {
    Dataset d = make_grid(catalog("x2"), 200);
    TrainConfig config;
    config.epochs = 40;
    config.seed = 9;
    TrainResult a = train(d, 2, config);
    TrainResult b = train(d, 2, config);
    CHECK(params_equal(a.params, b.params));
    REQUIRE(a.epoch_mse.size() == b.epoch_mse.size());
    for (std::size_t e = 0; e < a.epoch_mse.size(); ++e)
        CHECK(a.epoch_mse[e] == b.epoch_mse[e]);
    config.seed = 10;
    TrainResult c = train(d, 2, config);
    CHECK_FALSE(params_equal(a.params, c.params));
}

TEST_CASE("minibatch training is deterministic per seed too") {
    Dataset d = make_grid(catalog("mix1"), 300);
    TrainConfig config;
    config.epochs = 15;
    config.batch_size = 32;
    config.seed = 4;
    TrainResult a = train(d, 3, config);
    TrainResult b = train(d, 3, config);
    CHECK(params_equal(a.params, b.params));
}

TEST_CASE("stepping manually with backward reproduces full-batch sgd") {
    Dataset d = make_grid(catalog("x2"), 120);
    TrainConfig config;
    config.optimizer = Optimizer::kSgd;
    config.lr = 1e-3;
    config.epochs = 5;
    config.seed = 21;
    TrainResult trained = train(d, 2, config);

    // Rebuild the same seeded initialisation by hand.
    std::mt19937_64 gen(21);
    LnnParams params;
    params.domain = d.domain();
    for (int j = 0; j < 2; ++j) {
        double q = static_cast<double>(j + 1) / 3.0;
        LnnNeuron neuron;
        neuron.delta = logit(q);
        neuron.w1 = uniform(gen, -0.5, 0.5);
        neuron.w2 = uniform(gen, -0.5, 0.5);
        params.neurons.push_back(neuron);
    }
    double mean_y = 0.0;
    for (double y : d.ys())
        mean_y += y;
    params.bias = mean_y / static_cast<double>(d.m());

    for (int epoch = 0; epoch < 5; ++epoch) {
        LnnGradient grad = backward(params, d.xs(), d.ys(), false);
        for (std::size_t j = 0; j < params.neurons.size(); ++j) {
            params.neurons[j].w1 -= config.lr * grad.values[3 * j];
            params.neurons[j].w2 -= config.lr * grad.values[3 * j + 1];
            params.neurons[j].delta -= config.lr * grad.values[3 * j + 2];
        }
        params.bias -= config.lr * grad.values.back();
    }
    CHECK(params_equal(trained.params, params));
}

TEST_CASE("full-batch small-lr sgd has a monotone loss trace") {
    Dataset d = make_grid(catalog("x2"), 400);
    TrainConfig config;
    config.optimizer = Optimizer::kSgd;
    config.lr = 1e-4;
    config.epochs = 50;
    config.seed = 2;
    TrainResult result = train(d, 1, config);
    REQUIRE(result.epoch_mse.size() == 50);
    for (std::size_t e = 1; e < result.epoch_mse.size(); ++e)
        CHECK(result.epoch_mse[e] <= result.epoch_mse[e - 1] + 1e-10);
}

TEST_CASE("breakpoints stay strictly inside the domain during training") {
    Dataset d = make_grid(catalog("x3"), 200);
    TrainConfig config;
    config.lr = 0.5; // aggressive on purpose
    config.epochs = 60;
    config.seed = 3;
    TrainResult result = train(d, 4, config);
    for (double c : result.final_breakpoints) {
        CHECK(c > d.domain().lo);
        CHECK(c < d.domain().hi);
    }
}

TEST_CASE("divergent settings abort with a diagnostic") {
    Dataset d = make_grid(catalog("table2_3"), 200);
    TrainConfig config;
    config.optimizer = Optimizer::kSgd;
    config.lr = 1e9;
    config.epochs = 50;
    CHECK_THROWS_WITH_AS(train(d, 2, config), doctest::Contains("diverged"),
                         std::runtime_error);
}

TEST_CASE("training validates its configuration") {
    Dataset d = make_grid(catalog("x2"), 50);
    TrainConfig config;
    CHECK_THROWS_AS(train(d, 0, config), std::invalid_argument);
    config.epochs = 0;
    CHECK_THROWS_AS(train(d, 1, config), std::invalid_argument);
    config = TrainConfig{};
    config.lr = 0.0;
    CHECK_THROWS_AS(train(d, 1, config), std::invalid_argument);
    config = TrainConfig{};
    config.batch_size = 51;
    CHECK_THROWS_AS(train(d, 1, config), std::invalid_argument);
    config = TrainConfig{};
    LnnParams wrong = vee_params();
    CHECK_THROWS_AS(train(d, 2, config, &wrong), std::invalid_argument);
}

TEST_CASE("preset initial parameters are honored") {
    Dataset d = make_grid(catalog("x2"), 100);
    LnnParams init = vee_params();
    TrainConfig config;
    config.optimizer = Optimizer::kSgd;
    config.lr = 1e-6;
    config.epochs = 1;
    TrainResult result = train(d, 1, config, &init);
    // One tiny step from the optimum moves nothing appreciably.
    CHECK(result.params.neurons[0].w1 ==
          doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(result.final_mse < 0.006);
}

TEST_CASE("network converts to an explicit model") {
    PwlModel model = to_pwl(vee_params());
    REQUIRE(model.order() == 2);
    CHECK(model.continuous());
    CHECK(model.breakpoints()[0] == doctest::Approx(-1.0));
    CHECK(model.breakpoints()[1] == doctest::Approx(0.0));
    CHECK(model.breakpoints()[2] == doctest::Approx(1.0));
    CHECK(model.segments()[0].b == doctest::Approx(-1.0));
    CHECK(model.segments()[1].b == doctest::Approx(1.0));
    CHECK(model.segments()[0].a == doctest::Approx(-1.0 / 6.0));
    CHECK(model.segments()[1].a == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("equal-slope units contribute no breakpoint") {
    LnnParams params;
    params.domain = Interval(-1.0, 1.0);
    params.neurons = {{0.7, 0.7, 0.3}, {-1.0, 1.0, 0.0}};
    params.bias = 0.0;
    PwlModel model = to_pwl(params);
    CHECK(model.order() == 2); // only the second unit bends the line

    LnnParams all_flat;
    all_flat.domain = Interval(-1.0, 1.0);
    all_flat.neurons = {{0.25, 0.25, 0.1}};
    all_flat.bias = 2.0;
    CHECK(to_pwl(all_flat).order() == 1);
}

TEST_CASE("network and converted model agree everywhere") {
    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 5; ++trial) {
        LnnParams params = random_params(gen, 1 + trial, Interval(-2.0, 3.0));
        PwlModel model = to_pwl(params);
        for (int i = 0; i < 200; ++i) {
            double x = uniform(gen, -2.0, 3.0);
            double g = forward(params, x);
            CHECK(std::fabs(g - eval_pwl(model, x)) <=
                  1e-9 * (1.0 + std::fabs(g)));
        }
    }
}

TEST_CASE("network files round-trip exactly") {
    std::mt19937_64 gen(123);
    LnnParams params = random_params(gen, 3, Interval(-5.0, 5.0));
    fs::path dir = fs::temp_directory_path() / "pwla_lnn_tests";
    fs::create_directories(dir);
    fs::path path = dir / "net.txt";
    save_lnn(params, path.string());
    LnnParams loaded = load_lnn(path.string());
    CHECK(params_equal(params, loaded));
    CHECK(loaded.domain.lo == params.domain.lo);
    CHECK(loaded.domain.hi == params.domain.hi);

    std::istringstream bad_header("pwl v1 0 1\n");
    CHECK_THROWS_WITH_AS(read_lnn(bad_header), doctest::Contains("v1"),
                         std::runtime_error);
    std::istringstream no_bias("lnn v1 0 1\n0.5 0.5 0.0\n");
    CHECK_THROWS_WITH_AS(read_lnn(no_bias), doctest::Contains("bias"),
                         std::runtime_error);
    std::istringstream no_units("lnn v1 0 1\nbias 0.0\n");
    CHECK_THROWS_AS(read_lnn(no_units), std::runtime_error);
    CHECK_THROWS_WITH_AS(load_lnn("/nonexistent/net.txt"),
                         doctest::Contains("/nonexistent/net.txt"),
                         std::runtime_error);
}
