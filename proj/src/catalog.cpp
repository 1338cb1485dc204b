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
#include <pwla/catalog.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwla {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc_pi(double x) {
    // sin(pi x) / (pi x) with the removable singularity filled in; the
    // series guard keeps full precision near zero.
    double t = kPi * x;
    if (std::abs(t) < 1e-8)
        return 1.0 - t * t / 6.0;
    return std::sin(t) / t;
}

const std::array<TargetFunction, 7> &registry() {
    static const std::array<TargetFunction, 7> entries = {{
        {"x2", [](double x) { return x * x; }, {-1.0, 1.0}},
        {"x3", [](double x) { return x * x * x; }, {-1.0, 1.0}},
        {"mix1",
         [](double x) {
             return 5.0 * x * std::sin(5.0 * x) +
                    std::cos(5.0 * x) * std::sin(10.0 * x) + std::exp(-x);
         },
         {-1.0, 1.0}},
        {"table2_1", sinc_pi, {-4.0, 4.0}},
        {"table2_2",
         [](double x) {
             return std::sin(x) + x * std::sin(x) * std::cos(x);
         },
         {-10.0, 10.0}},
        {"table2_3",
         [](double x) {
             return 20.0 - 5.0 * std::exp(-0.3 * x) -
                    3.0 * std::exp(std::cos(kPi * x));
         },
         {-6.0, 6.0}},
        {"sec54",
         [](double x) {
             return std::exp(-std::abs(x)) +
                    std::exp(0.5 * std::cos(3.0 * x));
         },
         {-5.0, 5.0}},
    }};
    return entries;
}

} // namespace

const TargetFunction &catalog(std::string_view name) {
    for (const TargetFunction &f : registry())
        if (f.name == name)
            return f;
    throw std::invalid_argument("unknown target function '" +
                                std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    names.reserve(registry().size());
    for (const TargetFunction &f : registry())
        names.push_back(f.name);
    return names;
}

} // namespace pwla
