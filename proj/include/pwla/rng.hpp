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
#include <random>

namespace pwla {

/// Deterministic uniform double in [0, 1) drawn from a mt19937_64 stream.
///
/// std::uniform_real_distribution is not bit-reproducible across standard
/// library implementations, so every stochastic component in this project
/// (initialisation, shuffling, differential evolution) derives its draws
/// from this fixed mapping of the top 53 bits of the generator output.
inline double uniform01(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform(std::mt19937_64 &gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

/// Uniform integer in [0, n). Uses rejection-free modulo reduction, which is
/// adequate here because n is tiny relative to 2^64.
inline std::size_t uniform_index(std::mt19937_64 &gen, std::size_t n) {
    return static_cast<std::size_t>(gen() % n);
}

/// Fisher-Yates shuffle driven by uniform_index, so shuffles are
/// reproducible across platforms (std::shuffle is not).
template <typename T>
void shuffle(std::vector<T> &values, std::mt19937_64 &gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = uniform_index(gen, i);
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace pwla
