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

#include <string>
#include <string_view>
#include <vector>

#include <pwla/core.hpp>

namespace pwla {

/// Built-in target functions, addressable by name:
///   x2        x^2 on [-1,1]
///   x3        x^3 on [-1,1]
///   mix1      5x sin(5x) + cos(5x) sin(10x) + exp(-x) on [-1,1]
///   table2_1  sin(pi x)/(pi x) on [-4,4] (value 1 at x=0)
///   table2_2  sin(x) + x sin(x) cos(x) on [-10,10]
///   table2_3  20 - 5 exp(-0.3x) - 3 exp(cos(pi x)) on [-6,6]
///   sec54     exp(-|x|) + exp(0.5 cos(3x)) on [-5,5]
/// Throws std::invalid_argument for unknown names.
const TargetFunction &catalog(std::string_view name);

/// All registry names, in registry order.
std::vector<std::string> catalog_names();

} // namespace pwla
