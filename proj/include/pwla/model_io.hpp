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

#include <iosfwd>
#include <string>

#include <pwla/core.hpp>

namespace pwla {

/// Plain-text piecewise model round trip. Format:
///     pwl v1 <order> <continuous:0|1>
///     <mu_0> <mu_1> ... <mu_order>
///     <a_i> <b_i>              (one line per segment)
/// with every value printed to 17 significant digits so save/load is exact.
void write_pwl(const PwlModel &model, std::ostream &out);
PwlModel read_pwl(std::istream &in);
void save_pwl(const PwlModel &model, const std::string &path);
PwlModel load_pwl(const std::string &path);

/// Loads either model file format by sniffing the first token: `pwl` files
/// load directly, `lnn` files are converted with to_pwl. Throws
/// std::runtime_error for anything else.
PwlModel load_model_as_pwl(const std::string &path);

} // namespace pwla
