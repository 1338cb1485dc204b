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

#include <pwla/core.hpp>

namespace pwla {

/// Load a two-column `x,y` CSV with a header line. Rows must be sorted by x
/// and equally spaced; violations throw std::runtime_error naming the row.
Dataset load_csv(const std::string &path);

} // namespace pwla
