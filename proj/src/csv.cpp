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
#include <pwla/csv.hpp>

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwla {

namespace {

double parse_number(std::string_view field, const std::string &path,
                    std::size_t row) {
    // Trim surrounding whitespace; std::from_chars accepts none.
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' ||
                              field.back() == '\r'))
        field.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                     value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(path + ": row " + std::to_string(row) +
                                 ": cannot parse '" + std::string(field) +
                                 "' as a number");
    return value;
}

} // namespace

Dataset load_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file, expected a header row");
    // The first line is a header by contract ("x,y" or similar); it is
    // required, never parsed as data.
    std::vector<double> xs, ys;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r")
            continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ": row " + std::to_string(row) +
                                     ": expected two comma-separated fields");
        std::string_view whole(line);
        xs.push_back(parse_number(whole.substr(0, comma), path, row));
        ys.push_back(parse_number(whole.substr(comma + 1), path, row));
    }
    try {
        return {std::move(xs), std::move(ys)};
    } catch (const std::invalid_argument &err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

} // namespace pwla
