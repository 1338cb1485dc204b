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
#include <pwla/model_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <pwla/lnn.hpp>

namespace pwla {

void write_pwl(const PwlModel &model, std::ostream &out) {
    char line[128];
    out << "pwl v1 " << model.order() << " " << (model.continuous() ? 1 : 0)
        << "\n";
    for (std::size_t i = 0; i < model.breakpoints().size(); ++i) {
        std::snprintf(line, sizeof line, i ? " %.17g" : "%.17g",
                      model.breakpoints()[i]);
        out << line;
    }
    out << "\n";
    for (const Segment &s : model.segments()) {
        std::snprintf(line, sizeof line, "%.17g %.17g\n", s.a, s.b);
        out << line;
    }
}

PwlModel read_pwl(std::istream &in) {
    std::string tag, version;
    int order = 0, continuous = 0;
    if (!(in >> tag >> version >> order >> continuous) || tag != "pwl" ||
        version != "v1")
        throw std::runtime_error("not a v1 piecewise model file");
    if (order < 1 || (continuous != 0 && continuous != 1))
        throw std::runtime_error("malformed piecewise model header");
    std::vector<double> breakpoints(static_cast<std::size_t>(order) + 1);
    for (double &mu : breakpoints)
        if (!(in >> mu))
            throw std::runtime_error("malformed breakpoint line");
    std::vector<Segment> segments(static_cast<std::size_t>(order));
    for (Segment &s : segments)
        if (!(in >> s.a >> s.b))
            throw std::runtime_error("malformed segment line");
    try {
        return {std::move(breakpoints), std::move(segments), continuous == 1};
    } catch (const std::invalid_argument &err) {
        throw std::runtime_error(err.what());
    }
}

void save_pwl(const PwlModel &model, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_pwl(model, out);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

PwlModel load_pwl(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    try {
        return read_pwl(in);
    } catch (const std::runtime_error &err) {
        throw std::runtime_error(path + ": " + err.what());
    }
}

PwlModel load_model_as_pwl(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(path + ": cannot open file");
    std::string tag;
    in >> tag;
    in.seekg(0);
    try {
        if (tag == "pwl")
            return read_pwl(in);
        if (tag == "lnn")
            return to_pwl(read_lnn(in));
    } catch (const std::runtime_error &err) {
        throw std::runtime_error(path + ": " + err.what());
    }
    throw std::runtime_error(path + ": unrecognized model format (expected a "
                                    "'pwl' or 'lnn' header)");
}

} // namespace pwla
