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
#include <vector>

#include <pwla/core.hpp>

namespace pwla {

/// One labelled polyline of an SVG plot.
struct SvgSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::string color = "#1f77b4";
    double stroke_width = 1.5;
    bool markers = false;
};

/// Hand-emitted line plot: fixed 800x600 view box, ten tick divisions per
/// axis, a legend, and no timestamps or generated ids — identical inputs
/// produce byte-identical output, so golden-file tests apply.
void write_svg_plot(const std::string &title,
                    const std::vector<SvgSeries> &series, std::ostream &out);

/// Target samples (thin line) with the fitted model overlaid (thick line,
/// breakpoints marked).
void write_svg(const PwlModel &model, const Dataset &data,
               const std::string &title, std::ostream &out);

void save_svg(const PwlModel &model, const Dataset &data,
              const std::string &title, const std::string &path);

} // namespace pwla
