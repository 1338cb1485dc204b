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
#include <pwla/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace pwla {

namespace {

// Fixed geometry: 800x600 canvas, plot area inside the margins, ten tick
// divisions per axis. Everything below is emitted with printf-style fixed
// formatting so identical inputs give byte-identical files.
constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 780.0, kTop = 40.0, kBottom = 550.0;
constexpr int kTicks = 10;

struct Range {
    double lo = 0.0, hi = 1.0;
    double map(double v, double out_lo, double out_hi) const {
        return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
    }
};

std::string fmt(const char *pattern, double a, double b = 0.0) {
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, pattern, a, b);
    return buffer;
}

std::string escape(const std::string &text) {
    std::string out;
    for (char c : text) {
        if (c == '&')
            out += "&amp;";
        else if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else
            out += c;
    }
    return out;
}

Range span_of(const std::vector<SvgSeries> &series, bool vertical) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const SvgSeries &s : series) {
        const std::vector<double> &vs = vertical ? s.ys : s.xs;
        for (double v : vs) {
            if (!std::isfinite(v))
                continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) { // nothing finite
        lo = 0.0;
        hi = 1.0;
    }
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    if (vertical) { // breathing room above and below the curves
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return {lo, hi};
}

} // namespace

void write_svg_plot(const std::string &title,
                    const std::vector<SvgSeries> &series, std::ostream &out) {
    Range x = span_of(series, false);
    Range y = span_of(series, true);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "font-family=\"monospace\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" "
           "fill=\"#ffffff\"/>\n";
    out << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(title) << "</text>\n";

    for (int t = 0; t <= kTicks; ++t) {
        double f = static_cast<double>(t) / kTicks;
        double px = kLeft + f * (kRight - kLeft);
        double py = kBottom - f * (kBottom - kTop);
        out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" ", px, kTop)
            << fmt("x2=\"%.2f\" y2=\"%.2f\" stroke=\"#dddddd\"/>\n", px,
                   kBottom);
        out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" ", kLeft, py)
            << fmt("x2=\"%.2f\" y2=\"%.2f\" stroke=\"#dddddd\"/>\n", kRight,
                   py);
        out << fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">", px,
                   kBottom + 18.0)
            << fmt("%.4g</text>\n", x.lo + f * (x.hi - x.lo));
        out << fmt("<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">",
                   kLeft - 6.0, py + 4.0)
            << fmt("%.4g</text>\n", y.lo + f * (y.hi - y.lo));
    }
    out << fmt("<rect x=\"%.2f\" y=\"%.2f\" ", kLeft, kTop)
        << fmt("width=\"%.2f\" height=\"%.2f\" ", kRight - kLeft,
               kBottom - kTop)
        << "fill=\"none\" stroke=\"#000000\"/>\n";

    for (const SvgSeries &s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" "
            << fmt("stroke-width=\"%.2f\" points=\"", s.stroke_width);
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i]))
                continue;
            out << fmt("%.2f,%.2f ", x.map(s.xs[i], kLeft, kRight),
                       y.map(s.ys[i], kBottom, kTop));
        }
        out << "\"/>\n";
        if (s.markers) {
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i]))
                    continue;
                out << fmt("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" ",
                           x.map(s.xs[i], kLeft, kRight),
                           y.map(s.ys[i], kBottom, kTop))
                    << "fill=\"" << s.color << "\"/>\n";
            }
        }
    }

    double legend_y = kTop + 16.0;
    for (const SvgSeries &s : series) {
        out << fmt("<line x1=\"%.2f\" y1=\"%.2f\" ", kRight - 150.0,
                   legend_y - 4.0)
            << fmt("x2=\"%.2f\" y2=\"%.2f\" ", kRight - 120.0, legend_y - 4.0)
            << "stroke=\"" << s.color << "\" stroke-width=\"3\"/>\n";
        out << fmt("<text x=\"%.2f\" y=\"%.2f\">", kRight - 112.0, legend_y)
            << escape(s.label) << "</text>\n";
        legend_y += 18.0;
    }
    out << "</svg>\n";
}

void write_svg(const PwlModel &model, const Dataset &data,
               const std::string &title, std::ostream &out) {
    SvgSeries samples;
    samples.label = "data";
    samples.xs = data.xs();
    samples.ys = data.ys();
    samples.color = "#888888";
    samples.stroke_width = 1.0;

    // One vertex per segment end so discontinuities show as vertical jumps.
    SvgSeries fit;
    fit.label = "fit";
    fit.color = "#d62728";
    fit.stroke_width = 2.5;
    fit.markers = true;
    for (const Segment &s : model.segments()) {
        fit.xs.push_back(s.lo);
        fit.ys.push_back(s.eval(s.lo));
        fit.xs.push_back(s.hi);
        fit.ys.push_back(s.eval(s.hi));
    }
    write_svg_plot(title, {samples, fit}, out);
}

void save_svg(const PwlModel &model, const Dataset &data,
              const std::string &title, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_svg(model, data, title, out);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

} // namespace pwla
