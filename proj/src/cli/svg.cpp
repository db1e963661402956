// Copyright 2026 The qnet-energy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnet/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qnet/error.hpp"

namespace qnet::cli {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 90;
constexpr double kRight = 190;
constexpr double kTop = 50;
constexpr double kBottom = 60;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string fmt(double x, const char *f = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, x);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double unit(double v) const {
        if (log) {
            return (std::log10(v) - lo) / (hi - lo);
        }
        return (v - lo) / (hi - lo);
    }

    std::vector<double> ticks() const {
        std::vector<double> t;
        if (log) {
            int a = static_cast<int>(std::ceil(lo - 1e-12));
            int b = static_cast<int>(std::floor(hi + 1e-12));
            int stride = std::max(1, (b - a) / 8 + 1);
            for (int e = a; e <= b; e += stride) {
                t.push_back(std::pow(10.0, e));
            }
            return t;
        }
        double span = hi - lo;
        double raw = span / 6;
        double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        }
        for (double v = std::ceil(lo / step - 1e-9) * step; v <= hi + step * 1e-9; v += step) {
            t.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
        }
        return t;
    }
};

Axis make_axis(double lo, double hi, bool log) {
    if (log) {
        double a = std::log10(lo);
        double b = std::log10(hi);
        if (b - a < 1e-12) {
            a -= 0.5;
            b += 0.5;
        }
        return {std::floor(a), std::ceil(b), true};
    }
    if (hi - lo < 1e-300) {
        double pad = lo == 0 ? 1 : std::fabs(lo) * 0.1;
        return {lo - pad, hi + pad, false};
    }
    return {lo, hi, false};
}

}  // namespace

SvgDocument emit_svg(const std::vector<Series> &series, const AxesSpec &axes) {
    SvgDocument doc;
    std::vector<Series> kept;
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    size_t total = 0;
    for (const auto &s : series) {
        Series k{s.name, {}};
        for (auto [x, y] : s.points) {
            bool ok = std::isfinite(x) && std::isfinite(y) && (!axes.x_log || x > 0) && (!axes.y_log || y > 0);
            if (!ok) {
                doc.dropped_points++;
                continue;
            }
            k.points.emplace_back(x, y);
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
        total += k.points.size();
        kept.push_back(std::move(k));
    }
    if (total < 2) {
        throw ValidationError("SVG needs at least two plottable points");
    }
    Axis ax = make_axis(xlo, xhi, axes.x_log);
    Axis ay = make_axis(ylo, yhi, axes.y_log);
    double pw = kWidth - kLeft - kRight;
    double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + ax.unit(x) * pw; };
    auto py = [&](double y) { return kTop + (1 - ay.unit(y)) * ph; };

    std::string &o = doc.text;
    o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%.0f") + "\" height=\"" +
         fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " + fmt(kWidth, "%.0f") + " " + fmt(kHeight, "%.0f") + "\">\n";
    o += "<metadata>dropped_points=" + std::to_string(doc.dropped_points) + "</metadata>\n";
    o += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + escape(axes.title) + "</text>\n";
    o += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

    o += "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"0.5\">\n";
    for (double t : ax.ticks()) {
        double x = px(t);
        o += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kTop + ph) +
             "\" stroke=\"#dddddd\"/>\n";
        o += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + ph + 16) + "\" text-anchor=\"middle\">" + tick_label(t) +
             "</text>\n";
    }
    for (double t : ay.ticks()) {
        double y = py(t);
        o += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(kLeft + pw) + "\" y2=\"" + fmt(y) +
             "\" stroke=\"#dddddd\"/>\n";
        o += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
             "</text>\n";
    }
    o += "</g>\n";
    o += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(axes.x_label) + "</text>\n";
    o += "<text x=\"20\" y=\"" + fmt(kTop + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 20 " + fmt(kTop + ph / 2) + ")\">" + escape(axes.y_label) +
         "</text>\n";

    for (size_t i = 0; i < kept.size(); i++) {
        const auto &s = kept[i];
        const char *color = kPalette[i % std::size(kPalette)];
        o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.8\" points=\"";
        for (size_t j = 0; j < s.points.size(); j++) {
            if (j) {
                o += ' ';
            }
            o += fmt(px(s.points[j].first)) + "," + fmt(py(s.points[j].second));
        }
        o += "\"/>\n";
        double ly = kTop + 14 + 20 * static_cast<double>(i);
        double lx = kLeft + pw + 12;
        o += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly) + "\" x2=\"" + fmt(lx + 24) + "\" y2=\"" + fmt(ly) +
             "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        o += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(s.name) + "</text>\n";
    }
    o += "</svg>\n";
    return doc;
}

std::string emit_bar_svg(const std::vector<Bar> &bars, const std::string &title, const std::string &value_label) {
    if (bars.empty()) {
        throw ValidationError("bar chart needs at least one bar");
    }
    double vmax = 0;
    for (const auto &b : bars) {
        if (!std::isfinite(b.value) || b.value < 0) {
            throw ValidationError("bar values must be finite and non-negative");
        }
        vmax = std::max(vmax, b.value);
    }
    if (vmax == 0) {
        vmax = 1;
    }
    double left = 200, right = 120, top = 50, row = 26;
    double width = 800;
    double height = top + row * static_cast<double>(bars.size()) + 50;
    double pw = width - left - right;
    std::string o;
    o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width, "%.0f") + "\" height=\"" +
         fmt(height, "%.0f") + "\" viewBox=\"0 0 " + fmt(width, "%.0f") + " " + fmt(height, "%.0f") + "\">\n";
    o += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + fmt(width / 2) + "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + escape(title) + "</text>\n";
    o += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (size_t i = 0; i < bars.size(); i++) {
        double y = top + row * static_cast<double>(i);
        double w = bars[i].value / vmax * pw;
        o += "<text x=\"" + fmt(left - 8) + "\" y=\"" + fmt(y + row * 0.65) + "\" text-anchor=\"end\">" +
             escape(bars[i].label) + "</text>\n";
        o += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(y + 3) + "\" width=\"" + fmt(w) + "\" height=\"" +
             fmt(row - 6) + "\" fill=\"" + kPalette[0] + "\"/>\n";
        o += "<text x=\"" + fmt(left + w + 6) + "\" y=\"" + fmt(y + row * 0.65) + "\">" + tick_label(bars[i].value) +
             "</text>\n";
    }
    o += "</g>\n";
    o += "<text x=\"" + fmt(left + pw / 2) + "\" y=\"" + fmt(height - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(value_label) + "</text>\n";
    o += "</svg>\n";
    return o;
}

}  // namespace qnet::cli
