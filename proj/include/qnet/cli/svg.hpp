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

#ifndef QNET_CLI_SVG_HPP
#define QNET_CLI_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace qnet::cli {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct AxesSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool x_log = false;
    bool y_log = false;
};

struct SvgDocument {
    std::string text;
    int dropped_points = 0;
};

/// Line chart with one polyline per series and a legend. Points that are not finite, or
/// not positive on a log axis, are dropped and counted in the document metadata.
/// Throws ValidationError when fewer than two points remain.
SvgDocument emit_svg(const std::vector<Series> &series, const AxesSpec &axes);

struct Bar {
    std::string label;
    double value = 0;
};

/// Horizontal bar chart.
std::string emit_bar_svg(const std::vector<Bar> &bars, const std::string &title, const std::string &value_label);

}  // namespace qnet::cli

#endif
