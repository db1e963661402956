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

#include "qnet/cli/table.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "qnet/error.hpp"

namespace qnet::cli {

std::string format_number(double x) {
    if (x == 0) {
        return "0";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    double a = std::fabs(x);
    if (a >= 1e6 || a < 1e-3) {
        std::snprintf(buf, sizeof(buf), "%.9e", x);
    } else {
        std::snprintf(buf, sizeof(buf), "%.10g", x);
    }
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &fields) {
    if (fields.size() != width_) {
        throw ValidationError("CSV row has " + std::to_string(fields.size()) + " fields, expected " + std::to_string(width_));
    }
    for (size_t i = 0; i < fields.size(); i++) {
        if (i) {
            out_ += ',';
        }
        out_ += fields[i];
    }
    out_ += '\n';
}

std::vector<std::string> sweep_header(const std::string &parameter) {
    return {parameter, "raw_per_use", "secret_per_use", "secret_bps", "startup_J", "power_W", "runtime_s",
            "running_J", "dsp_J", "total_J", "ee_bits_per_J", "status"};
}

std::string sweep_to_csv(const SweepTable &t) {
    CsvWriter w(sweep_header(t.parameter));
    for (const auto &r : t.rows) {
        const EnergyReport &e = r.report;
        bool ok = r.feasible;
        w.row({
            format_number(r.x),
            format_number(e.rate.raw_per_use),
            format_number(e.rate.secret_per_use),
            format_number(e.rate.secret_bps),
            format_number(e.startup_J),
            format_number(e.power_W),
            ok ? format_number(e.runtime_s) : "inf",
            ok ? format_number(e.running_J) : "inf",
            ok ? format_number(e.dsp_J) : "inf",
            ok ? format_number(e.total_J) : "inf",
            format_number(e.ee_bits_per_J),
            ok ? "ok" : "infeasible",
        });
    }
    return w.str();
}

std::string sweep_to_json(const SweepTable &t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &r : t.rows) {
        const EnergyReport &e = r.report;
        nlohmann::ordered_json j;
        j[t.parameter] = r.x;
        j["raw_per_use"] = e.rate.raw_per_use;
        j["secret_per_use"] = e.rate.secret_per_use;
        j["secret_bps"] = e.rate.secret_bps;
        j["startup_J"] = e.startup_J;
        j["power_W"] = e.power_W;
        for (auto [key, v] : {std::pair{"runtime_s", e.runtime_s}, std::pair{"running_J", e.running_J},
                              std::pair{"dsp_J", e.dsp_J}, std::pair{"total_J", e.total_J}}) {
            if (r.feasible) {
                j[key] = v;
            } else {
                j[key] = nullptr;
            }
        }
        j["ee_bits_per_J"] = e.ee_bits_per_J;
        j["status"] = r.feasible ? "ok" : "infeasible";
        arr.push_back(std::move(j));
    }
    nlohmann::ordered_json root;
    root["parameter"] = t.parameter;
    root["rows"] = std::move(arr);
    return root.dump(2) + "\n";
}

}  // namespace qnet::cli
