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

#ifndef QNET_CLI_SCENARIO_HPP
#define QNET_CLI_SCENARIO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnet/catalog.hpp"
#include "qnet/energy.hpp"
#include "qnet/protocols.hpp"

namespace qnet::cli {

struct SweepSpec {
    std::string parameter = "distance_km";
    double from = 0;
    double to = 0;
    int steps = 2;
    bool log_scale = false;

    std::vector<double> values() const;
};

struct OutputSpec {
    std::string format = "csv";
    std::optional<std::string> svg;
};

struct Scenario {
    ProtocolSpec protocol;
    std::optional<SweepSpec> sweep;
    double target_bits = 1e9;
    ValueMode value_mode = ValueMode::datasheet;
    OutputSpec output;
};

/// Errors carry the 1-based line of the offending key when known.
Scenario parse_scenario(std::string_view toml_text, const std::string &source_name = "<string>");
Scenario load_scenario(const std::string &path);

struct SweepRow {
    double x = 0;
    EnergyReport report;
    bool feasible = true;
};

struct SweepTable {
    std::string parameter;
    std::vector<SweepRow> rows;

    bool all_infeasible() const;
};

/// Evaluates every sweep point in order. Infeasible points become rows with feasible = false.
SweepTable run_scenario(const Scenario &sc, const Catalog &cat);

}  // namespace qnet::cli

#endif
